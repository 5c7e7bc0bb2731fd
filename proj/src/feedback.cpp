#include "moodrec/feedback.hpp"

#include <ctime>
#include <fstream>
#include <utility>

#include <json.hpp>

namespace moodrec {

namespace {

void validate_record(const FeedbackRecord& record) {
    if (record.rating < kMinRating || record.rating > kMaxRating)
        throw InvalidRatingError(record.rating);
    if (record.user.empty()) throw Error("feedback user must be non-empty");
}

std::string record_to_line(const FeedbackRecord& record) {
    nlohmann::ordered_json doc;
    doc["user"] = record.user;
    doc["playlist_fingerprint"] = record.playlist_fingerprint;
    doc["rating"] = record.rating;
    doc["comment"] = record.comment;
    doc["recorded_at"] = record.recorded_at;
    return doc.dump();
}

FeedbackRecord record_from_line(const std::string& line, std::size_t lineno) {
    try {
        const nlohmann::json doc = nlohmann::json::parse(line);
        FeedbackRecord record;
        record.user = doc.at("user").get<std::string>();
        record.playlist_fingerprint =
            doc.value("playlist_fingerprint", std::string{});
        record.rating = doc.at("rating").get<int>();
        record.comment = doc.value("comment", std::string{});
        record.recorded_at = doc.value("recorded_at", std::string{});
        if (record.rating < kMinRating || record.rating > kMaxRating)
            throw StoreIOError("feedback line " + std::to_string(lineno) +
                               ": rating outside the 1-5 scale");
        return record;
    } catch (const nlohmann::json::exception& e) {
        throw StoreIOError("feedback line " + std::to_string(lineno) +
                           ": " + e.what());
    }
}

}  // namespace

FeedbackStore::FeedbackStore(std::filesystem::path path)
    : path_(std::move(path)) {}

void FeedbackStore::append(const FeedbackRecord& record) {
    validate_record(record);
    std::ofstream out(path_, std::ios::app);
    if (!out) throw StoreIOError("cannot open feedback store: " + path_.string());
    out << record_to_line(record) << '\n';
    out.flush();
    if (!out) throw StoreIOError("append failed: " + path_.string());
}

std::vector<FeedbackRecord> FeedbackStore::read_all() const {
    std::vector<FeedbackRecord> records;
    if (!std::filesystem::exists(path_)) return records;

    std::ifstream in(path_);
    if (!in) throw StoreIOError("cannot read feedback store: " + path_.string());
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        records.push_back(record_from_line(line, lineno));
    }
    return records;
}

FeedbackSummary FeedbackStore::summarize() const {
    return summarize_ratings(read_all());
}

FeedbackSummary summarize_ratings(const std::vector<FeedbackRecord>& records) {
    FeedbackSummary summary;
    summary.count = records.size();
    std::size_t total = 0;
    for (const FeedbackRecord& record : records) {
        summary.histogram[static_cast<std::size_t>(record.rating - kMinRating)]++;
        total += static_cast<std::size_t>(record.rating);
    }
    if (summary.count > 0)
        summary.mean = static_cast<double>(total) /
                       static_cast<double>(summary.count);
    return summary;
}

std::string histogram_csv(const FeedbackSummary& summary) {
    std::string out = "rating,count\n";
    for (int rating = kMinRating; rating <= kMaxRating; ++rating) {
        out += std::to_string(rating);
        out += ',';
        out += std::to_string(summary.rating_count(rating));
        out += '\n';
    }
    return out;
}

void emit_histogram(const FeedbackSummary& summary,
                    const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw StoreIOError("cannot open for writing: " + path.string());
    out << histogram_csv(summary);
    if (!out) throw StoreIOError("write failed: " + path.string());
}

std::string summary_to_json(const FeedbackSummary& summary) {
    nlohmann::ordered_json doc;
    doc["count"] = summary.count;
    if (summary.mean)
        doc["mean"] = *summary.mean;
    else
        doc["mean"] = nullptr;
    nlohmann::ordered_json hist;
    for (int rating = kMinRating; rating <= kMaxRating; ++rating)
        hist[std::to_string(rating)] = summary.rating_count(rating);
    doc["histogram"] = std::move(hist);
    return doc.dump();
}

std::string now_iso8601_utc() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace moodrec
