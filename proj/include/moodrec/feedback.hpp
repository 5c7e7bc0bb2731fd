#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "moodrec/errors.hpp"

namespace moodrec {

inline constexpr int kMinRating = 1;
inline constexpr int kMaxRating = 5;

struct FeedbackRecord {
    std::string user;  // non-empty
    std::string playlist_fingerprint;
    int rating = 0;  // 1..5
    std::string comment;
    std::string recorded_at;  // ISO-8601 UTC
};

struct FeedbackSummary {
    std::size_t count = 0;
    std::optional<double> mean;      // absent when count is 0
    std::array<std::size_t, 5> histogram{};  // index 0 holds rating 1

    std::size_t rating_count(int rating) const {
        return histogram[static_cast<std::size_t>(rating - kMinRating)];
    }
};

/// Append-only JSON-lines store, one record per line. Summaries read a
/// fresh snapshot of the file on every call.
class FeedbackStore {
public:
    explicit FeedbackStore(std::filesystem::path path);

    /// Validates and appends. Throws InvalidRatingError or StoreIOError.
    void append(const FeedbackRecord& record);

    /// Throws StoreIOError on unreadable or corrupt lines. A missing file
    /// reads as an empty store.
    std::vector<FeedbackRecord> read_all() const;

    FeedbackSummary summarize() const;

    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

FeedbackSummary summarize_ratings(const std::vector<FeedbackRecord>& records);

/// "rating,count" CSV over ratings 1..5; bit-stable for equal summaries.
std::string histogram_csv(const FeedbackSummary& summary);

void emit_histogram(const FeedbackSummary& summary,
                    const std::filesystem::path& path);

std::string summary_to_json(const FeedbackSummary& summary);

std::string now_iso8601_utc();

}  // namespace moodrec
