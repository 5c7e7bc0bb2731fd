#include "moodrec/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <unordered_set>
#include <utility>

#include <json.hpp>

#include "moodrec/csv.hpp"

namespace moodrec {

namespace {

double parse_double_field(const std::string& field, const std::string& value) {
    const std::string v = csv::trim(value);
    if (v.empty()) throw TypeError(field);
    double out = 0.0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size())
        throw TypeError(field);
    return out;
}

int parse_int_field(const std::string& field, const std::string& value) {
    const std::string v = csv::trim(value);
    if (v.empty()) throw TypeError(field);
    int out = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size())
        throw TypeError(field);
    return out;
}

const std::string& require_field(const std::map<std::string, std::string>& raw,
                                 const char* name) {
    const auto it = raw.find(name);
    if (it == raw.end()) throw MissingFieldError(name);
    return it->second;
}

double unit_interval(const std::string& field, const std::string& value) {
    const double v = parse_double_field(field, value);
    if (v < 0.0 || v > 1.0) throw RangeError(field, csv::trim(value));
    return v;
}

}  // namespace

Catalog::Catalog(std::vector<Track> tracks) : tracks_(std::move(tracks)) {
    index_.reserve(tracks_.size());
    for (std::size_t i = 0; i < tracks_.size(); ++i) {
        const auto [it, inserted] = index_.emplace(tracks_[i].id, i);
        if (!inserted) throw DuplicateIdError(tracks_[i].id.value);
    }
}

const Track* Catalog::find(const TrackId& id) const {
    const auto it = index_.find(id);
    return it == index_.end() ? nullptr : &tracks_[it->second];
}

const Track& Catalog::at(const TrackId& id) const {
    const Track* t = find(id);
    if (!t) throw UnknownIdError(id.value);
    return *t;
}

CatalogFormat format_from_extension(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (ext == ".csv") return CatalogFormat::Csv;
    if (ext == ".json") return CatalogFormat::Json;
    throw SchemaError("cannot infer catalog format from extension: " +
                      path.string());
}

std::string normalize_artist_field(std::string_view raw) {
    const std::string trimmed = csv::trim(raw);
    if (trimmed.size() < 2 || trimmed.front() != '[' || trimmed.back() != ']')
        return trimmed;

    const std::string inner = trimmed.substr(1, trimmed.size() - 2);
    std::vector<std::string> artists;
    std::string current;
    for (const char c : inner) {
        if (c == ',') {
            artists.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    artists.push_back(current);

    std::string out;
    for (auto& artist : artists) {
        std::string name = csv::trim(artist);
        while (!name.empty() && (name.front() == '\'' || name.front() == '"'))
            name.erase(name.begin());
        while (!name.empty() && (name.back() == '\'' || name.back() == '"'))
            name.pop_back();
        name = csv::trim(name);
        if (name.empty()) continue;
        if (!out.empty()) out += ", ";
        out += name;
    }
    return out;
}

Track validate_row(const std::map<std::string, std::string>& raw) {
    for (const auto field : kCatalogFields) require_field(raw, field.data());

    Track t;
    t.id.value = csv::trim(raw.at("id"));
    if (t.id.value.empty()) throw RangeError("id", "");

    t.title = csv::trim(raw.at("title"));
    if (t.title.empty()) throw RangeError("title", "");

    t.artist = normalize_artist_field(raw.at("artist"));
    if (t.artist.empty()) throw RangeError("artist", "");

    t.year = parse_int_field("year", raw.at("year"));
    if (t.year <= 0) throw RangeError("year", csv::trim(raw.at("year")));

    t.valence = unit_interval("valence", raw.at("valence"));
    t.energy = unit_interval("energy", raw.at("energy"));

    t.tempo = parse_double_field("tempo", raw.at("tempo"));
    if (t.tempo <= 0.0) throw RangeError("tempo", csv::trim(raw.at("tempo")));

    t.danceability = unit_interval("danceability", raw.at("danceability"));
    t.liveness = unit_interval("liveness", raw.at("liveness"));

    t.loudness = parse_double_field("loudness", raw.at("loudness"));
    if (t.loudness < -60.0 || t.loudness > 5.0)
        throw RangeError("loudness", csv::trim(raw.at("loudness")));

    t.popularity = parse_int_field("popularity", raw.at("popularity"));
    if (t.popularity < 0 || t.popularity > 100)
        throw RangeError("popularity", csv::trim(raw.at("popularity")));

    return t;
}

namespace {

/// Shared row-accumulation loop for both formats. `next_row` yields raw field
/// maps until it returns false.
LoadReport accumulate_rows(
    const std::function<bool(std::map<std::string, std::string>&)>& next_row,
    const LoadOptions& options) {
    std::vector<Track> tracks;
    std::unordered_set<TrackId> seen;
    std::size_t rejected = 0;
    std::size_t row = 0;

    std::map<std::string, std::string> raw;
    while (next_row(raw)) {
        ++row;
        try {
            Track t = validate_row(raw);
            if (seen.contains(t.id)) throw DuplicateIdError(t.id.value);
            seen.insert(t.id);
            tracks.push_back(std::move(t));
        } catch (const DuplicateIdError&) {
            if (!options.lenient) throw;
            ++rejected;
        } catch (const Error& e) {
            if (!options.lenient) throw ParseError(row, e.what());
            ++rejected;
        }
        raw.clear();
    }
    return LoadReport{Catalog(std::move(tracks)), rejected};
}

LoadReport load_csv(const std::filesystem::path& path, const LoadOptions& options) {
    std::ifstream in(path);
    if (!in) throw FileNotFoundError(path.string());

    std::string header_line;
    if (!std::getline(in, header_line))
        throw SchemaError("empty catalog file: " + path.string());
    header_line = csv::strip_bom(header_line);

    const std::vector<std::string> header = csv::parse_line(header_line);
    for (const auto field : kCatalogFields) {
        if (std::find(header.begin(), header.end(), field) == header.end())
            throw SchemaError("missing column '" + std::string(field) + "' in " +
                              path.string());
    }

    std::string line;
    auto next_row = [&](std::map<std::string, std::string>& raw) {
        while (std::getline(in, line)) {
            if (csv::trim(line).empty()) continue;
            const std::vector<std::string> fields = csv::parse_line(line);
            for (std::size_t i = 0; i < header.size() && i < fields.size(); ++i)
                raw[header[i]] = fields[i];
            return true;
        }
        return false;
    };
    return accumulate_rows(next_row, options);
}

LoadReport load_json(const std::filesystem::path& path, const LoadOptions& options) {
    std::ifstream in(path);
    if (!in) throw FileNotFoundError(path.string());

    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError("invalid JSON in " + path.string() + ": " + e.what());
    }
    if (!doc.is_array())
        throw SchemaError("catalog JSON must be an array of objects");

    std::size_t next = 0;
    auto next_row = [&](std::map<std::string, std::string>& raw) {
        if (next >= doc.size()) return false;
        const auto& obj = doc[next++];
        if (obj.is_object()) {
            for (const auto& [key, value] : obj.items())
                raw[key] = value.is_string() ? value.get<std::string>()
                                             : value.dump();
        }
        return true;
    };
    return accumulate_rows(next_row, options);
}

}  // namespace

LoadReport load_catalog(const std::filesystem::path& path, CatalogFormat format,
                        const LoadOptions& options) {
    if (!std::filesystem::exists(path)) throw FileNotFoundError(path.string());
    return format == CatalogFormat::Csv ? load_csv(path, options)
                                        : load_json(path, options);
}

void write_catalog_csv(const Catalog& catalog, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw StoreIOError("cannot open for writing: " + path.string());

    std::string header;
    for (std::size_t i = 0; i < kCatalogFields.size(); ++i) {
        if (i > 0) header += ',';
        header += kCatalogFields[i];
    }
    out << header << '\n';

    for (const Track& t : catalog.tracks()) {
        out << csv::format_row({t.id.value, t.title, t.artist,
                                std::to_string(t.year),
                                csv::format_double(t.valence),
                                csv::format_double(t.energy),
                                csv::format_double(t.tempo),
                                csv::format_double(t.danceability),
                                csv::format_double(t.liveness),
                                csv::format_double(t.loudness),
                                std::to_string(t.popularity)})
            << '\n';
    }
    if (!out) throw StoreIOError("write failed: " + path.string());
}

std::string dedupe_key_part(std::string_view text) {
    std::string out = csv::trim(text);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return out;
}

Catalog dedupe(const Catalog& catalog) {
    const auto& tracks = catalog.tracks();

    // key -> index of the current survivor
    std::unordered_map<std::string, std::size_t> best;
    best.reserve(tracks.size());
    for (std::size_t i = 0; i < tracks.size(); ++i) {
        const std::string key =
            dedupe_key_part(tracks[i].artist) + '\x1f' + dedupe_key_part(tracks[i].title);
        const auto [it, inserted] = best.emplace(key, i);
        if (inserted) continue;
        const Track& incumbent = tracks[it->second];
        const Track& challenger = tracks[i];
        if (challenger.popularity > incumbent.popularity ||
            (challenger.popularity == incumbent.popularity &&
             challenger.id < incumbent.id)) {
            it->second = i;
        }
    }

    std::vector<std::size_t> keep;
    keep.reserve(best.size());
    for (const auto& [key, idx] : best) keep.push_back(idx);
    std::sort(keep.begin(), keep.end());

    std::vector<Track> survivors;
    survivors.reserve(keep.size());
    for (const std::size_t idx : keep) survivors.push_back(tracks[idx]);
    return Catalog(std::move(survivors));
}

}  // namespace moodrec
