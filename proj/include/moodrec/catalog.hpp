#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "moodrec/errors.hpp"

namespace moodrec {

/// Opaque track identifier, e.g. a Spotify track id. Non-empty, unique
/// within a catalog.
struct TrackId {
    std::string value;

    auto operator<=>(const TrackId&) const = default;
};

}  // namespace moodrec

template <>
struct std::hash<moodrec::TrackId> {
    std::size_t operator()(const moodrec::TrackId& id) const noexcept {
        return std::hash<std::string>{}(id.value);
    }
};

namespace moodrec {

/// One catalog row: identity, metadata, six raw audio features, popularity.
struct Track {
    TrackId id;
    std::string title;
    std::string artist;
    int year = 0;               // release year, any positive year
    double valence = 0.0;       // [0, 1]
    double energy = 0.0;        // [0, 1]
    double tempo = 0.0;         // BPM, > 0
    double danceability = 0.0;  // [0, 1]
    double liveness = 0.0;      // [0, 1]
    double loudness = 0.0;      // dB, [-60, +5]
    int popularity = 0;         // [0, 100]
};

/// CSV/JSON field names in schema order.
inline constexpr std::array<std::string_view, 11> kCatalogFields = {
    "id",       "title",        "artist",   "year",     "valence", "energy",
    "tempo",    "danceability", "liveness", "loudness", "popularity"};

/// Immutable after construction; concurrent readers are safe.
class Catalog {
public:
    Catalog() = default;

    /// Throws DuplicateIdError if two tracks share an id.
    explicit Catalog(std::vector<Track> tracks);

    const std::vector<Track>& tracks() const { return tracks_; }
    std::size_t size() const { return tracks_.size(); }
    bool empty() const { return tracks_.empty(); }

    /// nullptr when the id is not in the catalog.
    const Track* find(const TrackId& id) const;

    /// Throws UnknownIdError.
    const Track& at(const TrackId& id) const;

private:
    std::vector<Track> tracks_;
    std::unordered_map<TrackId, std::size_t> index_;
};

enum class CatalogFormat { Csv, Json };

/// Picks Csv or Json from the file extension; throws SchemaError otherwise.
CatalogFormat format_from_extension(const std::filesystem::path& path);

struct LoadOptions {
    /// Strict loading (the default) rejects the file on the first invalid
    /// row; lenient loading skips invalid rows and counts them.
    bool lenient = false;
};

struct LoadReport {
    Catalog catalog;
    std::size_t rejected = 0;  // rows skipped under lenient loading
};

/// Parses and validates one raw row. Throws MissingFieldError, TypeError,
/// or RangeError.
Track validate_row(const std::map<std::string, std::string>& raw);

LoadReport load_catalog(const std::filesystem::path& path, CatalogFormat format,
                        const LoadOptions& options = {});

void write_catalog_csv(const Catalog& catalog, const std::filesystem::path& path);

/// Collapses tracks sharing (casefolded, trimmed artist, casefolded, trimmed
/// title) to the most popular one; popularity ties go to the smallest id.
/// Survivors keep their relative catalog order.
Catalog dedupe(const Catalog& catalog);

/// Casefolded (ASCII), whitespace-trimmed form used as the dedup key part.
std::string dedupe_key_part(std::string_view text);

/// Turns a bracketed multi-artist dump field like "['A', 'B']" into "A, B".
/// Anything else is returned trimmed.
std::string normalize_artist_field(std::string_view raw);

}  // namespace moodrec
