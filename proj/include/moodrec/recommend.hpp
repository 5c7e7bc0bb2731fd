#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "moodrec/emotion.hpp"

namespace moodrec {

struct RecommendRequest {
    std::vector<TrackId> seed_ids;
    std::size_t k = 9;
    std::size_t pool_size = 30;  // distance pool handed to the popularity re-rank
    std::optional<int> year_window = 8;  // years; nullopt disables the recency filter
    std::optional<Quadrant> target_quadrant;
    WeightProfile weights;
};

struct Recommendation {
    Track track;
    double distance = 0.0;
    int rank = 0;
    Quadrant quadrant = Quadrant::ExuberantHappy;
};

struct Playlist {
    RecommendRequest request;
    std::vector<Recommendation> items;
    std::chrono::system_clock::time_point generated_at{};
    std::string stats_fingerprint;
    /// Effective year cutoff (max seed year minus window) when the recency
    /// filter applied.
    std::optional<int> min_year;
};

/// Sorts the distance pool by (popularity desc, distance asc, id asc),
/// truncates to k, and assigns ranks 1..k. Throws UnknownIdError when a
/// neighbor id does not resolve in the catalog.
std::vector<Recommendation> popularity_rerank(const std::vector<Neighbor>& pool,
                                              const Catalog& catalog,
                                              std::size_t k);

/// Full pipeline: stats -> z-transform -> seed centroid -> year/quadrant
/// filters -> nearest pool -> popularity re-rank. Deterministic for
/// identical inputs. Throws SeedNotFoundError and NoCandidatesError (the
/// latter names the filter that emptied the pool). Playlists come back
/// shorter than k when the filtered universe is small; that is not an error.
Playlist recommend(const RecommendRequest& request, const Catalog& catalog);

/// Human-readable per-item report: distance, popularity, quadrant, year,
/// and the filters in effect.
std::string explain(const Playlist& playlist);

/// {"seeds":[...],"k":9,"items":[{"rank":1,"id":...,"title":...,"artist":...,
///  "year":...,"popularity":...,"distance":...,"quadrant":"Q4"},...],
///  "stats_fingerprint":"..."}
/// The generation timestamp is not part of the schema, so identical requests
/// serialize to identical bytes.
std::string playlist_to_json(const Playlist& playlist);

/// Parses the schema above. Fields outside the schema (timestamps, filter
/// settings) are left at their defaults.
Playlist playlist_from_json(const std::string& text);

}  // namespace moodrec
