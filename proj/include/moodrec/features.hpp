#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "moodrec/catalog.hpp"

namespace moodrec {

inline constexpr std::size_t kFeatureCount = 6;

/// Fixed feature order shared by MoodVector, FeatureStats, and WeightProfile.
enum class Feature : std::size_t {
    Valence = 0,
    Energy,
    Tempo,
    Danceability,
    Liveness,
    Loudness,
};

inline constexpr std::array<std::string_view, kFeatureCount> kFeatureNames = {
    "valence", "energy", "tempo", "danceability", "liveness", "loudness"};

double track_feature(const Track& track, Feature f);

/// Per-feature mean and population standard deviation (divide by n).
struct FeatureStats {
    std::array<double, kFeatureCount> mean{};
    std::array<double, kFeatureCount> stddev{};
    std::size_t count = 0;
};

/// 6-dimensional standardized feature vector of a track.
struct MoodVector {
    std::array<double, kFeatureCount> z{};

    double operator[](Feature f) const { return z[static_cast<std::size_t>(f)]; }
    double& operator[](Feature f) { return z[static_cast<std::size_t>(f)]; }

    bool operator==(const MoodVector&) const = default;
};

struct TrackMood {
    TrackId id;
    MoodVector mood;
};

/// Two-pass mean/std over fixed-size blocks. Blocks are reduced in parallel
/// and combined in block order, so the result does not depend on the thread
/// count. Throws EmptyCatalogError.
FeatureStats compute_stats(const Catalog& catalog);

/// Plain-loop reference; agrees with compute_stats to ~1e-12 relative.
FeatureStats compute_stats_serial(const Catalog& catalog);

/// z_f = (x_f - mean_f) / stddev_f, and 0 where stddev_f is 0 (a constant
/// column carries no information).
MoodVector z_transform(const Track& track, const FeatureStats& stats);

/// One MoodVector per track, catalog order preserved. Parallel over tracks;
/// bitwise identical to the serial reference.
std::vector<TrackMood> z_transform_all(const Catalog& catalog,
                                       const FeatureStats& stats);

std::vector<TrackMood> z_transform_all_serial(const Catalog& catalog,
                                              const FeatureStats& stats);

/// 16-hex-digit FNV-1a over the exact bit patterns of the stats.
std::string stats_fingerprint(const FeatureStats& stats);

/// {"valence":{"mean":...,"std":...},...,"count":n}
std::string stats_to_json(const FeatureStats& stats);

}  // namespace moodrec
