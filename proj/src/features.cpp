#include "moodrec/features.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>

#include <json.hpp>

namespace moodrec {

double track_feature(const Track& track, Feature f) {
    switch (f) {
        case Feature::Valence: return track.valence;
        case Feature::Energy: return track.energy;
        case Feature::Tempo: return track.tempo;
        case Feature::Danceability: return track.danceability;
        case Feature::Liveness: return track.liveness;
        case Feature::Loudness: return track.loudness;
    }
    return 0.0;
}

namespace {

using FeatureSums = std::array<double, kFeatureCount>;

constexpr std::ptrdiff_t kBlock = 4096;

/// Reduces `accumulate(track)` over fixed blocks in parallel, then combines
/// the per-block sums in block order. The grouping is independent of the
/// thread count, so the result is stable across runs and machines with
/// different parallelism.
template <typename Accumulate>
FeatureSums blocked_sum(const std::vector<Track>& tracks, Accumulate&& accumulate) {
    const auto n = static_cast<std::ptrdiff_t>(tracks.size());
    const std::ptrdiff_t nblocks = (n + kBlock - 1) / kBlock;
    std::vector<FeatureSums> block_sums(static_cast<std::size_t>(nblocks));

#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t b = 0; b < nblocks; ++b) {
        FeatureSums sums{};
        const std::ptrdiff_t end = std::min(n, (b + 1) * kBlock);
        for (std::ptrdiff_t i = b * kBlock; i < end; ++i)
            accumulate(tracks[static_cast<std::size_t>(i)], sums);
        block_sums[static_cast<std::size_t>(b)] = sums;
    }

    FeatureSums total{};
    for (const FeatureSums& sums : block_sums)
        for (std::size_t f = 0; f < kFeatureCount; ++f) total[f] += sums[f];
    return total;
}

}  // namespace

FeatureStats compute_stats(const Catalog& catalog) {
    if (catalog.empty()) throw EmptyCatalogError();
    const auto& tracks = catalog.tracks();
    const auto n = static_cast<double>(tracks.size());

    const FeatureSums sum = blocked_sum(tracks, [](const Track& t, FeatureSums& s) {
        for (std::size_t f = 0; f < kFeatureCount; ++f)
            s[f] += track_feature(t, static_cast<Feature>(f));
    });

    FeatureStats stats;
    stats.count = tracks.size();
    for (std::size_t f = 0; f < kFeatureCount; ++f) stats.mean[f] = sum[f] / n;

    const FeatureSums sq =
        blocked_sum(tracks, [&stats](const Track& t, FeatureSums& s) {
            for (std::size_t f = 0; f < kFeatureCount; ++f) {
                const double d =
                    track_feature(t, static_cast<Feature>(f)) - stats.mean[f];
                s[f] += d * d;
            }
        });
    for (std::size_t f = 0; f < kFeatureCount; ++f)
        stats.stddev[f] = std::sqrt(sq[f] / n);
    return stats;
}

FeatureStats compute_stats_serial(const Catalog& catalog) {
    if (catalog.empty()) throw EmptyCatalogError();
    const auto& tracks = catalog.tracks();
    const auto n = static_cast<double>(tracks.size());

    FeatureStats stats;
    stats.count = tracks.size();
    for (const Track& t : tracks)
        for (std::size_t f = 0; f < kFeatureCount; ++f)
            stats.mean[f] += track_feature(t, static_cast<Feature>(f));
    for (std::size_t f = 0; f < kFeatureCount; ++f) stats.mean[f] /= n;

    FeatureSums sq{};
    for (const Track& t : tracks) {
        for (std::size_t f = 0; f < kFeatureCount; ++f) {
            const double d =
                track_feature(t, static_cast<Feature>(f)) - stats.mean[f];
            sq[f] += d * d;
        }
    }
    for (std::size_t f = 0; f < kFeatureCount; ++f)
        stats.stddev[f] = std::sqrt(sq[f] / n);
    return stats;
}

MoodVector z_transform(const Track& track, const FeatureStats& stats) {
    MoodVector v;
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
        const double x = track_feature(track, static_cast<Feature>(f));
        v.z[f] = stats.stddev[f] == 0.0 ? 0.0 : (x - stats.mean[f]) / stats.stddev[f];
    }
    return v;
}

std::vector<TrackMood> z_transform_all(const Catalog& catalog,
                                       const FeatureStats& stats) {
    if (catalog.empty()) throw EmptyCatalogError();
    const auto& tracks = catalog.tracks();
    std::vector<TrackMood> out(tracks.size());

    const auto n = static_cast<std::ptrdiff_t>(tracks.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto u = static_cast<std::size_t>(i);
        out[u].id = tracks[u].id;
        out[u].mood = z_transform(tracks[u], stats);
    }
    return out;
}

std::vector<TrackMood> z_transform_all_serial(const Catalog& catalog,
                                              const FeatureStats& stats) {
    if (catalog.empty()) throw EmptyCatalogError();
    std::vector<TrackMood> out;
    out.reserve(catalog.size());
    for (const Track& t : catalog.tracks())
        out.push_back(TrackMood{t.id, z_transform(t, stats)});
    return out;
}

std::string stats_fingerprint(const FeatureStats& stats) {
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a offset basis
    const auto mix = [&h](const void* data, std::size_t size) {
        const auto* bytes = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < size; ++i) {
            h ^= bytes[i];
            h *= 1099511628211ULL;
        }
    };
    const auto mix_double = [&mix](double v) {
        std::uint64_t bits = 0;
        std::memcpy(&bits, &v, sizeof(bits));
        mix(&bits, sizeof(bits));
    };

    const auto count = static_cast<std::uint64_t>(stats.count);
    mix(&count, sizeof(count));
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
        mix_double(stats.mean[f]);
        mix_double(stats.stddev[f]);
    }

    static constexpr char kHex[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = kHex[h & 0xF];
        h >>= 4;
    }
    return out;
}

std::string stats_to_json(const FeatureStats& stats) {
    nlohmann::ordered_json doc;
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
        doc[std::string(kFeatureNames[f])] = {{"mean", stats.mean[f]},
                                              {"std", stats.stddev[f]}};
    }
    doc["count"] = stats.count;
    return doc.dump();
}

}  // namespace moodrec
