#pragma once

#include <span>
#include <unordered_set>
#include <vector>

#include "moodrec/features.hpp"

namespace moodrec {

/// Per-feature distance weights. All-ones (the default) reproduces the
/// unweighted metric.
struct WeightProfile {
    std::array<double, kFeatureCount> w{1.0, 1.0, 1.0, 1.0, 1.0, 1.0};

    double operator[](Feature f) const { return w[static_cast<std::size_t>(f)]; }
    double& operator[](Feature f) { return w[static_cast<std::size_t>(f)]; }

    bool operator==(const WeightProfile&) const = default;

    /// Throws Error on a negative weight, DegenerateWeightsError when all
    /// six are zero.
    void validate() const;
};

struct Neighbor {
    TrackId id;
    double distance = 0.0;
};

/// Entry in the nearest-neighbor scan; popularity rides along for the
/// tie-break order.
struct Candidate {
    TrackId id;
    MoodVector mood;
    int popularity = 0;
};

/// sqrt(sum_f w_f * (q_f - p_f)^2)
double euclidean_distance(const MoodVector& p, const MoodVector& q,
                          const WeightProfile& weights);

/// Unweighted form: sqrt(sum_f (q_f - p_f)^2)
double euclidean_distance(const MoodVector& p, const MoodVector& q);

/// Component-wise mean. Throws EmptySeedListError.
MoodVector seed_centroid(std::span<const MoodVector> seeds);

/// Exact top-k by the total order (distance asc, popularity desc, id asc),
/// skipping excluded ids. Linear scan with a bounded heap, parallelized over
/// candidates; per-thread results merge under the same total order, so the
/// output is identical to nearest_serial. Throws NoCandidatesError when
/// exclusion leaves nothing, Error when k is 0.
std::vector<Neighbor> nearest(std::span<const Candidate> candidates,
                              const MoodVector& query, std::size_t k,
                              const WeightProfile& weights,
                              const std::unordered_set<TrackId>& exclude);

std::vector<Neighbor> nearest_serial(std::span<const Candidate> candidates,
                                     const MoodVector& query, std::size_t k,
                                     const WeightProfile& weights,
                                     const std::unordered_set<TrackId>& exclude);

}  // namespace moodrec
