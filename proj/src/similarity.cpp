#include "moodrec/similarity.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace moodrec {

void WeightProfile::validate() const {
    bool any_positive = false;
    for (const double value : w) {
        if (value < 0.0 || !std::isfinite(value))
            throw Error("feature weights must be finite and non-negative");
        if (value > 0.0) any_positive = true;
    }
    if (!any_positive) throw DegenerateWeightsError();
}

double euclidean_distance(const MoodVector& p, const MoodVector& q,
                          const WeightProfile& weights) {
    double acc = 0.0;
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
        const double d = q.z[f] - p.z[f];
        acc += weights.w[f] * d * d;
    }
    return std::sqrt(acc);
}

double euclidean_distance(const MoodVector& p, const MoodVector& q) {
    return euclidean_distance(p, q, WeightProfile{});
}

MoodVector seed_centroid(std::span<const MoodVector> seeds) {
    if (seeds.empty()) throw EmptySeedListError();
    MoodVector centroid;
    for (const MoodVector& seed : seeds)
        for (std::size_t f = 0; f < kFeatureCount; ++f) centroid.z[f] += seed.z[f];
    const auto n = static_cast<double>(seeds.size());
    for (std::size_t f = 0; f < kFeatureCount; ++f) centroid.z[f] /= n;
    return centroid;
}

namespace {

struct Scored {
    double distance;
    int popularity;
    const TrackId* id;
};

/// Strict total order (ids are unique), so the top-k set and its ordering
/// are the same no matter how the scan is partitioned.
bool ranks_before(const Scored& a, const Scored& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    if (a.popularity != b.popularity) return a.popularity > b.popularity;
    return *a.id < *b.id;
}

/// Bounded selection: keeps the k best seen so far in a max-heap whose top
/// is the current worst.
class TopK {
public:
    explicit TopK(std::size_t k) : k_(k) { entries_.reserve(k + 1); }

    void offer(const Scored& s) {
        if (entries_.size() < k_) {
            entries_.push_back(s);
            std::push_heap(entries_.begin(), entries_.end(), ranks_before);
        } else if (ranks_before(s, entries_.front())) {
            std::pop_heap(entries_.begin(), entries_.end(), ranks_before);
            entries_.back() = s;
            std::push_heap(entries_.begin(), entries_.end(), ranks_before);
        }
    }

    std::vector<Scored> take() && {
        std::sort(entries_.begin(), entries_.end(), ranks_before);
        return std::move(entries_);
    }

    const std::vector<Scored>& entries() const { return entries_; }

private:
    std::size_t k_;
    std::vector<Scored> entries_;
};

std::vector<Neighbor> to_neighbors(const std::vector<Scored>& scored) {
    std::vector<Neighbor> out;
    out.reserve(scored.size());
    for (const Scored& s : scored) out.push_back(Neighbor{*s.id, s.distance});
    return out;
}

}  // namespace

std::vector<Neighbor> nearest_serial(std::span<const Candidate> candidates,
                                     const MoodVector& query, std::size_t k,
                                     const WeightProfile& weights,
                                     const std::unordered_set<TrackId>& exclude) {
    if (k == 0) throw Error("k must be at least 1");

    TopK top(k);
    std::size_t scanned = 0;
    for (const Candidate& c : candidates) {
        if (exclude.contains(c.id)) continue;
        ++scanned;
        top.offer(Scored{euclidean_distance(query, c.mood, weights), c.popularity,
                         &c.id});
    }
    if (scanned == 0) throw NoCandidatesError("exclusion");
    return to_neighbors(std::move(top).take());
}

std::vector<Neighbor> nearest(std::span<const Candidate> candidates,
                              const MoodVector& query, std::size_t k,
                              const WeightProfile& weights,
                              const std::unordered_set<TrackId>& exclude) {
#ifndef _OPENMP
    return nearest_serial(candidates, query, k, weights, exclude);
#else
    if (k == 0) throw Error("k must be at least 1");

    const auto n = static_cast<std::ptrdiff_t>(candidates.size());
    std::vector<Scored> merged;
    std::size_t scanned = 0;

#pragma omp parallel
    {
        TopK local(k);
        std::size_t local_scanned = 0;

#pragma omp for schedule(static) nowait
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            const Candidate& c = candidates[static_cast<std::size_t>(i)];
            if (exclude.contains(c.id)) continue;
            ++local_scanned;
            local.offer(Scored{euclidean_distance(query, c.mood, weights),
                               c.popularity, &c.id});
        }

#pragma omp critical
        {
            scanned += local_scanned;
            merged.insert(merged.end(), local.entries().begin(),
                          local.entries().end());
        }
    }

    if (scanned == 0) throw NoCandidatesError("exclusion");
    std::sort(merged.begin(), merged.end(), ranks_before);
    if (merged.size() > k) merged.resize(k);
    return to_neighbors(merged);
#endif
}

}  // namespace moodrec
