// Benchmark of the data-parallel kernels against their serial references:
// column stats, the z-transform sweep, and the nearest-neighbor scan.
// Verifies agreement while timing.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "moodrec/recommend.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace moodrec;
using Clock = std::chrono::steady_clock;

namespace {

Catalog make_catalog(std::size_t n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> tempo(40.0, 220.0);
    std::uniform_real_distribution<double> loudness(-50.0, 0.0);
    std::uniform_int_distribution<int> year(1921, 2020);
    std::uniform_int_distribution<int> popularity(0, 100);

    std::vector<Track> tracks;
    tracks.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Track t;
        char id[24];
        std::snprintf(id, sizeof(id), "t%08zu", i);
        t.id.value = id;
        t.title = "track " + std::to_string(i);
        t.artist = "artist " + std::to_string(i % 34000);
        t.year = year(rng);
        t.valence = unit(rng);
        t.energy = unit(rng);
        t.tempo = tempo(rng);
        t.danceability = unit(rng);
        t.liveness = unit(rng);
        t.loudness = loudness(rng);
        t.popularity = popularity(rng);
        tracks.push_back(std::move(t));
    }
    return Catalog(std::move(tracks));
}

template <typename Fn>
double best_of(int repeats, Fn&& fn) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto start = Clock::now();
        fn();
        const std::chrono::duration<double, std::milli> elapsed =
            Clock::now() - start;
        best = std::min(best, elapsed.count());
    }
    return best;
}

void print_row(const char* kernel, double serial_ms, double parallel_ms) {
    std::printf("%-18s %12.2f %12.2f %9.2fx\n", kernel, serial_ms, parallel_ms,
                serial_ms / parallel_ms);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"moodrec kernel benchmark: serial reference vs OpenMP"};
    std::size_t n = 170000;
    std::size_t pool = 30;
    int repeats = 5;
    unsigned seed = 42;
    app.add_option("--tracks", n, "catalog size");
    app.add_option("--pool", pool, "nearest-scan pool size");
    app.add_option("--repeats", repeats, "timing repeats (best-of)");
    app.add_option("--seed", seed, "generator seed");
    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    std::printf("tracks=%zu pool=%zu repeats=%d threads=%d\n", n, pool, repeats,
                omp_get_max_threads());
#else
    std::printf("tracks=%zu pool=%zu repeats=%d (OpenMP disabled)\n", n, pool,
                repeats);
#endif

    const Catalog catalog = make_catalog(n, seed);
    const FeatureStats stats_ref = compute_stats_serial(catalog);
    const FeatureStats stats_par = compute_stats(catalog);
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
        if (std::abs(stats_ref.mean[f] - stats_par.mean[f]) > 1e-9 ||
            std::abs(stats_ref.stddev[f] - stats_par.stddev[f]) > 1e-9) {
            std::fprintf(stderr, "stats mismatch on feature %zu\n", f);
            return 1;
        }
    }

    const std::vector<TrackMood> moods_ref =
        z_transform_all_serial(catalog, stats_par);
    const std::vector<TrackMood> moods_par = z_transform_all(catalog, stats_par);
    for (std::size_t i = 0; i < moods_ref.size(); ++i) {
        if (moods_ref[i].mood != moods_par[i].mood) {
            std::fprintf(stderr, "z-transform mismatch at %zu\n", i);
            return 1;
        }
    }

    std::vector<Candidate> candidates;
    candidates.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        candidates.push_back(Candidate{moods_par[i].id, moods_par[i].mood,
                                       catalog.tracks()[i].popularity});
    const MoodVector query = moods_par[n / 2].mood;
    const WeightProfile weights;
    const std::unordered_set<TrackId> exclude = {moods_par[n / 2].id};

    const auto scan_ref = nearest_serial(candidates, query, pool, weights, exclude);
    const auto scan_par = nearest(candidates, query, pool, weights, exclude);
    for (std::size_t i = 0; i < scan_ref.size(); ++i) {
        if (scan_ref[i].id != scan_par[i].id ||
            scan_ref[i].distance != scan_par[i].distance) {
            std::fprintf(stderr, "nearest mismatch at %zu\n", i);
            return 1;
        }
    }

    std::printf("%-18s %12s %12s %10s\n", "kernel", "serial ms", "parallel ms",
                "speedup");
    print_row("compute_stats",
              best_of(repeats, [&] { (void)compute_stats_serial(catalog); }),
              best_of(repeats, [&] { (void)compute_stats(catalog); }));
    print_row("z_transform_all",
              best_of(repeats,
                      [&] { (void)z_transform_all_serial(catalog, stats_par); }),
              best_of(repeats, [&] { (void)z_transform_all(catalog, stats_par); }));
    print_row("nearest",
              best_of(repeats,
                      [&] {
                          (void)nearest_serial(candidates, query, pool, weights,
                                               exclude);
                      }),
              best_of(repeats, [&] {
                  (void)nearest(candidates, query, pool, weights, exclude);
              }));

    const auto start = Clock::now();
    RecommendRequest request;
    request.seed_ids = {candidates[0].id, candidates[1].id, candidates[2].id};
    const Playlist playlist = recommend(request, catalog);
    const std::chrono::duration<double, std::milli> elapsed =
        Clock::now() - start;
    std::printf("end-to-end recommend over %zu tracks: %.2f ms (%zu items)\n", n,
                elapsed.count(), playlist.items.size());
    return 0;
}
