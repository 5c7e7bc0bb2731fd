#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "moodrec/similarity.hpp"

using namespace moodrec;

namespace {

MoodVector vec(double a, double b, double c, double d, double e, double f) {
    MoodVector v;
    v.z = {a, b, c, d, e, f};
    return v;
}

MoodVector random_vec(std::mt19937& rng, double span = 3.0) {
    std::uniform_real_distribution<double> dist(-span, span);
    MoodVector v;
    for (auto& z : v.z) z = dist(rng);
    return v;
}

std::vector<Candidate> random_candidates(std::size_t n, std::mt19937& rng) {
    std::uniform_int_distribution<int> pop(0, 100);
    std::vector<Candidate> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(Candidate{TrackId{"c" + std::to_string(i)},
                                random_vec(rng), pop(rng)});
    return out;
}

/// Brute-force reference: full sort of every non-excluded candidate under
/// the pinned total order, truncated to k.
std::vector<Neighbor> brute_force_nearest(
    const std::vector<Candidate>& candidates, const MoodVector& query,
    std::size_t k, const WeightProfile& weights,
    const std::unordered_set<TrackId>& exclude) {
    struct Row {
        TrackId id;
        double distance;
        int popularity;
    };
    std::vector<Row> rows;
    for (const Candidate& c : candidates) {
        if (exclude.contains(c.id)) continue;
        rows.push_back(Row{c.id, euclidean_distance(query, c.mood, weights),
                           c.popularity});
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        if (a.distance != b.distance) return a.distance < b.distance;
        if (a.popularity != b.popularity) return a.popularity > b.popularity;
        return a.id < b.id;
    });
    if (rows.size() > k) rows.resize(k);
    std::vector<Neighbor> out;
    for (const Row& r : rows) out.push_back(Neighbor{r.id, r.distance});
    return out;
}

}  // namespace

TEST_CASE("distance of a vector to itself is zero") {
    std::mt19937 rng(3);
    for (int i = 0; i < 20; ++i) {
        const MoodVector p = random_vec(rng);
        CHECK(euclidean_distance(p, p) == 0.0);
    }
}

TEST_CASE("3-4-5 right triangle distance") {
    const MoodVector p = vec(0, 0, 0, 0, 0, 0);
    const MoodVector q = vec(3, 4, 0, 0, 0, 0);
    CHECK(euclidean_distance(p, q) == 5.0);
}

TEST_CASE("weighted distance: weight 4 on the only differing axis gives 2") {
    const MoodVector p = vec(1, 1, 1, 1, 1, 1);
    const MoodVector q = vec(0, 0, 0, 0, 0, 0);
    WeightProfile w;
    w.w = {4, 0, 0, 0, 0, 0};
    CHECK(euclidean_distance(p, q, w) == 2.0);
}

TEST_CASE("all-ones weights reproduce the unweighted formula") {
    std::mt19937 rng(7);
    for (int i = 0; i < 200; ++i) {
        const MoodVector p = random_vec(rng);
        const MoodVector q = random_vec(rng);
        double plain = 0.0;
        for (std::size_t f = 0; f < kFeatureCount; ++f)
            plain += (q.z[f] - p.z[f]) * (q.z[f] - p.z[f]);
        plain = std::sqrt(plain);
        CHECK(euclidean_distance(p, q, WeightProfile{}) ==
              doctest::Approx(plain).epsilon(1e-12));
        CHECK(euclidean_distance(p, q) == euclidean_distance(p, q, WeightProfile{}));
    }
}

TEST_CASE("metric axioms hold on random triples") {
    std::mt19937 rng(11);
    for (int i = 0; i < 300; ++i) {
        const MoodVector p = random_vec(rng);
        const MoodVector q = random_vec(rng);
        const MoodVector r = random_vec(rng);
        const double pq = euclidean_distance(p, q);
        const double qp = euclidean_distance(q, p);
        const double pr = euclidean_distance(p, r);
        const double qr = euclidean_distance(q, r);
        CHECK(pq >= 0.0);
        CHECK(pq == doctest::Approx(qp).epsilon(1e-12));
        CHECK(pr <= pq + qr + 1e-9);
    }
}

TEST_CASE("seed centroid") {
    const MoodVector a = vec(0, 0, 0, 0, 0, 0);
    const MoodVector b = vec(2, 2, 2, 2, 2, 2);

    SUBCASE("mean of one is the seed itself") {
        const std::vector<MoodVector> seeds = {b};
        CHECK(seed_centroid(seeds) == b);
    }

    SUBCASE("midpoint of opposite corners") {
        const std::vector<MoodVector> seeds = {a, b};
        CHECK(seed_centroid(seeds) == vec(1, 1, 1, 1, 1, 1));
    }

    SUBCASE("three identical seeds collapse to the seed") {
        const std::vector<MoodVector> seeds = {b, b, b};
        CHECK(seed_centroid(seeds) == b);
    }

    SUBCASE("empty list throws") {
        CHECK_THROWS_AS(seed_centroid(std::vector<MoodVector>{}),
                        EmptySeedListError);
    }
}

TEST_CASE("weight validation") {
    WeightProfile w;
    w.w = {0, 0, 0, 0, 0, 0};
    CHECK_THROWS_AS(w.validate(), DegenerateWeightsError);
    w.w = {1, -0.5, 1, 1, 1, 1};
    CHECK_THROWS_AS(w.validate(), Error);
    w.w = {0, 0, 0.25, 0, 0, 0};
    CHECK_NOTHROW(w.validate());
}

TEST_CASE("nearest saturates when k exceeds the candidate count") {
    std::mt19937 rng(13);
    const std::vector<Candidate> candidates = random_candidates(6, rng);
    const auto result =
        nearest(candidates, vec(0, 0, 0, 0, 0, 0), 50, WeightProfile{}, {});
    CHECK(result.size() == 6);
    for (std::size_t i = 1; i < result.size(); ++i)
        CHECK(result[i - 1].distance <= result[i].distance);
}

TEST_CASE("query matching a candidate puts it first at distance zero") {
    std::mt19937 rng(17);
    std::vector<Candidate> candidates = random_candidates(40, rng);
    const MoodVector query = candidates[25].mood;
    const auto result = nearest(candidates, query, 5, WeightProfile{}, {});
    REQUIRE(!result.empty());
    CHECK(result[0].id == candidates[25].id);
    CHECK(result[0].distance == 0.0);
}

TEST_CASE("nearest matches the brute-force oracle on random sets") {
    std::mt19937 rng(19);
    const std::vector<Candidate> candidates = random_candidates(200, rng);
    const MoodVector query = random_vec(rng);
    const std::unordered_set<TrackId> exclude = {candidates[3].id,
                                                 candidates[77].id};

    for (const std::size_t k : {1UL, 10UL, 50UL, 400UL}) {
        const auto expected =
            brute_force_nearest(candidates, query, k, WeightProfile{}, exclude);
        const auto actual = nearest(candidates, query, k, WeightProfile{}, exclude);
        REQUIRE(actual.size() == expected.size());
        for (std::size_t i = 0; i < actual.size(); ++i) {
            CHECK(actual[i].id == expected[i].id);
            CHECK(actual[i].distance == expected[i].distance);
        }
    }
}

TEST_CASE("excluded ids never appear") {
    std::mt19937 rng(23);
    const std::vector<Candidate> candidates = random_candidates(50, rng);
    std::unordered_set<TrackId> exclude;
    for (std::size_t i = 0; i < 10; ++i) exclude.insert(candidates[i * 5].id);

    const auto result =
        nearest(candidates, random_vec(rng), 50, WeightProfile{}, exclude);
    CHECK(result.size() == 40);
    for (const Neighbor& n : result) CHECK(!exclude.contains(n.id));
}

TEST_CASE("all candidates excluded raises NoCandidates") {
    std::mt19937 rng(29);
    const std::vector<Candidate> candidates = random_candidates(5, rng);
    std::unordered_set<TrackId> exclude;
    for (const Candidate& c : candidates) exclude.insert(c.id);
    CHECK_THROWS_AS(nearest(candidates, random_vec(rng), 3, WeightProfile{}, exclude),
                    NoCandidatesError);
}

TEST_CASE("k of zero is rejected") {
    std::mt19937 rng(31);
    const std::vector<Candidate> candidates = random_candidates(5, rng);
    CHECK_THROWS_AS(nearest(candidates, random_vec(rng), 0, WeightProfile{}, {}),
                    Error);
}

TEST_CASE("result is stable under candidate permutation") {
    std::mt19937 rng(37);
    std::vector<Candidate> candidates = random_candidates(120, rng);
    // Force distance ties so the tie-break order has to do the work.
    candidates[10].mood = candidates[40].mood;
    candidates[10].popularity = candidates[40].popularity;
    candidates[55].mood = candidates[90].mood;
    const MoodVector query = random_vec(rng);

    const auto before = nearest(candidates, query, 20, WeightProfile{}, {});
    std::shuffle(candidates.begin(), candidates.end(), rng);
    const auto after = nearest(candidates, query, 20, WeightProfile{}, {});

    REQUIRE(before.size() == after.size());
    for (std::size_t i = 0; i < before.size(); ++i)
        CHECK(before[i].id == after[i].id);
}

TEST_CASE("scaling every weight by c scales distances by sqrt(c), order intact") {
    std::mt19937 rng(41);
    const std::vector<Candidate> candidates = random_candidates(80, rng);
    const MoodVector query = random_vec(rng);

    WeightProfile base;
    base.w = {1.5, 0.5, 2.0, 1.0, 0.25, 3.0};
    WeightProfile scaled = base;
    const double c = 4.0;
    for (auto& w : scaled.w) w *= c;

    const auto r1 = nearest(candidates, query, 80, base, {});
    const auto r2 = nearest(candidates, query, 80, scaled, {});
    REQUIRE(r1.size() == r2.size());
    for (std::size_t i = 0; i < r1.size(); ++i) {
        CHECK(r1[i].id == r2[i].id);
        CHECK(r2[i].distance ==
              doctest::Approx(std::sqrt(c) * r1[i].distance).epsilon(1e-9));
    }
}

TEST_CASE("distance ties resolve by popularity, then id") {
    std::vector<Candidate> candidates;
    const MoodVector same = vec(1, 0, 0, 0, 0, 0);
    candidates.push_back(Candidate{TrackId{"bb"}, same, 50});
    candidates.push_back(Candidate{TrackId{"aa"}, same, 50});
    candidates.push_back(Candidate{TrackId{"cc"}, same, 90});
    candidates.push_back(Candidate{TrackId{"dd"}, vec(2, 0, 0, 0, 0, 0), 100});

    const auto result =
        nearest(candidates, vec(0, 0, 0, 0, 0, 0), 4, WeightProfile{}, {});
    REQUIRE(result.size() == 4);
    CHECK(result[0].id.value == "cc");  // popularity 90 wins the tie
    CHECK(result[1].id.value == "aa");  // then id order
    CHECK(result[2].id.value == "bb");
    CHECK(result[3].id.value == "dd");  // strictly farther
}
