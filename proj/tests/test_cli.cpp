// End-to-end tests of the moodrec binary: exit codes, output files, and the
// documented summary lines. MOODREC_CLI_PATH is injected by the build.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <sys/wait.h>

#include <json.hpp>

#include "moodrec/catalog.hpp"
#include "moodrec/feedback.hpp"
#include "moodrec/recommend.hpp"
#include "support/fixtures.hpp"

using namespace moodrec;
using testutil::TempDir;
using testutil::make_track;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

RunResult run_cli(const TempDir& dir, const std::string& args) {
    const auto out_path = dir.file("cli_stdout.txt");
    const auto err_path = dir.file("cli_stderr.txt");
    const std::string cmd = std::string(MOODREC_CLI_PATH) + " " + args + " > " +
                            out_path.string() + " 2> " + err_path.string();
    const int status = std::system(cmd.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = testutil::read_file(out_path);
    result.err = testutil::read_file(err_path);
    return result;
}

/// Catalog with one duplicate pair, written as raw CSV.
void write_raw_catalog(const TempDir& dir, const std::string& name) {
    Catalog catalog({
        make_track("s1", 2012, 80, 0.60, 0.70, 120, 0.60, 0.15, -7.0),
        make_track("s2", 2014, 85, 0.65, 0.75, 125, 0.62, 0.12, -6.5),
        make_track("s3", 2015, 75, 0.55, 0.68, 118, 0.58, 0.18, -7.5),
        make_track("c1", 2013, 55, 0.61, 0.71, 121, 0.61, 0.15, -7.0),
        make_track("c2", 2012, 91, 0.59, 0.70, 122, 0.59, 0.16, -6.8),
        make_track("c3", 2009, 12, 0.62, 0.72, 119, 0.60, 0.14, -7.2),
        make_track("c4", 2018, 67, 0.58, 0.69, 123, 0.62, 0.15, -7.1),
        make_track("c5", 2011, 43, 0.63, 0.73, 117, 0.57, 0.16, -6.9),
        make_track("c6", 2017, 88, 0.60, 0.68, 124, 0.63, 0.13, -7.3),
        make_track("c7", 2014, 29, 0.57, 0.72, 120, 0.58, 0.17, -6.6),
        make_track("c8", 2019, 73, 0.64, 0.69, 122, 0.61, 0.14, -7.4),
        make_track("c9", 2008, 31, 0.56, 0.71, 118, 0.59, 0.15, -6.7),
        make_track("c0", 2016, 96, 0.45, 0.55, 100, 0.48, 0.25, -10.0),
    });
    write_catalog_csv(catalog, dir.file(name));

    // Append a duplicate of c1 under another id with lower popularity.
    std::ofstream app(dir.file(name), std::ios::app);
    app << "dup1,title c1,artist c1,2013,0.61,0.71,121,0.61,0.15,-7,40\n";
}

}  // namespace

TEST_CASE("ingest validates, dedupes, and reports counts") {
    TempDir dir("cli");
    write_raw_catalog(dir, "raw.csv");

    const auto result = run_cli(dir, "ingest -i " + dir.file("raw.csv").string() +
                                         " -o " + dir.file("catalog.csv").string());
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("loaded 14, removed 1 duplicates, rejected 0") !=
          std::string::npos);

    const LoadReport report =
        load_catalog(dir.file("catalog.csv"), CatalogFormat::Csv);
    CHECK(report.catalog.size() == 13);
    CHECK(report.catalog.find(TrackId{"dup1"}) == nullptr);  // lower popularity
    CHECK(report.catalog.find(TrackId{"c1"}) != nullptr);
}

TEST_CASE("ingest on a missing file exits 1 with a diagnostic") {
    TempDir dir("cli");
    const auto result =
        run_cli(dir, "ingest -i " + dir.file("absent.csv").string() + " -o " +
                         dir.file("out.csv").string());
    CHECK(result.exit_code == 1);
    CHECK(result.err.find("file not found") != std::string::npos);
}

TEST_CASE("ingest --lenient reports rejected rows") {
    TempDir dir("cli");
    testutil::write_file(dir.file("raw.csv"),
                         "id,title,artist,year,valence,energy,tempo,danceability,"
                         "liveness,loudness,popularity\n"
                         "a,Alpha,Band,2015,0.5,0.6,120,0.4,0.1,-7.0,50\n"
                         "b,Beta,Band,2016,1.3,0.2,90,0.7,0.2,-10.5,70\n");
    const auto result = run_cli(
        dir, "ingest --lenient -i " + dir.file("raw.csv").string() + " -o " +
                 dir.file("out.csv").string());
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("loaded 1, removed 0 duplicates, rejected 1") !=
          std::string::npos);
}

TEST_CASE("stats reports per-feature mean and std as JSON") {
    TempDir dir("cli");
    write_raw_catalog(dir, "raw.csv");
    run_cli(dir, "ingest -i " + dir.file("raw.csv").string() + " -o " +
                     dir.file("catalog.csv").string());

    const auto result =
        run_cli(dir, "stats -c " + dir.file("catalog.csv").string());
    CHECK(result.exit_code == 0);

    const auto doc = nlohmann::json::parse(result.out);
    CHECK(doc["count"] == 13);
    for (const auto name : kFeatureNames) {
        CHECK(doc.contains(name));
        CHECK(doc[std::string(name)].contains("mean"));
        CHECK(doc[std::string(name)].contains("std"));
    }
}

TEST_CASE("recommend writes a playlist and honors exit-code contracts") {
    TempDir dir("cli");
    write_raw_catalog(dir, "raw.csv");
    run_cli(dir, "ingest -i " + dir.file("raw.csv").string() + " -o " +
                     dir.file("catalog.csv").string());
    const std::string catalog_arg = " -c " + dir.file("catalog.csv").string();

    SUBCASE("three seeds, defaults, playlist JSON on stdout") {
        const auto result =
            run_cli(dir, "recommend" + catalog_arg + " -s s1,s2,s3 -k 5 -v");
        CHECK(result.exit_code == 0);
        const Playlist playlist = playlist_from_json(result.out);
        CHECK(playlist.items.size() == 5);
        CHECK(playlist.request.k == 5);
        CHECK(result.err.find("playlist: 5 items") != std::string::npos);
    }

    SUBCASE("--out file round-trips") {
        const auto out_file = dir.file("playlist.json");
        const auto result = run_cli(dir, "recommend" + catalog_arg +
                                             " -s s1,s2,s3 -k 5 -o " +
                                             out_file.string());
        CHECK(result.exit_code == 0);
        const std::string text = testutil::read_file(out_file);
        const Playlist playlist = playlist_from_json(text);
        CHECK(playlist_to_json(playlist) + "\n" == text);
    }

    SUBCASE("unknown seed exits 2") {
        const auto result = run_cli(dir, "recommend" + catalog_arg + " -s ghost");
        CHECK(result.exit_code == 2);
        CHECK(result.err.find("seed track not found") != std::string::npos);
    }

    SUBCASE("draining quadrant filter exits 3 and is named") {
        // Identical features put every track in Q1, so Q4 drains the pool.
        write_catalog_csv(Catalog({make_track("s1"), make_track("a"),
                                   make_track("b")}),
                          dir.file("flat.csv"));
        const auto result = run_cli(
            dir, "recommend -c " + dir.file("flat.csv").string() +
                     " -s s1 -k 1 --pool 1 --quadrant Q4 --no-year-window");
        CHECK(result.exit_code == 3);
        CHECK(result.err.find("quadrant filter") != std::string::npos);
    }

    SUBCASE("seeds file is accepted") {
        testutil::write_file(dir.file("seeds.txt"), "s1\ns2\n\ns3\n");
        const auto result =
            run_cli(dir, "recommend" + catalog_arg + " --seeds-file " +
                             dir.file("seeds.txt").string() + " -k 3");
        CHECK(result.exit_code == 0);
        const Playlist playlist = playlist_from_json(result.out);
        CHECK(playlist.request.seed_ids.size() == 3);
    }

    SUBCASE("personality files with the default map leave output unchanged") {
        testutil::write_file(dir.file("profile.json"),
                             R"({"extroversion":0.8,"openness":0.4})");
        const auto plain =
            run_cli(dir, "recommend" + catalog_arg + " -s s1,s2,s3 -k 5");
        const auto weighted =
            run_cli(dir, "recommend" + catalog_arg + " -s s1,s2,s3 -k 5 " +
                             "--personality-file " + dir.file("profile.json").string());
        CHECK(plain.exit_code == 0);
        CHECK(weighted.exit_code == 0);
        CHECK(plain.out == weighted.out);
    }
}

TEST_CASE("config file supplies defaults that flags override") {
    TempDir dir("cli");
    write_raw_catalog(dir, "raw.csv");
    run_cli(dir, "ingest -i " + dir.file("raw.csv").string() + " -o " +
                     dir.file("catalog.csv").string());
    testutil::write_file(dir.file("config.json"),
                         "{\"catalog\":\"" + dir.file("catalog.csv").string() +
                             "\",\"k\":3,\"pool_size\":8}");

    const auto result = run_cli(dir, "--config " + dir.file("config.json").string() +
                                         " recommend -s s1,s2,s3");
    CHECK(result.exit_code == 0);
    CHECK(playlist_from_json(result.out).items.size() == 3);

    const auto overridden =
        run_cli(dir, "--config " + dir.file("config.json").string() +
                         " recommend -s s1,s2,s3 -k 2");
    CHECK(playlist_from_json(overridden.out).items.size() == 2);
}

TEST_CASE("feedback and summary round trip") {
    TempDir dir("cli");
    const std::string store_arg = " --store " + dir.file("fb.jsonl").string();

    for (const char* args : {"--user alice --rating 2 --comment \"too old\"",
                             "--user bob --rating 3",
                             "--user carol --rating 3"}) {
        const auto result = run_cli(dir, "feedback" + store_arg + " " + args);
        CHECK(result.exit_code == 0);
    }

    SUBCASE("rating outside 1..5 exits 1") {
        const auto result =
            run_cli(dir, "feedback" + store_arg + " --user dave --rating 7");
        CHECK(result.exit_code == 1);
        CHECK(result.err.find("outside the 1-5 scale") != std::string::npos);
    }

    SUBCASE("summary matches the hand-computed mean") {
        const auto result = run_cli(
            dir, "summary" + store_arg + " --histogram " + dir.file("h.csv").string());
        CHECK(result.exit_code == 0);
        const auto doc = nlohmann::json::parse(result.out);
        CHECK(doc["count"] == 3);
        CHECK(doc["mean"].get<double>() ==
              doctest::Approx(8.0 / 3.0).epsilon(1e-12));
        CHECK(doc["histogram"]["3"] == 2);
        CHECK(testutil::read_file(dir.file("h.csv")) ==
              "rating,count\n1,0\n2,1\n3,2\n4,0\n5,0\n");
    }
}

TEST_CASE("feedback can lift the fingerprint from a playlist file") {
    TempDir dir("cli");
    write_raw_catalog(dir, "raw.csv");
    run_cli(dir, "ingest -i " + dir.file("raw.csv").string() + " -o " +
                     dir.file("catalog.csv").string());
    run_cli(dir, "recommend -c " + dir.file("catalog.csv").string() +
                     " -s s1,s2,s3 -k 3 -o " + dir.file("playlist.json").string());

    const auto result = run_cli(
        dir, "feedback --store " + dir.file("fb.jsonl").string() +
                 " --user alice --rating 4 --playlist " +
                 dir.file("playlist.json").string());
    CHECK(result.exit_code == 0);

    const Playlist playlist =
        playlist_from_json(testutil::read_file(dir.file("playlist.json")));
    const FeedbackStore store(dir.file("fb.jsonl"));
    const auto records = store.read_all();
    REQUIRE(records.size() == 1);
    CHECK(records[0].playlist_fingerprint == playlist.stats_fingerprint);
    CHECK(!records[0].playlist_fingerprint.empty());
}
