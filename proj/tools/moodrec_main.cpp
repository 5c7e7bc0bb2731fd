// moodrec command-line front end: ingest, stats, recommend, feedback, summary.
//
// Exit codes: 0 ok, 1 input/IO/validation failure, 2 seed resolution failure,
// 3 empty candidate pool.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "moodrec/catalog.hpp"
#include "moodrec/csv.hpp"
#include "moodrec/feedback.hpp"
#include "moodrec/recommend.hpp"

namespace fs = std::filesystem;
using namespace moodrec;

namespace {

struct CliConfig {
    std::string catalog;
    std::optional<std::size_t> k;
    std::optional<std::size_t> pool_size;
    std::optional<int> year_window;
    std::string weights_file;
    std::string personality_file;
    std::string output_dir;
};

CliConfig load_cli_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FileNotFoundError(path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError("invalid config JSON in " + path + ": " + e.what());
    }
    CliConfig config;
    config.catalog = doc.value("catalog", std::string{});
    if (doc.contains("k")) config.k = doc["k"].get<std::size_t>();
    if (doc.contains("pool_size"))
        config.pool_size = doc["pool_size"].get<std::size_t>();
    if (doc.contains("year_window"))
        config.year_window = doc["year_window"].get<int>();
    config.weights_file = doc.value("weights_file", std::string{});
    config.personality_file = doc.value("personality_file", std::string{});
    config.output_dir = doc.value("output_dir", std::string{});
    return config;
}

/// Relative output paths land in the configured output directory.
std::string resolve_out(const std::string& path, const CliConfig& config) {
    if (path.empty() || config.output_dir.empty()) return path;
    const fs::path p(path);
    if (p.is_absolute()) return path;
    return (fs::path(config.output_dir) / p).string();
}

CatalogFormat pick_format(const std::string& flag, const fs::path& path) {
    if (flag == "csv") return CatalogFormat::Csv;
    if (flag == "json") return CatalogFormat::Json;
    return format_from_extension(path);
}

void write_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw StoreIOError("cannot open for writing: " + out_path);
    out << text;
    if (!out) throw StoreIOError("write failed: " + out_path);
}

int run_ingest(const std::string& input, const std::string& format_flag,
               bool lenient, const std::string& out_path) {
    const LoadReport report =
        load_catalog(input, pick_format(format_flag, input), LoadOptions{lenient});
    const Catalog deduped = dedupe(report.catalog);
    write_catalog_csv(deduped, out_path);
    std::cout << "loaded " << report.catalog.size() << ", removed "
              << (report.catalog.size() - deduped.size())
              << " duplicates, rejected " << report.rejected << '\n';
    return 0;
}

int run_stats(const std::string& catalog_path, const std::string& format_flag,
              const std::string& out_path) {
    const LoadReport report =
        load_catalog(catalog_path, pick_format(format_flag, catalog_path));
    const FeatureStats stats = compute_stats(report.catalog);
    write_text(stats_to_json(stats) + "\n", out_path);
    return 0;
}

WeightProfile resolve_weights(const std::string& weights_file,
                              const std::string& personality_file) {
    if (weights_file.empty() && personality_file.empty()) return WeightProfile{};
    TraitWeightMap map;
    if (!weights_file.empty()) map = load_trait_weight_map(weights_file);
    PersonalityProfile profile;
    if (!personality_file.empty())
        profile = load_personality_profile(personality_file);
    return weights_from_personality(profile, map);
}

std::vector<TrackId> resolve_seeds(const std::vector<std::string>& seeds,
                                   const std::string& seeds_file) {
    std::vector<TrackId> ids;
    for (const std::string& seed : seeds) ids.push_back(TrackId{seed});
    if (!seeds_file.empty()) {
        std::ifstream in(seeds_file);
        if (!in) throw FileNotFoundError(seeds_file);
        std::string line;
        while (std::getline(in, line)) {
            std::string trimmed = csv::trim(line);
            if (!trimmed.empty()) ids.push_back(TrackId{std::move(trimmed)});
        }
    }
    if (ids.empty()) throw EmptySeedListError();
    return ids;
}

int run_recommend(const std::string& catalog_path, const std::string& format_flag,
                  const RecommendRequest& request, const std::string& out_path,
                  bool verbose) {
    const LoadReport report =
        load_catalog(catalog_path, pick_format(format_flag, catalog_path));
    const Playlist playlist = recommend(request, report.catalog);
    write_text(playlist_to_json(playlist) + "\n", out_path);
    if (verbose) std::cerr << explain(playlist);
    return 0;
}

int run_feedback(const std::string& store_path, const std::string& user,
                 int rating, const std::string& comment,
                 const std::string& fingerprint,
                 const std::string& playlist_path) {
    FeedbackRecord record;
    record.user = user;
    record.rating = rating;
    record.comment = comment;
    record.recorded_at = now_iso8601_utc();
    record.playlist_fingerprint = fingerprint;
    if (!playlist_path.empty()) {
        std::ifstream in(playlist_path);
        if (!in) throw FileNotFoundError(playlist_path);
        std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
        record.playlist_fingerprint =
            playlist_from_json(text).stats_fingerprint;
    }
    FeedbackStore store{fs::path(store_path)};
    store.append(record);
    std::cout << "recorded rating " << rating << " from " << user << '\n';
    return 0;
}

int run_summary(const std::string& store_path, const std::string& out_path,
                const std::string& histogram_path) {
    const FeedbackStore store{fs::path(store_path)};
    const FeedbackSummary summary = store.summarize();
    write_text(summary_to_json(summary) + "\n", out_path);
    if (!histogram_path.empty()) emit_histogram(summary, histogram_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"moodrec - offline mood-vector music recommender"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path,
                   "JSON config with defaults (catalog, k, pool_size, "
                   "year_window, weights_file, personality_file, output_dir)");

    // ingest
    auto* ingest = app.add_subcommand(
        "ingest", "Validate, deduplicate, and normalize a raw catalog file");
    std::string in_input, in_format = "auto", in_out;
    bool in_lenient = false;
    ingest->add_option("-i,--input", in_input, "raw catalog file")->required();
    ingest->add_option("--format", in_format, "csv|json (default: by extension)");
    ingest->add_flag("--lenient", in_lenient,
                     "skip invalid rows instead of failing the file");
    ingest->add_option("-o,--out", in_out, "normalized catalog CSV")->required();

    // stats
    auto* stats = app.add_subcommand(
        "stats", "Per-feature mean/std of a catalog, as JSON");
    std::string st_catalog, st_format = "auto", st_out;
    stats->add_option("-c,--catalog", st_catalog, "catalog file");
    stats->add_option("--format", st_format, "csv|json (default: by extension)");
    stats->add_option("-o,--out", st_out, "output file (default: stdout)");

    // recommend
    auto* rec = app.add_subcommand(
        "recommend", "Generate a playlist from seed track ids");
    std::string rc_catalog, rc_format = "auto", rc_out, rc_seeds_file;
    std::string rc_quadrant, rc_weights_file, rc_personality_file;
    std::vector<std::string> rc_seeds;
    std::size_t rc_k = 0, rc_pool = 0;
    int rc_year_window = -1;
    bool rc_no_year_window = false, rc_verbose = false;
    rec->add_option("-c,--catalog", rc_catalog, "catalog file");
    rec->add_option("--format", rc_format, "csv|json (default: by extension)");
    rec->add_option("-s,--seeds", rc_seeds, "comma-separated seed track ids")
        ->delimiter(',');
    rec->add_option("--seeds-file", rc_seeds_file, "file with one seed id per line");
    auto* opt_k = rec->add_option("-k,--k", rc_k, "playlist length (default 9)");
    auto* opt_pool =
        rec->add_option("--pool", rc_pool, "distance pool size (default 30)");
    auto* opt_window = rec->add_option("--year-window", rc_year_window,
                                       "recency window in years (default 8)");
    rec->add_flag("--no-year-window", rc_no_year_window,
                  "disable the recency filter");
    rec->add_option("--quadrant", rc_quadrant,
                    "target emotion quadrant (Q1..Q4 or a label like calm)");
    rec->add_option("--weights-file", rc_weights_file,
                    "trait weight map JSON ({\"baseline\":[..6..],\"matrix\":{..}})");
    rec->add_option("--personality-file", rc_personality_file,
                    "personality profile JSON ({\"extroversion\":0.7,...})");
    rec->add_option("-o,--out", rc_out, "playlist JSON file (default: stdout)");
    rec->add_flag("-v,--verbose", rc_verbose, "print the explain report to stderr");

    // feedback
    auto* fb = app.add_subcommand("feedback", "Record a 1-5 playlist rating");
    std::string fb_store, fb_user, fb_comment, fb_fingerprint, fb_playlist;
    int fb_rating = 0;
    fb->add_option("--store", fb_store, "feedback JSON-lines file")->required();
    fb->add_option("--user", fb_user, "rater name")->required();
    fb->add_option("--rating", fb_rating, "rating, 1 (very poor) to 5 (very good)")
        ->required();
    fb->add_option("--comment", fb_comment, "free-text comment");
    fb->add_option("--fingerprint", fb_fingerprint, "playlist stats fingerprint");
    fb->add_option("--playlist", fb_playlist,
                   "playlist JSON to take the fingerprint from");

    // summary
    auto* sum = app.add_subcommand(
        "summary", "Aggregate feedback: count, mean, rating histogram");
    std::string sm_store, sm_out, sm_histogram;
    sum->add_option("--store", sm_store, "feedback JSON-lines file")->required();
    sum->add_option("-o,--out", sm_out, "summary JSON file (default: stdout)");
    sum->add_option("--histogram", sm_histogram, "write rating,count CSV here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        CliConfig config;
        if (!config_path.empty()) config = load_cli_config(config_path);

        if (ingest->parsed())
            return run_ingest(in_input, in_format, in_lenient,
                              resolve_out(in_out, config));

        if (stats->parsed()) {
            if (st_catalog.empty()) st_catalog = config.catalog;
            if (st_catalog.empty())
                throw Error("no catalog given (use --catalog or a config file)");
            return run_stats(st_catalog, st_format, resolve_out(st_out, config));
        }

        if (rec->parsed()) {
            if (rc_catalog.empty()) rc_catalog = config.catalog;
            if (rc_catalog.empty())
                throw Error("no catalog given (use --catalog or a config file)");
            if (rc_weights_file.empty()) rc_weights_file = config.weights_file;
            if (rc_personality_file.empty())
                rc_personality_file = config.personality_file;

            RecommendRequest request;
            request.seed_ids = resolve_seeds(rc_seeds, rc_seeds_file);
            if (opt_k->count() > 0)
                request.k = rc_k;
            else if (config.k)
                request.k = *config.k;
            if (opt_pool->count() > 0)
                request.pool_size = rc_pool;
            else if (config.pool_size)
                request.pool_size = *config.pool_size;
            if (rc_no_year_window)
                request.year_window.reset();
            else if (opt_window->count() > 0)
                request.year_window = rc_year_window;
            else if (config.year_window)
                request.year_window = *config.year_window;
            if (!rc_quadrant.empty()) {
                const auto quadrant = parse_quadrant(rc_quadrant);
                if (!quadrant)
                    throw Error("unknown quadrant: " + rc_quadrant +
                                " (expected Q1..Q4)");
                request.target_quadrant = *quadrant;
            }
            request.weights =
                resolve_weights(rc_weights_file, rc_personality_file);
            return run_recommend(rc_catalog, rc_format, request,
                                 resolve_out(rc_out, config), rc_verbose);
        }

        if (fb->parsed())
            return run_feedback(fb_store, fb_user, fb_rating, fb_comment,
                                fb_fingerprint, fb_playlist);

        if (sum->parsed())
            return run_summary(sm_store, resolve_out(sm_out, config),
                               resolve_out(sm_histogram, config));
    } catch (const SeedNotFoundError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const NoCandidatesError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
