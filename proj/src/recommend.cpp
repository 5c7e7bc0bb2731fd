#include "moodrec/recommend.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "moodrec/csv.hpp"

namespace moodrec {

std::vector<Recommendation> popularity_rerank(const std::vector<Neighbor>& pool,
                                              const Catalog& catalog,
                                              std::size_t k) {
    struct Entry {
        const Track* track;
        double distance;
    };
    std::vector<Entry> entries;
    entries.reserve(pool.size());
    for (const Neighbor& n : pool) {
        const Track* track = catalog.find(n.id);
        if (!track) throw UnknownIdError(n.id.value);
        entries.push_back(Entry{track, n.distance});
    }

    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.track->popularity != b.track->popularity)
            return a.track->popularity > b.track->popularity;
        if (a.distance != b.distance) return a.distance < b.distance;
        return a.track->id < b.track->id;
    });
    if (entries.size() > k) entries.resize(k);

    std::vector<Recommendation> out;
    out.reserve(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        Recommendation rec;
        rec.track = *entries[i].track;
        rec.distance = entries[i].distance;
        rec.rank = static_cast<int>(i) + 1;
        out.push_back(std::move(rec));
    }
    return out;
}

Playlist recommend(const RecommendRequest& request, const Catalog& catalog) {
    if (request.seed_ids.empty()) throw EmptySeedListError();
    if (request.k == 0) throw Error("k must be at least 1");
    if (request.pool_size < request.k)
        throw Error("pool_size must be at least k");
    if (request.year_window && *request.year_window < 1)
        throw Error("year_window must be at least 1");
    request.weights.validate();

    std::vector<const Track*> seeds;
    seeds.reserve(request.seed_ids.size());
    for (const TrackId& id : request.seed_ids) {
        const Track* track = catalog.find(id);
        if (!track) throw SeedNotFoundError(id.value);
        seeds.push_back(track);
    }

    const FeatureStats stats = compute_stats(catalog);
    const std::vector<TrackMood> moods = z_transform_all(catalog, stats);

    std::vector<MoodVector> seed_moods;
    seed_moods.reserve(seeds.size());
    for (const Track* seed : seeds)
        seed_moods.push_back(z_transform(*seed, stats));
    const MoodVector centroid = seed_centroid(seed_moods);

    std::optional<int> min_year;
    if (request.year_window) {
        int max_seed_year = seeds.front()->year;
        for (const Track* seed : seeds)
            max_seed_year = std::max(max_seed_year, seed->year);
        min_year = max_seed_year - *request.year_window;
    }

    // Filters shrink the candidate universe before the scan so the pool is
    // not drained below k afterwards. Stage accounting counts non-seed
    // tracks: seeds pass through here but are never eligible results, so a
    // stage that leaves only seeds is the one that emptied the pool.
    const std::unordered_set<TrackId> exclude(request.seed_ids.begin(),
                                              request.seed_ids.end());
    const auto& tracks = catalog.tracks();
    std::vector<Candidate> candidates;
    candidates.reserve(tracks.size());
    std::size_t eligible = 0, eligible_after_year = 0, eligible_after_quadrant = 0;
    for (std::size_t i = 0; i < tracks.size(); ++i) {
        const bool is_seed = exclude.contains(tracks[i].id);
        if (!is_seed) ++eligible;
        if (min_year && tracks[i].year < *min_year) continue;
        if (!is_seed) ++eligible_after_year;
        if (request.target_quadrant &&
            classify_quadrant(moods[i].mood) != *request.target_quadrant)
            continue;
        if (!is_seed) ++eligible_after_quadrant;
        candidates.push_back(
            Candidate{tracks[i].id, moods[i].mood, tracks[i].popularity});
    }
    if (eligible == 0) throw NoCandidatesError("seed exclusion");
    if (eligible_after_year == 0) throw NoCandidatesError("year-window filter");
    if (eligible_after_quadrant == 0) throw NoCandidatesError("quadrant filter");

    const std::vector<Neighbor> pool = nearest(
        candidates, centroid, request.pool_size, request.weights, exclude);

    Playlist playlist;
    playlist.request = request;
    playlist.items = popularity_rerank(pool, catalog, request.k);
    playlist.generated_at = std::chrono::system_clock::now();
    playlist.stats_fingerprint = stats_fingerprint(stats);
    playlist.min_year = min_year;
    for (Recommendation& item : playlist.items)
        item.quadrant = classify_quadrant(z_transform(item.track, stats));
    return playlist;
}

std::string explain(const Playlist& playlist) {
    std::ostringstream out;
    out << "playlist: " << playlist.items.size() << " items (k="
        << playlist.request.k << ", pool=" << playlist.request.pool_size
        << "), stats fingerprint " << playlist.stats_fingerprint << '\n';

    out << "filters: ";
    bool any_filter = false;
    if (playlist.min_year) {
        out << "year >= " << *playlist.min_year;
        if (playlist.request.year_window)
            out << " (window " << *playlist.request.year_window << ")";
        any_filter = true;
    }
    if (playlist.request.target_quadrant) {
        if (any_filter) out << ", ";
        out << "quadrant " << quadrant_code(*playlist.request.target_quadrant)
            << " (" << quadrant_label(*playlist.request.target_quadrant) << ")";
        any_filter = true;
    }
    if (!any_filter) out << "none";
    out << '\n';

    for (const Recommendation& item : playlist.items) {
        out << "rank " << item.rank << ": " << item.track.id.value << " \""
            << item.track.title << "\" by " << item.track.artist << " ("
            << item.track.year << ") popularity=" << item.track.popularity
            << " distance=" << csv::format_double(item.distance)
            << " quadrant=" << quadrant_code(item.quadrant);
        if (item.distance == 0.0) out << " [feature-identical to seed centroid]";
        out << '\n';
    }

    if (playlist.items.size() < playlist.request.k) {
        out << "note: " << (playlist.request.k - playlist.items.size())
            << " fewer items than requested; the filtered pool was short\n";
    }
    return out.str();
}

std::string playlist_to_json(const Playlist& playlist) {
    nlohmann::ordered_json doc;
    auto& seeds = doc["seeds"] = nlohmann::ordered_json::array();
    for (const TrackId& id : playlist.request.seed_ids)
        seeds.push_back(id.value);
    doc["k"] = playlist.request.k;
    auto& items = doc["items"] = nlohmann::ordered_json::array();
    for (const Recommendation& item : playlist.items) {
        nlohmann::ordered_json entry;
        entry["rank"] = item.rank;
        entry["id"] = item.track.id.value;
        entry["title"] = item.track.title;
        entry["artist"] = item.track.artist;
        entry["year"] = item.track.year;
        entry["popularity"] = item.track.popularity;
        entry["distance"] = item.distance;
        entry["quadrant"] = quadrant_code(item.quadrant);
        items.push_back(std::move(entry));
    }
    doc["stats_fingerprint"] = playlist.stats_fingerprint;
    return doc.dump();
}

Playlist playlist_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("invalid playlist JSON: ") + e.what());
    }

    try {
        Playlist playlist;
        for (const auto& seed : doc.at("seeds"))
            playlist.request.seed_ids.push_back(TrackId{seed.get<std::string>()});
        playlist.request.k = doc.at("k").get<std::size_t>();
        playlist.stats_fingerprint =
            doc.at("stats_fingerprint").get<std::string>();
        for (const auto& entry : doc.at("items")) {
            Recommendation item;
            item.rank = entry.at("rank").get<int>();
            item.track.id.value = entry.at("id").get<std::string>();
            item.track.title = entry.at("title").get<std::string>();
            item.track.artist = entry.at("artist").get<std::string>();
            item.track.year = entry.at("year").get<int>();
            item.track.popularity = entry.at("popularity").get<int>();
            item.distance = entry.at("distance").get<double>();
            const auto quadrant =
                parse_quadrant(entry.at("quadrant").get<std::string>());
            if (!quadrant) throw SchemaError("unknown quadrant code");
            item.quadrant = *quadrant;
            playlist.items.push_back(std::move(item));
        }
        return playlist;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("playlist JSON missing fields: ") +
                          e.what());
    }
}

}  // namespace moodrec
