#pragma once

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "moodrec/catalog.hpp"

namespace testutil {

/// Valid track with sensible defaults; features overridable per test.
inline moodrec::Track make_track(std::string id, int year = 2015,
                                 int popularity = 50, double valence = 0.5,
                                 double energy = 0.5, double tempo = 120.0,
                                 double danceability = 0.5,
                                 double liveness = 0.1, double loudness = -7.0) {
    moodrec::Track t;
    t.id.value = std::move(id);
    t.title = "title " + t.id.value;
    t.artist = "artist " + t.id.value;
    t.year = year;
    t.valence = valence;
    t.energy = energy;
    t.tempo = tempo;
    t.danceability = danceability;
    t.liveness = liveness;
    t.loudness = loudness;
    t.popularity = popularity;
    return t;
}

inline moodrec::Catalog random_catalog(std::size_t n, std::mt19937& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> tempo(40.0, 220.0);
    std::uniform_real_distribution<double> loudness(-50.0, 0.0);
    std::uniform_int_distribution<int> year(1921, 2020);
    std::uniform_int_distribution<int> popularity(0, 100);

    std::vector<moodrec::Track> tracks;
    tracks.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        moodrec::Track t = make_track("r" + std::to_string(i), year(rng),
                                      popularity(rng), unit(rng), unit(rng),
                                      tempo(rng), unit(rng), unit(rng),
                                      loudness(rng));
        tracks.push_back(std::move(t));
    }
    return moodrec::Catalog(std::move(tracks));
}

/// Unique scratch directory, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static std::atomic<unsigned> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("moodrec_" + tag + "_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }

    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }

    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::filesystem::path file(const std::string& name) const {
        return path_ / name;
    }

    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& path,
                       const std::string& content) {
    std::ofstream out(path);
    out << content;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
}

}  // namespace testutil
