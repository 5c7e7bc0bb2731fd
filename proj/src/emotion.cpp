#include "moodrec/emotion.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include <json.hpp>

namespace moodrec {

std::string_view quadrant_code(Quadrant q) {
    switch (q) {
        case Quadrant::ExuberantHappy: return "Q1";
        case Quadrant::AnxiousAngry: return "Q2";
        case Quadrant::SadDepressed: return "Q3";
        case Quadrant::Calm: return "Q4";
    }
    return "Q1";
}

std::string_view quadrant_label(Quadrant q) {
    switch (q) {
        case Quadrant::ExuberantHappy: return "exuberant/happy";
        case Quadrant::AnxiousAngry: return "anxious/angry";
        case Quadrant::SadDepressed: return "sad/depressed";
        case Quadrant::Calm: return "calm";
    }
    return "exuberant/happy";
}

std::optional<Quadrant> parse_quadrant(std::string_view text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (lower == "q1" || lower == "exuberant" || lower == "happy")
        return Quadrant::ExuberantHappy;
    if (lower == "q2" || lower == "anxious" || lower == "angry")
        return Quadrant::AnxiousAngry;
    if (lower == "q3" || lower == "sad" || lower == "depressed")
        return Quadrant::SadDepressed;
    if (lower == "q4" || lower == "calm") return Quadrant::Calm;
    return std::nullopt;
}

Quadrant classify_quadrant(const MoodVector& v, Feature arousal_axis) {
    const bool valence_positive = v[Feature::Valence] >= 0.0;
    const bool arousal_positive = v[arousal_axis] >= 0.0;
    if (valence_positive && arousal_positive) return Quadrant::ExuberantHappy;
    if (!valence_positive && arousal_positive) return Quadrant::AnxiousAngry;
    if (!valence_positive && !arousal_positive) return Quadrant::SadDepressed;
    return Quadrant::Calm;
}

std::vector<TrackMood> filter_by_quadrant(const std::vector<TrackMood>& candidates,
                                          Quadrant target, Feature arousal_axis) {
    std::vector<TrackMood> out;
    for (const TrackMood& c : candidates)
        if (classify_quadrant(c.mood, arousal_axis) == target) out.push_back(c);
    return out;
}

double PersonalityProfile::trait(std::size_t index) const {
    switch (index) {
        case 0: return extroversion;
        case 1: return agreeableness;
        case 2: return consciousness;
        case 3: return neuroticism;
        case 4: return openness;
        default: return 0.0;
    }
}

WeightProfile weights_from_personality(const PersonalityProfile& profile,
                                       const TraitWeightMap& map) {
    WeightProfile weights;
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
        double w = map.baseline[f];
        for (std::size_t t = 0; t < kTraitCount; ++t)
            w += profile.trait(t) * map.matrix[t][f];
        weights.w[f] = std::max(0.0, w);
    }
    weights.validate();
    return weights;
}

namespace {

nlohmann::json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FileNotFoundError(path.string());
    try {
        nlohmann::json doc;
        in >> doc;
        return doc;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError("invalid JSON in " + path.string() + ": " + e.what());
    }
}

std::array<double, kFeatureCount> parse_weight_row(const nlohmann::json& arr,
                                                   const std::string& what) {
    if (!arr.is_array() || arr.size() != kFeatureCount)
        throw SchemaError(what + " must be an array of 6 numbers");
    std::array<double, kFeatureCount> out{};
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
        if (!arr[f].is_number()) throw SchemaError(what + " must be numeric");
        out[f] = arr[f].get<double>();
    }
    return out;
}

}  // namespace

PersonalityProfile load_personality_profile(const std::filesystem::path& path) {
    const nlohmann::json doc = load_json_file(path);
    if (!doc.is_object())
        throw SchemaError("personality profile must be a JSON object");

    PersonalityProfile profile;
    std::array<double*, kTraitCount> slots = {
        &profile.extroversion, &profile.agreeableness, &profile.consciousness,
        &profile.neuroticism, &profile.openness};
    for (std::size_t t = 0; t < kTraitCount; ++t) {
        const std::string name(kTraitNames[t]);
        if (!doc.contains(name)) continue;
        if (!doc[name].is_number())
            throw SchemaError("trait '" + name + "' must be numeric");
        const double v = doc[name].get<double>();
        if (v < 0.0 || v > 1.0)
            throw RangeError(name, doc[name].dump());
        *slots[t] = v;
    }
    return profile;
}

TraitWeightMap load_trait_weight_map(const std::filesystem::path& path) {
    const nlohmann::json doc = load_json_file(path);
    if (!doc.is_object())
        throw SchemaError("trait weight map must be a JSON object");

    TraitWeightMap map;
    if (doc.contains("baseline"))
        map.baseline = parse_weight_row(doc["baseline"], "baseline");
    if (doc.contains("matrix")) {
        const auto& matrix = doc["matrix"];
        if (!matrix.is_object())
            throw SchemaError("matrix must map trait names to 6-element arrays");
        for (const auto& [key, row] : matrix.items()) {
            const auto it =
                std::find(kTraitNames.begin(), kTraitNames.end(), key);
            if (it == kTraitNames.end())
                throw SchemaError("unknown trait in matrix: " + key);
            const auto t =
                static_cast<std::size_t>(it - kTraitNames.begin());
            map.matrix[t] = parse_weight_row(row, "matrix." + key);
        }
    }
    return map;
}

}  // namespace moodrec
