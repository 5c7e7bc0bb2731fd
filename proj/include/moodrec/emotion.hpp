#pragma once

#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "moodrec/similarity.hpp"

namespace moodrec {

/// Thayer-plane quadrant by (valence sign, arousal sign):
/// Q1 (+,+) exuberant/happy, Q2 (-,+) anxious/angry,
/// Q3 (-,-) sad/depressed,   Q4 (+,-) calm.
enum class Quadrant {
    ExuberantHappy,
    AnxiousAngry,
    SadDepressed,
    Calm,
};

std::string_view quadrant_code(Quadrant q);   // "Q1".."Q4"
std::string_view quadrant_label(Quadrant q);  // "exuberant/happy", ...

/// Accepts "Q1".."Q4" (any case) or a label word like "calm".
std::optional<Quadrant> parse_quadrant(std::string_view text);

/// Valence axis is standardized valence; the arousal axis defaults to
/// standardized energy (tempo is the supported alternative). Zero counts
/// as '+' on both axes.
Quadrant classify_quadrant(const MoodVector& v,
                           Feature arousal_axis = Feature::Energy);

/// Keeps exactly the candidates classified into `target`, order preserved.
std::vector<TrackMood> filter_by_quadrant(const std::vector<TrackMood>& candidates,
                                          Quadrant target,
                                          Feature arousal_axis = Feature::Energy);

inline constexpr std::size_t kTraitCount = 5;

inline constexpr std::array<std::string_view, kTraitCount> kTraitNames = {
    "extroversion", "agreeableness", "consciousness", "neuroticism", "openness"};

/// Big Five trait scores, each in [0, 1].
struct PersonalityProfile {
    double extroversion = 0.0;
    double agreeableness = 0.0;
    double consciousness = 0.0;
    double neuroticism = 0.0;
    double openness = 0.0;

    double trait(std::size_t index) const;
};

/// Affine trait-to-feature-weight map. The default (all-ones baseline, zero
/// matrix) yields all-ones weights for every profile, i.e. the unweighted
/// distance.
struct TraitWeightMap {
    std::array<double, kFeatureCount> baseline{1.0, 1.0, 1.0, 1.0, 1.0, 1.0};
    std::array<std::array<double, kFeatureCount>, kTraitCount> matrix{};
};

/// w_f = max(0, baseline_f + sum_t profile_t * matrix[t][f]).
/// Throws DegenerateWeightsError when every w_f comes out zero.
WeightProfile weights_from_personality(const PersonalityProfile& profile,
                                       const TraitWeightMap& map);

/// {"extroversion":0.7, ...} — absent traits default to 0.
PersonalityProfile load_personality_profile(const std::filesystem::path& path);

/// {"baseline":[...6...], "matrix":{"extroversion":[...6...], ...}} —
/// absent parts keep their defaults.
TraitWeightMap load_trait_weight_map(const std::filesystem::path& path);

}  // namespace moodrec
