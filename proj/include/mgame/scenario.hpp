#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mgame/engagement.hpp"
#include "mgame/games.hpp"

namespace mgame {

enum class ModelKind { example1, example2, example3, engagement_perfect, engagement_imperfect };

std::string_view to_string(ModelKind model);

inline bool is_engagement(ModelKind m) {
    return m == ModelKind::engagement_perfect || m == ModelKind::engagement_imperfect;
}

/// Flat `key = value` scenario text. Parsing checks every key against the
/// model it is used with, so a loaded file is always convertible.
class ScenarioFile {
public:
    using Value = std::variant<double, std::uint64_t, std::string>;

    /// Throws ScenarioError carrying the offending line number.
    static ScenarioFile parse(std::string_view text);
    static ScenarioFile load(const std::filesystem::path& path);

    ModelKind model() const { return model_; }
    bool has(const std::string& key) const { return values_.count(key) != 0; }
    double number(const std::string& key, double fallback) const;
    std::optional<std::string> word(const std::string& key) const;
    std::uint64_t seed() const;

    /// True when `key` takes a real value under this scenario's model.
    bool is_numeric_key(const std::string& key) const;

    /// Copy with `key` set to `value`; throws ScenarioError when the key is not
    /// a numeric key of this model or the value is invalid for it.
    ScenarioFile with(const std::string& key, double value) const;

    /// Keys that must be present for `model`.
    static std::vector<std::string> required_keys(ModelKind model);

private:
    ModelKind model_ = ModelKind::example2;
    std::map<std::string, Value> values_;
};

GameScenario to_game_scenario(const ScenarioFile& file);
EngagementParams to_engagement_params(const ScenarioFile& file);
GameModel to_game_model(ModelKind model);

}  // namespace mgame
