#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ola/hypothesis.hpp"
#include "ola/stream.hpp"
#include "ola/version_space.hpp"

namespace ola {

/// Fully resolved experiment description; together with a seed it determines a run.
///
/// The on-disk form is JSON with nested blocks: hypothesis, stream, noise,
/// learner, horizon, ola, threshold, cbgz, a2, analysis, plus top-level
/// `preset`, `seed` / `seeds` and `out`. A `preset` supplies defaults which
/// the remaining keys override.
struct ExperimentConfig {
    std::string preset;

    HypothesisClass hypothesis_class = HypothesisClass::threshold();
    std::size_t resolution = 201;
    std::vector<double> bayes_params{0.5};

    InstanceDistribution distribution = InstanceDistribution::cube(1);
    NoiseModel noise = NoiseModel::massart();

    std::vector<std::string> learners{"ola"};

    std::uint64_t horizon = 10000;
    bool unknown_horizon = false;

    double m = 4.0;
    bool beta_squared_radicals = false;

    double cbgz_b = 1.0;
    std::size_t a2_n_mc = 4000;

    std::size_t n_mc = 100000;
    std::vector<double> r_grid;

    std::vector<std::uint64_t> seeds{1};
    std::string out;

    [[nodiscard]] ThresholdRule threshold_rule() const {
        return beta_squared_radicals ? ThresholdRule::SquaredRadicals : ThresholdRule::Linear;
    }
};

/// Learner kinds accepted by learner.kind.
[[nodiscard]] const std::vector<std::string>& learner_kinds();

/// Names of the built-in presets (fig1 ... fig5, realizable).
[[nodiscard]] std::vector<std::string> preset_names();

/// Preset defaults as JSON. Throws ConfigError for unknown names.
[[nodiscard]] nlohmann::json preset_json(std::string_view name);

/// Expands `preset`, applies overrides and fills defaults. The result holds
/// every key, so it can be re-parsed or edited key by key.
[[nodiscard]] nlohmann::json resolve_config_json(const nlohmann::json& raw);

/// Parses (and validates) a config. Throws ConfigError with the offending key.
[[nodiscard]] ExperimentConfig parse_config(const nlohmann::json& raw);
[[nodiscard]] ExperimentConfig load_config(const std::string& path);

/// Canonical JSON form of a parsed config.
[[nodiscard]] nlohmann::json to_json(const ExperimentConfig& config);

/// 16 hex digits identifying the canonical config.
[[nodiscard]] std::string fingerprint(const ExperimentConfig& config);

/// Sets a dotted key (e.g. "horizon.T") to a number. Throws ConfigError when
/// the key is missing or not numeric in `resolved`.
void set_numeric_key(nlohmann::json& resolved, std::string_view dotted_key, double value);

}  // namespace ola
