#include "ola/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <fmt/format.h>

#include "ola/error.hpp"

namespace ola {

namespace {

using nlohmann::json;

// Presets fix the per-epoch label budget M = ceil(m d ln T) near 6450 at
// T = 1e4, i.e. m = 700 / d. See README "Choosing m".
constexpr double kBudgetM = 700.0;

json common_defaults() {
    return {
        {"preset", ""},
        {"learner", {{"kind", json::array({"ola"})}}},
        {"horizon", {{"T", 10000}, {"unknown", false}}},
        {"threshold", {{"beta_squared_radicals", false}}},
        {"cbgz", {{"b", 1.0}}},
        {"a2", {{"n_mc", 4000}}},
        {"analysis", {{"n_mc", 100000}, {"r_grid", json::array({0.0009765625, 0.001953125, 0.00390625, 0.0078125,
                                                                 0.015625, 0.03125, 0.0625, 0.125, 0.25, 0.5, 1.0})}}},
        {"seeds", json::array({1})},
        {"out", ""},
    };
}

json massart_block(double high, double low) {
    return {{"kind", "massart"}, {"eta_high", high}, {"eta_low", low}, {"u", json::array()}};
}

json cube_block(int dim) { return {{"distribution", "uniform_cube"}, {"dim", dim}}; }

}  // namespace

const std::vector<std::string>& learner_kinds() {
    static const std::vector<std::string> kinds{"ola", "cal", "a2", "dhm", "cbgz"};
    return kinds;
}

std::vector<std::string> preset_names() { return {"fig1", "fig2", "fig3", "fig4", "fig5", "realizable"}; }

json preset_json(std::string_view name) {
    json p;
    if (name == "fig1") {
        p["hypothesis"] = {{"kind", "threshold1d"}, {"resolution", 201}, {"bayes", {0.5}}};
        p["stream"] = cube_block(1);
        p["noise"] = massart_block(0.75, 0.25);
        p["learner"] = {{"kind", {"ola", "a2", "dhm"}}};
        p["ola"] = {{"m", kBudgetM}};
    } else if (name == "fig2") {
        p["hypothesis"] = {{"kind", "interval1d"}, {"resolution", 101}, {"bayes", {0.25, 0.75}}};
        p["stream"] = cube_block(1);
        p["noise"] = massart_block(0.75, 0.25);
        p["learner"] = {{"kind", {"ola", "a2", "dhm"}}};
        p["ola"] = {{"m", kBudgetM / 2}};
    } else if (name == "fig3") {
        // 21 points per axis already gives (21*22/2)^2 = 53,361 boxes.
        p["hypothesis"] = {{"kind", "box2d"}, {"resolution", 21}, {"bayes", {0.15, 0.85, 0.15, 0.85}}};
        p["stream"] = cube_block(2);
        p["noise"] = massart_block(0.75, 0.25);
        p["learner"] = {{"kind", {"ola", "a2", "dhm"}}};
        p["ola"] = {{"m", 233}};
    } else if (name == "fig4" || name == "fig5") {
        p["hypothesis"] = {{"kind", "halfspace"}, {"resolution", 256}, {"bayes", {1.0, 0.0}}};
        p["stream"] = {{"distribution", "uniform_sphere"}, {"dim", 2}};
        p["noise"] = {{"kind", "linear_sphere"}, {"eta_high", 0.75}, {"eta_low", 0.25}, {"u", {1.0, 0.0}}};
        p["learner"] = {{"kind", {"ola", "cbgz"}}};
        p["ola"] = {{"m", kBudgetM / 2}};
    } else if (name == "realizable") {
        p["hypothesis"] = {{"kind", "threshold1d"}, {"resolution", 201}, {"bayes", {0.5}}};
        p["stream"] = cube_block(1);
        p["noise"] = massart_block(1.0, 0.0);
        p["learner"] = {{"kind", {"ola", "cal", "dhm"}}};
        p["ola"] = {{"m", kBudgetM}};
    } else {
        throw ConfigError(fmt::format("unknown preset '{}'", name));
    }
    p["preset"] = std::string(name);
    return p;
}

json resolve_config_json(const json& raw) {
    if (!raw.is_object()) throw ConfigError("config must be a JSON object");
    json resolved = common_defaults();
    if (raw.contains("preset") && raw["preset"].is_string() && !raw["preset"].get<std::string>().empty()) {
        resolved.merge_patch(preset_json(raw["preset"].get<std::string>()));
    }
    json overrides = raw;
    // `seed` is shorthand for a single-element `seeds`.
    if (overrides.contains("seed")) {
        if (!overrides.contains("seeds")) overrides["seeds"] = json::array({overrides["seed"]});
        overrides.erase("seed");
    }
    // A bare string learner.kind means a single learner.
    if (overrides.contains("learner") && overrides["learner"].is_object() && overrides["learner"].contains("kind") &&
        overrides["learner"]["kind"].is_string()) {
        overrides["learner"]["kind"] = json::array({overrides["learner"]["kind"]});
    }
    resolved.merge_patch(overrides);
    if (resolved.contains("seeds") && resolved["seeds"].is_number_integer()) {
        const auto count = resolved["seeds"].get<std::int64_t>();
        if (count < 1) throw ConfigError("seeds count must be >= 1");
        json list = json::array();
        for (std::int64_t s = 1; s <= count; ++s) list.push_back(s);
        resolved["seeds"] = list;
    }
    if (!resolved.contains("ola") || !resolved["ola"].is_object() || !resolved["ola"].contains("m")) {
        // Same budget rule as the presets, m = 700 / d.
        int d = 1;
        try {
            const auto kind = parse_hypothesis_kind(resolved.at("hypothesis").at("kind").get<std::string>());
            d = kind == HypothesisKind::HomogeneousHalfspace ? resolved.at("stream").at("dim").get<int>()
                                                              : HypothesisClass{kind, 1}.vc_dimension();
        } catch (const json::exception&) {
            // parse_config reports the missing or malformed key.
        }
        resolved["ola"]["m"] = std::round(kBudgetM / std::max(d, 1));
    }
    return resolved;
}

namespace {

const json& at(const json& j, std::string_view block, std::string_view key) {
    const std::string b(block);
    const std::string k(key);
    if (!j.contains(b) || !j[b].is_object() || !j[b].contains(k)) {
        throw ConfigError(fmt::format("missing config key '{}.{}'", block, key));
    }
    return j[b][k];
}

template <typename T>
T get_as(const json& value, std::string_view name) {
    try {
        return value.get<T>();
    } catch (const json::exception&) {
        throw ConfigError(fmt::format("config key '{}' has the wrong type: {}", name, value.dump()));
    }
}

double get_number(const json& j, std::string_view block, std::string_view key) {
    const auto& v = at(j, block, key);
    if (!v.is_number()) throw ConfigError(fmt::format("config key '{}.{}' must be a number", block, key));
    return v.get<double>();
}

std::uint64_t get_positive_int(const json& j, std::string_view block, std::string_view key) {
    const double v = get_number(j, block, key);
    if (v < 1.0 || v != std::floor(v)) {
        throw ConfigError(fmt::format("config key '{}.{}' must be a positive integer, got {}", block, key, v));
    }
    return static_cast<std::uint64_t>(v);
}

}  // namespace

ExperimentConfig parse_config(const json& raw) {
    const json j = resolve_config_json(raw);
    ExperimentConfig c;
    c.preset = j.value("preset", "");

    const auto kind = parse_hypothesis_kind(get_as<std::string>(at(j, "hypothesis", "kind"), "hypothesis.kind"));
    const auto dim = get_positive_int(j, "stream", "dim");
    switch (kind) {
        case HypothesisKind::Threshold1D: c.hypothesis_class = HypothesisClass::threshold(); break;
        case HypothesisKind::Interval1D: c.hypothesis_class = HypothesisClass::interval(); break;
        case HypothesisKind::Box2D: c.hypothesis_class = HypothesisClass::box(); break;
        case HypothesisKind::HomogeneousHalfspace: c.hypothesis_class = HypothesisClass::halfspace(dim); break;
    }
    if (c.hypothesis_class.dim != dim) {
        throw ConfigError(fmt::format("stream.dim = {} does not match hypothesis.kind {} (dimension {})", dim,
                                      to_string(kind), c.hypothesis_class.dim));
    }
    c.resolution = get_positive_int(j, "hypothesis", "resolution");
    if (c.resolution < 2) throw ConfigError("hypothesis.resolution must be >= 2");
    c.bayes_params = get_as<std::vector<double>>(at(j, "hypothesis", "bayes"), "hypothesis.bayes");

    const auto dist = get_as<std::string>(at(j, "stream", "distribution"), "stream.distribution");
    if (dist == "uniform_cube") {
        c.distribution = InstanceDistribution::cube(dim);
    } else if (dist == "uniform_sphere") {
        c.distribution = InstanceDistribution::sphere(dim);
    } else {
        throw ConfigError(fmt::format("unknown stream.distribution '{}'", dist));
    }

    const auto noise = get_as<std::string>(at(j, "noise", "kind"), "noise.kind");
    if (noise == "massart") {
        c.noise = NoiseModel::massart(get_number(j, "noise", "eta_high"), get_number(j, "noise", "eta_low"));
    } else if (noise == "linear_sphere") {
        c.noise = NoiseModel::linear_sphere(get_as<std::vector<double>>(at(j, "noise", "u"), "noise.u"));
    } else {
        throw ConfigError(fmt::format("unknown noise.kind '{}'", noise));
    }

    c.learners = get_as<std::vector<std::string>>(at(j, "learner", "kind"), "learner.kind");
    if (c.learners.empty()) throw ConfigError("learner.kind must name at least one learner");
    for (const auto& l : c.learners) {
        const auto& kinds = learner_kinds();
        if (std::find(kinds.begin(), kinds.end(), l) == kinds.end()) {
            throw ConfigError(fmt::format("unknown learner.kind '{}' (expected ola, cal, a2, dhm or cbgz)", l));
        }
        if (l == "cbgz" && kind != HypothesisKind::HomogeneousHalfspace) {
            throw ConfigError("learner cbgz needs the halfspace hypothesis class");
        }
    }

    c.horizon = get_positive_int(j, "horizon", "T");
    c.unknown_horizon = get_as<bool>(at(j, "horizon", "unknown"), "horizon.unknown");
    c.m = get_number(j, "ola", "m");
    if (!(c.m > 0.0)) throw ConfigError("ola.m must be positive");
    c.beta_squared_radicals =
        get_as<bool>(at(j, "threshold", "beta_squared_radicals"), "threshold.beta_squared_radicals");
    c.cbgz_b = get_number(j, "cbgz", "b");
    if (!(c.cbgz_b > 0.0)) throw ConfigError("cbgz.b must be positive");
    c.a2_n_mc = get_positive_int(j, "a2", "n_mc");
    c.n_mc = get_positive_int(j, "analysis", "n_mc");
    c.r_grid = get_as<std::vector<double>>(at(j, "analysis", "r_grid"), "analysis.r_grid");
    if (c.r_grid.empty() || std::any_of(c.r_grid.begin(), c.r_grid.end(), [](double r) { return !(r > 0.0); })) {
        throw ConfigError("analysis.r_grid must be a non-empty list of positive radii");
    }

    c.seeds = get_as<std::vector<std::uint64_t>>(j.at("seeds"), "seeds");
    if (c.seeds.empty()) throw ConfigError("seeds must not be empty");
    c.out = j.value("out", "");

    // Cross-checks the oracle would otherwise only catch at run time.
    if (c.bayes_params.size() != c.hypothesis_class.params_per_hypothesis()) {
        throw ConfigError(fmt::format("hypothesis.bayes needs {} values, got {}",
                                      c.hypothesis_class.params_per_hypothesis(), c.bayes_params.size()));
    }
    if (c.noise.kind == NoiseModel::Kind::LinearSphere && c.noise.u != c.bayes_params) {
        throw ConfigError("noise.u must equal hypothesis.bayes for linear_sphere noise");
    }
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(fmt::format("cannot open config file '{}'", path));
    json raw;
    try {
        raw = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(fmt::format("config file '{}' is not valid JSON: {}", path, e.what()));
    }
    return parse_config(raw);
}

json to_json(const ExperimentConfig& c) {
    json j;
    j["preset"] = c.preset;
    j["hypothesis"] = {{"kind", std::string(to_string(c.hypothesis_class.kind))},
                       {"resolution", c.resolution},
                       {"bayes", c.bayes_params}};
    j["stream"] = {{"distribution", std::string(to_string(c.distribution.kind))}, {"dim", c.distribution.dim}};
    j["noise"] = {{"kind", std::string(to_string(c.noise.kind))},
                  {"eta_high", c.noise.eta_high},
                  {"eta_low", c.noise.eta_low},
                  {"u", c.noise.u}};
    j["learner"] = {{"kind", c.learners}};
    j["horizon"] = {{"T", c.horizon}, {"unknown", c.unknown_horizon}};
    j["ola"] = {{"m", c.m}};
    j["threshold"] = {{"beta_squared_radicals", c.beta_squared_radicals}};
    j["cbgz"] = {{"b", c.cbgz_b}};
    j["a2"] = {{"n_mc", c.a2_n_mc}};
    j["analysis"] = {{"n_mc", c.n_mc}, {"r_grid", c.r_grid}};
    j["seeds"] = c.seeds;
    j["out"] = c.out;
    return j;
}

std::string fingerprint(const ExperimentConfig& config) {
    json j = to_json(config);
    j.erase("out");
    const std::string text = j.dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return fmt::format("{:016x}", h);
}

void set_numeric_key(json& resolved, std::string_view dotted_key, double value) {
    std::string pointer = "/";
    for (char ch : dotted_key) pointer += ch == '.' ? '/' : ch;
    const json::json_pointer ptr(pointer);
    if (!resolved.contains(ptr)) throw ConfigError(fmt::format("unknown config key '{}'", dotted_key));
    auto& slot = resolved[ptr];
    if (!slot.is_number()) throw ConfigError(fmt::format("config key '{}' is not numeric", dotted_key));
    if (slot.is_number_integer() || slot.is_number_unsigned()) {
        if (value != std::floor(value)) {
            throw ConfigError(fmt::format("config key '{}' needs an integer, got {}", dotted_key, value));
        }
        slot = static_cast<std::int64_t>(value);
    } else {
        slot = value;
    }
}

}  // namespace ola
