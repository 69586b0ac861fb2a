#include "ola/stream.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "ola/error.hpp"

namespace ola {

std::string_view to_string(InstanceDistribution::Kind kind) {
    return kind == InstanceDistribution::Kind::UniformCube ? "uniform_cube" : "uniform_sphere";
}

std::string_view to_string(NoiseModel::Kind kind) {
    return kind == NoiseModel::Kind::MassartFlip ? "massart" : "linear_sphere";
}

Point InstanceDistribution::sample(Rng& rng) const {
    std::vector<double> coords(dim);
    if (kind == Kind::UniformCube) {
        for (auto& c : coords) c = rng.uniform01();
        return Point(std::move(coords));
    }
    double norm = 0.0;
    do {
        norm = 0.0;
        for (auto& c : coords) {
            c = rng.normal();
            norm += c * c;
        }
    } while (norm < 1e-24);
    norm = std::sqrt(norm);
    for (auto& c : coords) c /= norm;
    return Point(std::move(coords));
}

double NoiseModel::gamma() const {
    if (kind == Kind::LinearSphere) return 0.0;
    return std::min(eta_high - 0.5, 0.5 - eta_low);
}

StreamOracle::StreamOracle(InstanceDistribution distribution, NoiseModel noise, HypothesisClass cls,
                           std::vector<double> bayes_params, std::uint64_t seed)
    : distribution_(distribution),
      noise_(std::move(noise)),
      cls_(cls),
      bayes_params_(std::move(bayes_params)),
      seed_(seed),
      rng_(seed) {
    if (distribution_.dim != cls_.dim) {
        throw ConfigError(fmt::format("stream dimension {} does not match {} dimension {}", distribution_.dim,
                                      to_string(cls_.kind), cls_.dim));
    }
    if (bayes_params_.size() != cls_.params_per_hypothesis()) {
        throw ConfigError(fmt::format("bayes parameters: expected {} values, got {}", cls_.params_per_hypothesis(),
                                      bayes_params_.size()));
    }
    if (noise_.kind == NoiseModel::Kind::MassartFlip) {
        if (!(noise_.eta_high > 0.5 && noise_.eta_high <= 1.0 && noise_.eta_low >= 0.0 && noise_.eta_low < 0.5)) {
            throw ConfigError(fmt::format("massart noise needs 1/2 < eta_high <= 1 and 0 <= eta_low < 1/2, got {} / {}",
                                          noise_.eta_high, noise_.eta_low));
        }
        return;
    }
    if (distribution_.kind != InstanceDistribution::Kind::UniformSphere ||
        cls_.kind != HypothesisKind::HomogeneousHalfspace) {
        throw ConfigError("linear_sphere noise requires the uniform_sphere distribution and the halfspace class");
    }
    if (noise_.u.size() != distribution_.dim) {
        throw ConfigError(fmt::format("noise.u has {} components, expected {}", noise_.u.size(), distribution_.dim));
    }
    double norm = 0.0;
    for (double c : noise_.u) norm += c * c;
    if (std::abs(std::sqrt(norm) - 1.0) > 1e-9) {
        throw ConfigError("noise.u must be a unit vector");
    }
    if (bayes_params_ != noise_.u) {
        throw ConfigError("for linear_sphere noise the bayes parameters must equal noise.u");
    }
}

double StreamOracle::eta(const Point& x) const {
    if (noise_.kind == NoiseModel::Kind::MassartFlip) {
        return classify(cls_, bayes_params_, x) == 1 ? noise_.eta_high : noise_.eta_low;
    }
    double dot = 0.0;
    for (std::size_t i = 0; i < x.dim(); ++i) dot += noise_.u[i] * x[i];
    return (1.0 + dot) / 2.0;
}

LabeledExample StreamOracle::next_example() {
    Point x = distribution_.sample(rng_);
    const Label y = rng_.uniform01() < eta(x) ? 1 : 0;
    return {std::move(x), y};
}

std::vector<LabeledExample> StreamOracle::sample_conditional(const std::function<bool(const Point&)>& region,
                                                             std::size_t n, std::uint64_t cap) {
    if (n == 0) throw PreconditionError("sample_conditional needs n >= 1");
    std::vector<LabeledExample> out;
    out.reserve(n);
    std::uint64_t attempts = 0;
    while (out.size() < n) {
        if (attempts++ >= cap) {
            throw SamplingExhausted(fmt::format("collected {} of {} conditional samples in {} attempts", out.size(), n, cap));
        }
        auto example = next_example();
        if (region(example.x)) out.push_back(std::move(example));
    }
    return out;
}

}  // namespace ola
