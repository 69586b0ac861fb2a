#pragma once

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "ola/hypothesis.hpp"
#include "ola/rng.hpp"

namespace ola {

/// Marginal P_X over the instance space.
struct InstanceDistribution {
    enum class Kind { UniformCube, UniformSphere };
    Kind kind = Kind::UniformCube;
    std::size_t dim = 1;

    static InstanceDistribution cube(std::size_t dim) { return {Kind::UniformCube, dim}; }
    static InstanceDistribution sphere(std::size_t dim) { return {Kind::UniformSphere, dim}; }

    [[nodiscard]] Point sample(Rng& rng) const;
};

[[nodiscard]] std::string_view to_string(InstanceDistribution::Kind kind);

/// Conditional label law eta(x) = P(Y = 1 | X = x).
///
/// MassartFlip: eta = eta_high where h*(x) = 1, eta_low elsewhere.
/// LinearSphere: eta = (1 + u.x) / 2; this one has no margin at u.x = 0.
struct NoiseModel {
    enum class Kind { MassartFlip, LinearSphere };
    Kind kind = Kind::MassartFlip;
    double eta_high = 0.75;
    double eta_low = 0.25;
    std::vector<double> u;

    static NoiseModel massart(double eta_high = 0.75, double eta_low = 0.25) {
        return {Kind::MassartFlip, eta_high, eta_low, {}};
    }
    static NoiseModel linear_sphere(std::vector<double> u) {
        return {Kind::LinearSphere, 0.75, 0.25, std::move(u)};
    }

    // min |eta(x) - 1/2| over the instance space (0 for LinearSphere).
    [[nodiscard]] double gamma() const;
};

[[nodiscard]] std::string_view to_string(NoiseModel::Kind kind);

struct LabeledExample {
    Point x;
    Label y = 0;
};

/// Seeded i.i.d. source of labeled examples with a known Bayes classifier.
///
/// For MassartFlip the Bayes classifier is `bayes_params` under `cls`; for
/// LinearSphere it is the halfspace with normal u, and `bayes_params` must
/// equal u. Throws ConfigError on inconsistent settings.
class StreamOracle {
public:
    StreamOracle(InstanceDistribution distribution, NoiseModel noise, HypothesisClass cls,
                 std::vector<double> bayes_params, std::uint64_t seed);

    LabeledExample next_example();

    [[nodiscard]] double eta(const Point& x) const;
    [[nodiscard]] Label bayes_label(const Point& x) const { return eta(x) >= 0.5 ? 1 : 0; }

    /// n examples from P restricted to {x : region(x)} by rejection. `cap`
    /// bounds the total number of attempts; exceeding it throws SamplingExhausted.
    std::vector<LabeledExample> sample_conditional(const std::function<bool(const Point&)>& region,
                                                   std::size_t n, std::uint64_t cap = 10'000'000);

    [[nodiscard]] const InstanceDistribution& distribution() const { return distribution_; }
    [[nodiscard]] const NoiseModel& noise() const { return noise_; }
    [[nodiscard]] const HypothesisClass& hypothesis_class() const { return cls_; }
    [[nodiscard]] const std::vector<double>& bayes_params() const { return bayes_params_; }
    [[nodiscard]] std::uint64_t seed() const { return seed_; }

private:
    InstanceDistribution distribution_;
    NoiseModel noise_;
    HypothesisClass cls_;
    std::vector<double> bayes_params_;
    std::uint64_t seed_;
    Rng rng_;
};

}  // namespace ola
