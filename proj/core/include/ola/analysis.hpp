#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ola/hypothesis.hpp"
#include "ola/rng.hpp"
#include "ola/stream.hpp"
#include "ola/trace.hpp"
#include "ola/version_space.hpp"

namespace ola {

/// Cumulative label complexity Q(t) and regret R(t), indexed by t - 1.
struct MetricSeries {
    std::vector<std::uint64_t> queries;
    std::vector<std::int64_t> regret;

    [[nodiscard]] std::uint64_t final_queries() const { return queries.empty() ? 0 : queries.back(); }
    [[nodiscard]] std::int64_t final_regret() const { return regret.empty() ? 0 : regret.back(); }
};

/// Q(t) counts queried steps. R(t) sums, over predicted steps only,
/// 1[prediction != y] - 1[h*(x) != y]. Throws PreconditionError on a step
/// that is both or neither queried and predicted.
[[nodiscard]] MetricSeries compute_metrics(const RunTrace& trace);

/// Monte Carlo estimate with its binomial standard error.
struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
};

/// Mass of the disagreement region of `vs` under the oracle's marginal, from
/// n_mc draws of `eval_rng` (never the oracle's own stream).
[[nodiscard]] Estimate estimate_phi(const VersionSpace& vs, const InstanceDistribution& distribution,
                                    std::size_t n_mc, Rng& eval_rng);
[[nodiscard]] Estimate estimate_phi(const VersionSpace& vs, const StreamOracle& oracle, std::size_t n_mc,
                                    Rng& eval_rng);

/// Fraction of `sample` on which h1 and h2 disagree.
[[nodiscard]] double disagreement_rate(const HypothesisGrid& grid, std::size_t h1, std::size_t h2,
                                       std::span<const Point> sample);

[[nodiscard]] Estimate estimate_rho(const HypothesisGrid& grid, std::size_t h1, std::size_t h2,
                                    const InstanceDistribution& distribution, std::size_t n_mc, Rng& eval_rng);

struct ThetaEstimate {
    double theta = 0.0;
    std::vector<double> radii;
    std::vector<double> ratios;  // phi(Psi(B(h*, r))) / r per radius
};

/// Geometric radii 2^-10, ..., 2^0.
[[nodiscard]] std::vector<double> default_r_grid();

/// sup_r phi(Psi(B(h*, r))) / r over `r_grid`, with the ball taken over the
/// grid under the Monte Carlo disagreement metric. Distances and the region
/// mass use two independent samples of n_mc points each. Cost is
/// O(grid size * n_mc).
[[nodiscard]] ThetaEstimate estimate_theta(const HypothesisGrid& grid, std::size_t bayes_index,
                                           const InstanceDistribution& distribution, std::span<const double> r_grid,
                                           std::size_t n_mc, Rng& eval_rng);

struct LabelBound {
    double value = 0.0;
    double c = 0.0;
    // False when m < 256 theta^2 / gamma^2 or c >= 1; `value` is then only
    // meaningful if c < 1.
    bool in_regime = false;
};

/// 2 m d / ln(2 / (1 + c)) * (ln T + 1)^2 with c = 8 theta / (gamma sqrt(m)).
[[nodiscard]] LabelBound theorem2_bound(int d, double m, double theta, double gamma, std::uint64_t horizon);

}  // namespace ola
