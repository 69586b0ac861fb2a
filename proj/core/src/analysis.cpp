#include "ola/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "ola/error.hpp"

namespace ola {

MetricSeries compute_metrics(const RunTrace& trace) {
    MetricSeries out;
    out.queries.reserve(trace.size());
    out.regret.reserve(trace.size());
    std::uint64_t q = 0;
    std::int64_t r = 0;
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const auto& s = trace.steps[i];
        if (s.queried == s.predicted.has_value()) {
            throw PreconditionError(fmt::format("trace step {} must be either queried or predicted", i + 1));
        }
        if (s.queried) {
            ++q;
        } else {
            r += static_cast<std::int64_t>(*s.predicted != s.y_true) - static_cast<std::int64_t>(s.y_bayes != s.y_true);
        }
        out.queries.push_back(q);
        out.regret.push_back(r);
    }
    return out;
}

namespace {

Estimate binomial(std::size_t hits, std::size_t n) {
    const double p = static_cast<double>(hits) / static_cast<double>(n);
    return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(n))};
}

std::vector<Point> draw(const InstanceDistribution& distribution, std::size_t n, Rng& rng) {
    std::vector<Point> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pts.push_back(distribution.sample(rng));
    return pts;
}

}  // namespace

Estimate estimate_phi(const VersionSpace& vs, const InstanceDistribution& distribution, std::size_t n_mc,
                      Rng& eval_rng) {
    if (n_mc < 1) throw PreconditionError("estimate_phi needs n_mc >= 1");
    if (vs.active_count() == 1) return {0.0, 0.0};
    std::size_t hits = 0;
    for (std::size_t i = 0; i < n_mc; ++i) hits += in_disagreement(vs, distribution.sample(eval_rng));
    return binomial(hits, n_mc);
}

Estimate estimate_phi(const VersionSpace& vs, const StreamOracle& oracle, std::size_t n_mc, Rng& eval_rng) {
    return estimate_phi(vs, oracle.distribution(), n_mc, eval_rng);
}

double disagreement_rate(const HypothesisGrid& grid, std::size_t h1, std::size_t h2, std::span<const Point> sample) {
    if (sample.empty()) throw PreconditionError("disagreement_rate needs a non-empty sample");
    std::size_t hits = 0;
    for (const auto& x : sample) hits += grid.classify(h1, x) != grid.classify(h2, x);
    return static_cast<double>(hits) / static_cast<double>(sample.size());
}

Estimate estimate_rho(const HypothesisGrid& grid, std::size_t h1, std::size_t h2,
                      const InstanceDistribution& distribution, std::size_t n_mc, Rng& eval_rng) {
    if (n_mc < 1) throw PreconditionError("estimate_rho needs n_mc >= 1");
    const auto pts = draw(distribution, n_mc, eval_rng);
    const double rho = disagreement_rate(grid, h1, h2, pts);
    return {rho, std::sqrt(rho * (1.0 - rho) / static_cast<double>(n_mc))};
}

std::vector<double> default_r_grid() {
    std::vector<double> r;
    for (int e = -10; e <= 0; ++e) r.push_back(std::ldexp(1.0, e));
    return r;
}

ThetaEstimate estimate_theta(const HypothesisGrid& grid, std::size_t bayes_index,
                             const InstanceDistribution& distribution, std::span<const double> r_grid,
                             std::size_t n_mc, Rng& eval_rng) {
    if (r_grid.empty()) throw PreconditionError("estimate_theta needs a non-empty r_grid");
    if (std::any_of(r_grid.begin(), r_grid.end(), [](double r) { return !(r > 0.0); })) {
        throw PreconditionError("estimate_theta radii must be positive");
    }
    if (n_mc < 1) throw PreconditionError("estimate_theta needs n_mc >= 1");

    const auto metric_sample = draw(distribution, n_mc, eval_rng);
    const auto mass_sample = draw(distribution, n_mc, eval_rng);

    std::vector<Label> bayes_metric(n_mc);
    std::vector<Label> bayes_mass(n_mc);
    for (std::size_t i = 0; i < n_mc; ++i) {
        bayes_metric[i] = grid.classify(bayes_index, metric_sample[i]);
        bayes_mass[i] = grid.classify(bayes_index, mass_sample[i]);
    }

    // rho(h, h*) for every grid hypothesis.
    std::vector<double> rho(grid.size());
    for (std::size_t h = 0; h < grid.size(); ++h) {
        std::size_t hits = 0;
        for (std::size_t i = 0; i < n_mc; ++i) hits += grid.classify(h, metric_sample[i]) != bayes_metric[i];
        rho[h] = static_cast<double>(hits) / static_cast<double>(n_mc);
    }

    // h* is in every ball, so x lies in Psi(B(h*, r)) iff some h with
    // h(x) != h*(x) has rho(h, h*) < r. Record the smallest such rho per point.
    std::vector<double> entry(n_mc, std::numeric_limits<double>::infinity());
    for (std::size_t h = 0; h < grid.size(); ++h) {
        for (std::size_t i = 0; i < n_mc; ++i) {
            if (rho[h] < entry[i] && grid.classify(h, mass_sample[i]) != bayes_mass[i]) entry[i] = rho[h];
        }
    }
    std::sort(entry.begin(), entry.end());

    ThetaEstimate out;
    for (double r : r_grid) {
        const auto inside = static_cast<std::size_t>(std::lower_bound(entry.begin(), entry.end(), r) - entry.begin());
        const double phi = static_cast<double>(inside) / static_cast<double>(n_mc);
        out.radii.push_back(r);
        out.ratios.push_back(phi / r);
        out.theta = std::max(out.theta, phi / r);
    }
    return out;
}

LabelBound theorem2_bound(int d, double m, double theta, double gamma, std::uint64_t horizon) {
    if (d < 1 || !(m > 0.0) || !(theta > 0.0) || !(gamma > 0.0) || horizon < 1) {
        throw PreconditionError("theorem2_bound needs d >= 1 and positive m, theta, gamma, T");
    }
    LabelBound out;
    out.c = 8.0 * theta / (gamma * std::sqrt(m));
    out.in_regime = m >= 256.0 * theta * theta / (gamma * gamma) && out.c < 1.0;
    const double log_t = std::log(static_cast<double>(horizon)) + 1.0;
    out.value = out.c < 1.0 ? 2.0 * m * d / std::log(2.0 / (1.0 + out.c)) * log_t * log_t
                            : std::numeric_limits<double>::infinity();
    return out;
}

}  // namespace ola
