#include "ola/baselines.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "ola/analysis.hpp"
#include "ola/error.hpp"

namespace ola {

StepOutcome CalLearner::step(const Point& x, const LabelSource& label_source) {
    const auto& grid = vs_.grid();
    if (!in_disagreement(vs_, x)) return StepOutcome::predict(grid.classify(vs_.active().front(), x), 0);

    const Label y = label_source(x);
    std::vector<std::uint8_t> mask(grid.size(), 0);
    bool any = false;
    for (auto h : vs_.active()) {
        if (grid.classify(h, x) == y) {
            mask[h] = 1;
            any = true;
        }
    }
    if (!any) throw InvariantViolation("CAL eliminated every hypothesis; the stream is not realizable on this grid");
    vs_ = VersionSpace(vs_.grid_ptr(), std::move(mask));
    return StepOutcome::query(0);
}

A2Learner::A2Learner(std::shared_ptr<const HypothesisGrid> grid, std::uint64_t horizon,
                     InstanceDistribution distribution, Rng eval_rng)
    : A2Learner(std::move(grid), horizon, distribution, std::move(eval_rng), Options{}) {}

A2Learner::A2Learner(std::shared_ptr<const HypothesisGrid> grid, std::uint64_t horizon,
                     InstanceDistribution distribution, Rng eval_rng, Options options)
    : horizon_(std::max<std::uint64_t>(horizon, 1)),
      distribution_(distribution),
      eval_rng_(std::move(eval_rng)),
      options_(options),
      vs_(grid),
      region_(grid),
      next_checkpoint_(std::max<std::size_t>(options.first_checkpoint, 1)) {}

double A2Learner::deviation(const HypothesisClass& cls, std::size_t n, double delta) {
    const double log_s = std::log(shattering_bound(cls, 2 * static_cast<std::uint64_t>(n)));
    return std::sqrt(8.0 / static_cast<double>(n) * (log_s + std::log(4.0 / delta)));
}

StepOutcome A2Learner::step(const Point& x, const LabelSource& label_source) {
    if (!in_disagreement(region_, x)) {
        return StepOutcome::predict(region_.grid().classify(region_.active().front(), x), phase_);
    }
    const auto outcome = StepOutcome::query(phase_);
    samples_.push_back({x, label_source(x)});
    if (samples_.size() >= next_checkpoint_) checkpoint();
    return outcome;
}

void A2Learner::checkpoint() {
    const auto& grid = vs_.grid();
    const auto n = samples_.size();
    ++checkpoints_done_;
    const auto j = static_cast<double>(checkpoints_done_);
    const double delta = 1.0 / static_cast<double>(horizon_) / (j * (j + 1.0));
    const double dev = deviation(grid.hypothesis_class(), n, delta);

    std::vector<double> err(grid.size(), 0.0);
    double best_upper = std::numeric_limits<double>::infinity();
    for (auto h : vs_.active()) {
        std::size_t mistakes = 0;
        for (const auto& ex : samples_) mistakes += grid.classify(h, ex.x) != ex.y;
        err[h] = static_cast<double>(mistakes) / static_cast<double>(n);
        best_upper = std::min(best_upper, err[h] + dev);
    }
    std::vector<std::uint8_t> mask(grid.size(), 0);
    std::size_t kept = 0;
    for (auto h : vs_.active()) {
        if (err[h] - dev <= best_upper) {
            mask[h] = 1;
            ++kept;
        }
    }
    next_checkpoint_ *= 2;
    if (kept == vs_.active_count()) return;

    vs_ = VersionSpace(vs_.grid_ptr(), std::move(mask));
    const double mass = estimate_phi(vs_, distribution_, options_.n_mc, eval_rng_).value;
    if (mass <= region_mass_ / 2.0) {
        region_ = vs_;
        region_mass_ = mass;
        samples_.clear();
        next_checkpoint_ = std::max<std::size_t>(options_.first_checkpoint, 1);
        ++phase_;
    }
}

DhmLearner::DhmLearner(std::shared_ptr<const HypothesisGrid> grid, std::uint64_t horizon)
    : grid_(std::move(grid)),
      delta_(1.0 / static_cast<double>(std::max<std::uint64_t>(horizon, 1))),
      mistakes_(grid_->size(), 0) {
    consistent_.resize(grid_->size());
    for (std::size_t h = 0; h < consistent_.size(); ++h) consistent_[h] = static_cast<std::uint32_t>(h);
}

double DhmLearner::deviation(const HypothesisClass& cls, std::uint64_t t, double delta) {
    const auto td = static_cast<double>(t);
    const double log_s = std::log(shattering_bound(cls, 2 * t));
    return std::sqrt(4.0 / td * (std::log(8.0 * (td * td + td) / delta) + 2.0 * log_s));
}

StepOutcome DhmLearner::step(const Point& x, const LabelSource& label_source) {
    constexpr auto kNone = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t best[2] = {kNone, kNone};
    for (auto h : consistent_) {
        const Label l = grid_->classify(h, x);
        best[l] = std::min(best[l], mistakes_[h]);
    }

    int inferred = -1;
    if (best[0] == kNone) {
        inferred = 1;
    } else if (best[1] == kNone) {
        inferred = 0;
    } else if (t_ > 0) {
        const auto td = static_cast<double>(t_);
        const double e0 = static_cast<double>(best[0]) / td;
        const double e1 = static_cast<double>(best[1]) / td;
        const double b = deviation(grid_->hypothesis_class(), t_, delta_);
        const double margin = b * b + b * (std::sqrt(e0) + std::sqrt(e1));
        if (e0 - e1 > margin) {
            inferred = 1;
        } else if (e1 - e0 > margin) {
            inferred = 0;
        }
    }
    ++t_;

    if (inferred >= 0) {
        std::erase_if(consistent_, [&](std::uint32_t h) { return grid_->classify(h, x) != inferred; });
        if (consistent_.empty()) throw InvariantViolation("DHM inferred a label no hypothesis is consistent with");
        return StepOutcome::predict(inferred, 0);
    }
    const Label y = label_source(x);
    for (auto h : consistent_) mistakes_[h] += grid_->classify(h, x) != y;
    return StepOutcome::query(0);
}

CbgzLearner::CbgzLearner(std::size_t dim, double b, Rng coin) : w_(dim, 0.0), b_(b), coin_(std::move(coin)) {
    if (!(b > 0.0)) throw ConfigError(fmt::format("cbgz.b must be positive, got {}", b));
}

double CbgzLearner::margin(const Point& x) const {
    if (x.dim() != w_.size()) {
        throw ConfigError(fmt::format("cbgz expects {}-dimensional points, got {}", w_.size(), x.dim()));
    }
    double dot = 0.0;
    for (std::size_t i = 0; i < w_.size(); ++i) dot += w_[i] * x[i];
    return dot;
}

double CbgzLearner::query_probability(const Point& x) const {
    return b_ / (b_ + std::abs(margin(x)));
}

StepOutcome CbgzLearner::step(const Point& x, const LabelSource& label_source) {
    const double p = margin(x);
    const Label guess = p >= 0.0 ? 1 : 0;
    if (coin_.uniform01() >= b_ / (b_ + std::abs(p))) return StepOutcome::predict(guess, 0);

    const Label y = label_source(x);
    if (y != guess) {
        const double s = y == 1 ? 1.0 : -1.0;
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] += s * x[i];
    }
    return StepOutcome::query(0);
}

}  // namespace ola
