#include "ola/version_space.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "ola/error.hpp"

namespace ola {

VersionSpace::VersionSpace(std::shared_ptr<const HypothesisGrid> grid)
    : grid_(std::move(grid)), mask_(grid_->size(), 1) {
    active_.resize(grid_->size());
    for (std::size_t h = 0; h < active_.size(); ++h) active_[h] = static_cast<std::uint32_t>(h);
}

VersionSpace::VersionSpace(std::shared_ptr<const HypothesisGrid> grid, std::vector<std::uint8_t> mask)
    : grid_(std::move(grid)), mask_(std::move(mask)) {
    if (mask_.size() != grid_->size()) {
        throw InvariantViolation(fmt::format("mask has {} entries for a grid of {}", mask_.size(), grid_->size()));
    }
    for (std::size_t h = 0; h < mask_.size(); ++h) {
        if (mask_[h] != 0) active_.push_back(static_cast<std::uint32_t>(h));
    }
    if (active_.empty()) throw InvariantViolation("version space became empty");
}

bool VersionSpace::is_subset_of(const VersionSpace& other) const {
    if (other.mask_.size() != mask_.size()) return false;
    for (auto h : active_) {
        if (other.mask_[h] == 0) return false;
    }
    return true;
}

QueryBuffer::QueryBuffer(std::size_t capacity, std::vector<LabeledExample> examples)
    : capacity_(capacity), examples_(std::move(examples)) {
    if (examples_.size() > capacity_) {
        throw PreconditionError(fmt::format("{} examples exceed buffer capacity {}", examples_.size(), capacity_));
    }
}

void QueryBuffer::push(LabeledExample example) {
    if (full()) throw PreconditionError("query buffer is full");
    examples_.push_back(std::move(example));
}

ThresholdParams ThresholdParams::make(std::uint64_t horizon, int vc_dimension, double m, ThresholdRule rule) {
    if (horizon < 1) throw ConfigError("horizon.T must be >= 1");
    if (!(m > 0.0)) throw ConfigError(fmt::format("ola.m must be positive, got {}", m));
    if (vc_dimension < 1) throw ConfigError("VC dimension must be >= 1");
    ThresholdParams p;
    p.horizon = horizon;
    p.vc_dimension = vc_dimension;
    p.m = m;
    p.rule = rule;
    const double raw = std::ceil(m * vc_dimension * std::log(static_cast<double>(horizon)));
    p.M = raw < 1.0 ? 1 : static_cast<std::size_t>(raw);
    return p;
}

namespace {

void require_nonempty(const QueryBuffer& z) {
    if (z.empty()) throw PreconditionError("empirical errors need a non-empty query buffer");
}

}  // namespace

double empirical_error(const QueryBuffer& z, const HypothesisGrid& grid, std::size_t h) {
    require_nonempty(z);
    std::size_t mistakes = 0;
    for (const auto& ex : z.examples()) mistakes += grid.classify(h, ex.x) != ex.y;
    return static_cast<double>(mistakes) / static_cast<double>(z.size());
}

double excess_error(const QueryBuffer& z, const HypothesisGrid& grid, std::size_t h1, std::size_t h2) {
    require_nonempty(z);
    std::size_t count = 0;
    for (const auto& ex : z.examples()) {
        count += grid.classify(h1, ex.x) != ex.y && grid.classify(h2, ex.x) == ex.y;
    }
    return static_cast<double>(count) / static_cast<double>(z.size());
}

double beta(const HypothesisClass& cls, std::uint64_t n, std::uint64_t horizon) {
    if (n < 1) throw PreconditionError("beta needs n >= 1");
    if (horizon < 2) throw PreconditionError("beta needs T >= 2");
    const double log_s = std::log(shattering_bound(cls, 2 * n));
    const double log_arg = std::log(16.0) + 2.0 * std::log(static_cast<double>(horizon)) + 2.0 * log_s;
    return std::sqrt(4.0 / static_cast<double>(n) * log_arg);
}

double delta_from_excess(double excess_h_over_erm, double excess_erm_over_h, double beta_value, ThresholdRule rule) {
    const double radicals = std::sqrt(excess_h_over_erm) + std::sqrt(excess_erm_over_h);
    const double b2 = beta_value * beta_value;
    return rule == ThresholdRule::Linear ? b2 + beta_value * radicals : b2 + b2 * radicals;
}

double delta_threshold(const QueryBuffer& z, const HypothesisGrid& grid, std::size_t h, std::size_t erm_index,
                       double beta_value, ThresholdRule rule) {
    return delta_from_excess(excess_error(z, grid, h, erm_index), excess_error(z, grid, erm_index, h), beta_value,
                             rule);
}

std::size_t erm(const QueryBuffer& z, const VersionSpace& vs) {
    require_nonempty(z);
    if (vs.active_count() == 0) throw InvariantViolation("ERM over an empty version space");
    const auto& grid = vs.grid();
    std::size_t best = vs.active().front();
    std::size_t best_mistakes = z.size() + 1;
    for (auto h : vs.active()) {
        std::size_t mistakes = 0;
        for (const auto& ex : z.examples()) mistakes += grid.classify(h, ex.x) != ex.y;
        if (mistakes < best_mistakes) {
            best_mistakes = mistakes;
            best = h;
        }
    }
    return best;
}

VersionSpace prune(const QueryBuffer& z, const VersionSpace& vs, const ThresholdParams& params) {
    require_nonempty(z);
    const auto& grid = vs.grid();
    const auto n = z.size();
    const auto best = erm(z, vs);
    const double b = beta(grid.hypothesis_class(), n, std::max<std::uint64_t>(params.horizon, 2));

    std::vector<Label> erm_labels(n);
    for (std::size_t i = 0; i < n; ++i) erm_labels[i] = grid.classify(best, z.examples()[i].x);

    const auto nd = static_cast<double>(n);
    std::vector<std::uint8_t> mask(grid.size(), 0);
    for (auto h : vs.active()) {
        // h_wrong counts mistakes of h where the ERM is right, erm_wrong the
        // converse; their difference equals the difference of mistake counts.
        std::size_t h_wrong = 0;
        std::size_t erm_wrong = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto& ex = z.examples()[i];
            const bool h_ok = grid.classify(h, ex.x) == ex.y;
            const bool e_ok = erm_labels[i] == ex.y;
            h_wrong += !h_ok && e_ok;
            erm_wrong += h_ok && !e_ok;
        }
        const double gap = (static_cast<double>(h_wrong) - static_cast<double>(erm_wrong)) / nd;
        const double delta = delta_from_excess(static_cast<double>(h_wrong) / nd, static_cast<double>(erm_wrong) / nd,
                                               b, params.rule);
        if (gap < delta) mask[h] = 1;
    }
    return VersionSpace(vs.grid_ptr(), std::move(mask));
}

bool in_disagreement(const VersionSpace& vs, const Point& x) {
    const auto active = vs.active();
    if (active.empty()) throw InvariantViolation("disagreement test on an empty version space");
    const auto& grid = vs.grid();
    const Label first = grid.classify(active.front(), x);
    for (std::size_t i = 1; i < active.size(); ++i) {
        if (grid.classify(active[i], x) != first) return true;
    }
    return false;
}

}  // namespace ola
