#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "ola/hypothesis.hpp"
#include "ola/stream.hpp"

namespace ola {

/// Surviving subset of a hypothesis grid.
///
/// Keeps both a per-hypothesis mask and the ascending list of active indices;
/// scans go over the list, membership tests use the mask.
class VersionSpace {
public:
    /// Every grid hypothesis active.
    explicit VersionSpace(std::shared_ptr<const HypothesisGrid> grid);

    /// Active set given by `mask` (one entry per grid hypothesis). Throws
    /// InvariantViolation if the mask is empty or has the wrong length.
    VersionSpace(std::shared_ptr<const HypothesisGrid> grid, std::vector<std::uint8_t> mask);

    [[nodiscard]] const HypothesisGrid& grid() const { return *grid_; }
    [[nodiscard]] const std::shared_ptr<const HypothesisGrid>& grid_ptr() const { return grid_; }
    [[nodiscard]] std::size_t active_count() const { return active_.size(); }
    [[nodiscard]] std::span<const std::uint32_t> active() const { return active_; }
    [[nodiscard]] bool is_active(std::size_t h) const { return mask_[h] != 0; }
    [[nodiscard]] const std::vector<std::uint8_t>& mask() const { return mask_; }

    /// True iff every active hypothesis here is also active in `other`.
    [[nodiscard]] bool is_subset_of(const VersionSpace& other) const;

private:
    std::shared_ptr<const HypothesisGrid> grid_;
    std::vector<std::uint8_t> mask_;
    std::vector<std::uint32_t> active_;
};

/// Examples queried during the current epoch; at most `capacity` of them.
class QueryBuffer {
public:
    explicit QueryBuffer(std::size_t capacity) : capacity_(capacity) { examples_.reserve(capacity); }
    QueryBuffer(std::size_t capacity, std::vector<LabeledExample> examples);

    /// Throws PreconditionError when the buffer is already full.
    void push(LabeledExample example);
    void clear() { examples_.clear(); }

    [[nodiscard]] std::size_t size() const { return examples_.size(); }
    [[nodiscard]] bool empty() const { return examples_.empty(); }
    [[nodiscard]] bool full() const { return examples_.size() >= capacity_; }
    [[nodiscard]] std::size_t capacity() const { return capacity_; }
    [[nodiscard]] std::span<const LabeledExample> examples() const { return examples_; }

private:
    std::size_t capacity_;
    std::vector<LabeledExample> examples_;
};

/// How the elimination margin combines beta with the excess-error radicals.
enum class ThresholdRule {
    // beta^2 + beta * (sqrt(e1) + sqrt(e2)), the pairwise concentration bound.
    Linear,
    // beta^2 + beta^2 * (sqrt(e1) + sqrt(e2)), selected by threshold.beta_squared_radicals.
    SquaredRadicals,
};

/// Horizon-dependent constants of the learner. M = ceil(m * d * ln T), at least 1.
struct ThresholdParams {
    std::uint64_t horizon = 2;
    int vc_dimension = 1;
    double m = 4.0;
    std::size_t M = 1;
    ThresholdRule rule = ThresholdRule::Linear;

    static ThresholdParams make(std::uint64_t horizon, int vc_dimension, double m,
                                ThresholdRule rule = ThresholdRule::Linear);
};

[[nodiscard]] double empirical_error(const QueryBuffer& z, const HypothesisGrid& grid, std::size_t h);

/// Fraction of buffer examples that h1 gets wrong and h2 gets right.
[[nodiscard]] double excess_error(const QueryBuffer& z, const HypothesisGrid& grid, std::size_t h1, std::size_t h2);

/// sqrt((4/n) ln(16 T^2 S(2n)^2)), natural log, S from shattering_bound().
[[nodiscard]] double beta(const HypothesisClass& cls, std::uint64_t n, std::uint64_t horizon);

[[nodiscard]] double delta_threshold(const QueryBuffer& z, const HypothesisGrid& grid, std::size_t h,
                                     std::size_t erm_index, double beta_value,
                                     ThresholdRule rule = ThresholdRule::Linear);

/// Same margin from already computed excess errors.
[[nodiscard]] double delta_from_excess(double excess_h_over_erm, double excess_erm_over_h, double beta_value,
                                       ThresholdRule rule);

/// Active hypothesis with the fewest buffer mistakes; ties go to the lowest index.
[[nodiscard]] std::size_t erm(const QueryBuffer& z, const VersionSpace& vs);

/// Keeps h iff err(h) - err(erm) < Delta(h, erm). The result is a subset of
/// `vs` and always contains the ERM.
[[nodiscard]] VersionSpace prune(const QueryBuffer& z, const VersionSpace& vs, const ThresholdParams& params);

/// True iff two active hypotheses label x differently.
[[nodiscard]] bool in_disagreement(const VersionSpace& vs, const Point& x);

}  // namespace ola
