#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "ola/learner.hpp"
#include "ola/rng.hpp"
#include "ola/stream.hpp"
#include "ola/version_space.hpp"

namespace ola {

/// Query iff the instance is in the disagreement region of the hypotheses
/// consistent with every label seen so far; eliminate on each query.
/// Only meaningful on noiseless streams: the consistent set emptying out
/// throws InvariantViolation.
class CalLearner final : public OnlineLearner {
public:
    explicit CalLearner(std::shared_ptr<const HypothesisGrid> grid) : vs_(std::move(grid)) {}

    StepOutcome step(const Point& x, const LabelSource& label_source) override;
    [[nodiscard]] std::string_view name() const override { return "cal"; }

    [[nodiscard]] const VersionSpace& version_space() const { return vs_; }

private:
    VersionSpace vs_;
};

/// A^2-style learner adapted to a stream.
///
/// Labels are requested inside the disagreement region D_i fixed at the start
/// of phase i. At sample sizes n0, 2 n0, 4 n0, ... of the phase, every h with
/// err(h) - Delta > min_h' (err(h') + Delta) is eliminated, with the uniform
/// VC deviation Delta(n, d) = sqrt((8/n)(ln S(2n) + ln(4/d))) and confidence
/// 1/T split over checkpoints. A phase ends when the Monte Carlo mass of the
/// surviving disagreement region drops to half of phi(D_i), which is why the
/// learner needs sampling access to P_X.
class A2Learner final : public OnlineLearner {
public:
    struct Options {
        std::size_t first_checkpoint = 16;
        std::size_t n_mc = 4000;
    };

    A2Learner(std::shared_ptr<const HypothesisGrid> grid, std::uint64_t horizon, InstanceDistribution distribution,
              Rng eval_rng);
    A2Learner(std::shared_ptr<const HypothesisGrid> grid, std::uint64_t horizon, InstanceDistribution distribution,
              Rng eval_rng, Options options);

    StepOutcome step(const Point& x, const LabelSource& label_source) override;
    [[nodiscard]] std::string_view name() const override { return "a2"; }

    [[nodiscard]] const VersionSpace& version_space() const { return vs_; }
    [[nodiscard]] const VersionSpace& region() const { return region_; }
    [[nodiscard]] double region_mass() const { return region_mass_; }
    [[nodiscard]] std::uint32_t phase() const { return phase_; }

    /// Uniform deviation used at a checkpoint of n samples with confidence delta.
    [[nodiscard]] static double deviation(const HypothesisClass& cls, std::size_t n, double delta);

private:
    void checkpoint();

    std::uint64_t horizon_;
    InstanceDistribution distribution_;
    Rng eval_rng_;
    Options options_;
    VersionSpace vs_;
    VersionSpace region_;
    double region_mass_ = 1.0;
    std::vector<LabeledExample> samples_;
    std::size_t next_checkpoint_;
    std::uint64_t checkpoints_done_ = 0;
    std::uint32_t phase_ = 0;
};

/// DHM-style learner: each instance is either labeled by inference or queried.
///
/// With S the inferred and Q the queried examples, h_y is the hypothesis
/// consistent with S and (x, y) that has the fewest mistakes on Q. If no
/// hypothesis consistent with S gives x label 1-y, or h_{1-y} trails h_y by
/// more than Delta_t = b^2 + b (sqrt(err h_y) + sqrt(err h_{1-y})), label y is
/// inferred. Otherwise the label is queried. Errors are normalized by t = |S| + |Q|
/// and b = sqrt((4/t) ln(8 (t^2 + t) S(2t)^2 / delta)), delta = 1/T.
class DhmLearner final : public OnlineLearner {
public:
    DhmLearner(std::shared_ptr<const HypothesisGrid> grid, std::uint64_t horizon);

    StepOutcome step(const Point& x, const LabelSource& label_source) override;
    [[nodiscard]] std::string_view name() const override { return "dhm"; }

    /// Hypotheses consistent with every inferred label.
    [[nodiscard]] const std::vector<std::uint32_t>& consistent() const { return consistent_; }
    /// Mistakes of grid hypothesis h on the queried examples.
    [[nodiscard]] std::uint64_t queried_mistakes(std::size_t h) const { return mistakes_[h]; }

    [[nodiscard]] static double deviation(const HypothesisClass& cls, std::uint64_t t, double delta);

private:
    std::shared_ptr<const HypothesisGrid> grid_;
    double delta_;
    std::vector<std::uint32_t> consistent_;
    std::vector<std::uint64_t> mistakes_;
    std::uint64_t t_ = 0;
};

/// Selective-sampling perceptron for homogeneous halfspaces.
///
/// Predicts 1[w.x >= 0] and asks for the label with probability b / (b + |w.x|),
/// flipping its coin with its own generator. A queried mistake triggers
/// w += s x with s = +1 for label 1 and -1 for label 0.
class CbgzLearner final : public OnlineLearner {
public:
    CbgzLearner(std::size_t dim, double b, Rng coin);

    StepOutcome step(const Point& x, const LabelSource& label_source) override;
    [[nodiscard]] std::string_view name() const override { return "cbgz"; }

    [[nodiscard]] double query_probability(const Point& x) const;
    [[nodiscard]] const std::vector<double>& weights() const { return w_; }

private:
    [[nodiscard]] double margin(const Point& x) const;

    std::vector<double> w_;
    double b_;
    Rng coin_;
};

}  // namespace ola
