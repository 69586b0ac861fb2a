#include "ola/learner.hpp"

#include <algorithm>

#include "ola/error.hpp"

namespace ola {

OlaLearner::OlaLearner(std::shared_ptr<const HypothesisGrid> grid, ThresholdParams params)
    : params_(params), vs_(std::move(grid)), buffer_(params.M) {}

StepOutcome OlaLearner::step(const Point& x, const LabelSource& label_source) {
    ++t_;
    if (!in_disagreement(vs_, x)) {
        return StepOutcome::predict(vs_.grid().classify(vs_.active().front(), x), epoch_);
    }
    const auto outcome = StepOutcome::query(epoch_);
    buffer_.push({x, label_source(x)});
    if (buffer_.full()) {
        auto next = prune(buffer_, vs_, params_);
        if (observer_) {
            // erm() is recomputed only for observers; prune() keeps it internal.
            observer_({epoch_, &vs_, &next, erm(buffer_, vs_)});
        }
        vs_ = std::move(next);
        buffer_.clear();
        ++epoch_;
    }
    return outcome;
}

RunTrace run(OnlineLearner& learner, StreamOracle& oracle, std::uint64_t horizon) {
    if (horizon < 1) throw PreconditionError("run needs T >= 1");
    RunTrace trace;
    trace.seed = oracle.seed();
    trace.steps.reserve(horizon);
    for (std::uint64_t t = 0; t < horizon; ++t) {
        auto ex = oracle.next_example();
        const Label y = ex.y;
        const auto outcome = learner.step(ex.x, [y](const Point&) { return y; });
        trace.steps.push_back({outcome.queried(), outcome.predicted_label, y, oracle.bayes_label(ex.x), outcome.epoch});
    }
    return trace;
}

RunTrace run_doubling(const LearnerFactory& factory, StreamOracle& oracle, std::uint64_t total) {
    if (total < 1) throw PreconditionError("run_doubling needs T >= 1");
    RunTrace trace;
    trace.seed = oracle.seed();
    trace.steps.reserve(total);
    std::uint64_t horizon = 2;
    while (trace.steps.size() < total) {
        const auto length = std::min<std::uint64_t>(horizon, total - trace.steps.size());
        auto learner = factory(horizon);
        auto segment = run(*learner, oracle, length);
        trace.steps.insert(trace.steps.end(), segment.steps.begin(), segment.steps.end());
        horizon *= 2;
    }
    return trace;
}

}  // namespace ola
