#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string_view>

#include "ola/hypothesis.hpp"
#include "ola/stream.hpp"
#include "ola/trace.hpp"
#include "ola/version_space.hpp"

namespace ola {

/// Reveals the label of the current instance. Learners call it only when they query.
using LabelSource = std::function<Label(const Point&)>;

struct StepOutcome {
    enum class Action { Queried, Predicted };
    Action action = Action::Queried;
    std::optional<Label> predicted_label;
    std::uint32_t epoch = 0;

    [[nodiscard]] bool queried() const { return action == Action::Queried; }

    static StepOutcome query(std::uint32_t epoch) { return {Action::Queried, std::nullopt, epoch}; }
    static StepOutcome predict(Label label, std::uint32_t epoch) { return {Action::Predicted, label, epoch}; }
};

/// Common step interface of OLA and the baselines.
class OnlineLearner {
public:
    virtual ~OnlineLearner() = default;

    virtual StepOutcome step(const Point& x, const LabelSource& label_source) = 0;
    [[nodiscard]] virtual std::string_view name() const = 0;
};

/// Emitted at every version-space update, before the old space is discarded.
struct EpochTransition {
    std::uint32_t from_epoch = 0;
    const VersionSpace* before = nullptr;
    const VersionSpace* after = nullptr;
    std::size_t erm_index = 0;
};

using EpochObserver = std::function<void(const EpochTransition&)>;

/// The epoch-based disagreement learner.
///
/// Queries exactly the instances inside the current disagreement region.
/// Once M labels have been collected in an epoch it prunes the version space
/// against the buffer's ERM, clears the buffer and starts the next epoch.
/// Outside the region every active hypothesis agrees and the lowest-index
/// one supplies the prediction.
class OlaLearner final : public OnlineLearner {
public:
    OlaLearner(std::shared_ptr<const HypothesisGrid> grid, ThresholdParams params);

    StepOutcome step(const Point& x, const LabelSource& label_source) override;
    [[nodiscard]] std::string_view name() const override { return "ola"; }

    void set_epoch_observer(EpochObserver observer) { observer_ = std::move(observer); }

    [[nodiscard]] const VersionSpace& version_space() const { return vs_; }
    [[nodiscard]] const QueryBuffer& buffer() const { return buffer_; }
    [[nodiscard]] const ThresholdParams& params() const { return params_; }
    [[nodiscard]] std::uint32_t epoch() const { return epoch_; }
    [[nodiscard]] std::uint64_t t() const { return t_; }

private:
    ThresholdParams params_;
    VersionSpace vs_;
    QueryBuffer buffer_;
    std::uint32_t epoch_ = 0;
    std::uint64_t t_ = 0;
    EpochObserver observer_;
};

/// Runs `learner` on T fresh examples from `oracle`. The trace records the
/// true and Bayes labels of every step, including ones the learner never saw.
RunTrace run(OnlineLearner& learner, StreamOracle& oracle, std::uint64_t horizon);

/// Builds a learner for a given horizon.
using LearnerFactory = std::function<std::unique_ptr<OnlineLearner>(std::uint64_t horizon)>;

/// Unknown-horizon mode: fresh learners with horizons 2, 4, 8, ... until
/// `total` steps are consumed; the last segment is truncated.
RunTrace run_doubling(const LearnerFactory& factory, StreamOracle& oracle, std::uint64_t total);

}  // namespace ola
