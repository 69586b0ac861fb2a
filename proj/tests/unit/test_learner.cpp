#include <gtest/gtest.h>

#include <cmath>

#include "ola/analysis.hpp"
#include "ola/learner.hpp"
#include "oracles.hpp"

namespace ola {
namespace {

std::shared_ptr<const HypothesisGrid> threshold_grid(std::size_t g) {
    return std::make_shared<const HypothesisGrid>(build_grid(HypothesisClass::threshold(), g));
}

StreamOracle fig1_oracle(std::uint64_t seed) {
    return {InstanceDistribution::cube(1), NoiseModel::massart(0.75, 0.25), HypothesisClass::threshold(), {0.5}, seed};
}

// Wraps a learner and checks, on every step, the contract against the
// pre-step version space: query iff in the disagreement region, label_source
// called exactly once per query, and the predicted label equals every active
// hypothesis' label.
struct ContractCheck {
    OlaLearner& learner;
    std::uint64_t calls = 0;

    StepOutcome step(const Point& x, Label y) {
        const VersionSpace before = learner.version_space();
        const bool disagree = in_disagreement(before, x);
        const auto calls_before = calls;
        const auto out = learner.step(x, [&](const Point&) {
            ++calls;
            return y;
        });
        EXPECT_EQ(out.queried(), disagree);
        EXPECT_EQ(calls - calls_before, out.queried() ? 1u : 0u);
        EXPECT_EQ(out.predicted_label.has_value(), !out.queried());
        if (!out.queried()) {
            for (auto h : before.active()) EXPECT_EQ(before.grid().classify(h, x), *out.predicted_label);
        }
        return out;
    }
};

TEST(OlaLearner, EpochZeroAlwaysQueries) {
    auto oracle = fig1_oracle(1);
    OlaLearner learner(threshold_grid(201), ThresholdParams::make(10000, 1, 700.0));
    for (int t = 0; t < 500; ++t) {
        const auto ex = oracle.next_example();
        EXPECT_TRUE(learner.step(ex.x, [&](const Point&) { return ex.y; }).queried());
    }
    EXPECT_EQ(learner.epoch(), 0u);
    EXPECT_EQ(learner.buffer().size(), 500u);
}

TEST(OlaLearner, CollapsedVersionSpaceNeverAsks) {
    auto grid = threshold_grid(2);  // {z=0, z=1}: disagree only on [0,1).
    OlaLearner learner(grid, ThresholdParams::make(1000, 1, 50.0));
    // Drive to a single survivor with strongly informative labels.
    std::size_t steps = 0;
    while (learner.version_space().active_count() > 1 && steps < 10000) {
        (void)learner.step(Point{0.5}, [](const Point&) { return 1; });
        ++steps;
    }
    ASSERT_EQ(learner.version_space().active_count(), 1u);
    auto oracle = fig1_oracle(4);
    for (int t = 0; t < 1000; ++t) {
        const auto ex = oracle.next_example();
        const auto out = learner.step(ex.x, [](const Point&) -> Label {
            ADD_FAILURE() << "label requested from a collapsed version space";
            return 0;
        });
        EXPECT_FALSE(out.queried());
    }
}

TEST(OlaLearner, MthQueryPrunesExactlyOnce) {
    auto oracle = fig1_oracle(2);
    const auto params = ThresholdParams::make(2000, 1, 10.0);
    OlaLearner learner(threshold_grid(201), params);
    int transitions = 0;
    learner.set_epoch_observer([&](const EpochTransition& e) {
        ++transitions;
        EXPECT_EQ(e.from_epoch + 1u, static_cast<std::uint32_t>(transitions));
        EXPECT_TRUE(e.after->is_subset_of(*e.before));
        EXPECT_TRUE(e.after->is_active(e.erm_index));
    });
    std::uint64_t queries = 0;
    for (int t = 0; t < 2000; ++t) {
        const auto ex = oracle.next_example();
        const auto epoch_before = learner.epoch();
        const auto out = learner.step(ex.x, [&](const Point&) { return ex.y; });
        queries += out.queried();
        EXPECT_EQ(out.epoch, epoch_before);
        EXPECT_EQ(learner.buffer().size(), queries % params.M);
        EXPECT_EQ(learner.epoch(), queries / params.M);
        EXPECT_EQ(learner.t(), static_cast<std::uint64_t>(t + 1));
    }
    EXPECT_EQ(static_cast<std::uint64_t>(transitions), queries / params.M);
    EXPECT_GT(transitions, 0);
}

TEST(OlaLearner, QueryRuleAndPredictionAgreement) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        StreamOracle oracle(InstanceDistribution::cube(1), NoiseModel::massart(1.0, 0.0), HypothesisClass::threshold(),
                            {0.5}, seed);
        OlaLearner learner(threshold_grid(101), ThresholdParams::make(5000, 1, 100.0));
        ContractCheck check{learner};
        std::uint64_t predicted = 0;
        for (int t = 0; t < 5000; ++t) {
            const auto ex = oracle.next_example();
            predicted += !check.step(ex.x, ex.y).queried();
        }
        EXPECT_GT(predicted, 0u) << "the test never exercised the prediction branch";
    }
}

TEST(OlaLearner, ContractHoldsOnBoxesAndHalfspaces) {
    {
        auto grid = std::make_shared<const HypothesisGrid>(build_grid(HypothesisClass::box(), 7));
        StreamOracle oracle(InstanceDistribution::cube(2), NoiseModel::massart(), HypothesisClass::box(),
                            {0.15, 0.85, 0.15, 0.85}, 3);
        OlaLearner learner(grid, ThresholdParams::make(3000, 3, 2.0));
        ContractCheck check{learner};
        for (int t = 0; t < 3000; ++t) {
            const auto ex = oracle.next_example();
            (void)check.step(ex.x, ex.y);
        }
        EXPECT_GT(learner.epoch(), 0u);
    }
    {
        auto grid = std::make_shared<const HypothesisGrid>(build_grid(HypothesisClass::halfspace(2), 64));
        StreamOracle oracle(InstanceDistribution::sphere(2), NoiseModel::linear_sphere({1.0, 0.0}),
                            HypothesisClass::halfspace(2), {1.0, 0.0}, 3);
        OlaLearner learner(grid, ThresholdParams::make(3000, 2, 2.0));
        ContractCheck check{learner};
        for (int t = 0; t < 3000; ++t) {
            const auto ex = oracle.next_example();
            (void)check.step(ex.x, ex.y);
        }
        EXPECT_GT(learner.epoch(), 0u);
    }
}

TEST(Run, SingleStepQueries) {
    auto oracle = fig1_oracle(1);
    OlaLearner learner(threshold_grid(201), ThresholdParams::make(1, 1, 700.0));
    const auto trace = run(learner, oracle, 1);
    ASSERT_EQ(trace.size(), 1u);
    EXPECT_TRUE(trace.steps[0].queried);
}

TEST(Run, ShortHorizonHasNoEpochTransition) {
    auto oracle = fig1_oracle(1);
    const auto params = ThresholdParams::make(1000, 1, 700.0);
    ASSERT_GT(params.M, 1000u);
    OlaLearner learner(threshold_grid(201), params);
    const auto trace = run(learner, oracle, 1000);
    EXPECT_EQ(learner.epoch(), 0u);
    for (const auto& s : trace.steps) EXPECT_EQ(s.epoch, 0u);
}

TEST(Run, RecordsTrueAndBayesLabels) {
    auto oracle = fig1_oracle(6);
    auto replay = fig1_oracle(6);
    OlaLearner learner(threshold_grid(201), ThresholdParams::make(500, 1, 1.0));
    const auto trace = run(learner, oracle, 500);
    for (const auto& s : trace.steps) {
        const auto ex = replay.next_example();
        EXPECT_EQ(s.y_true, ex.y);
        EXPECT_EQ(s.y_bayes, replay.bayes_label(ex.x));
    }
    EXPECT_EQ(trace.seed, 6u);
}

TEST(Run, BitIdenticalAcrossExecutions) {
    auto once = [] {
        auto oracle = fig1_oracle(11);
        OlaLearner learner(threshold_grid(201), ThresholdParams::make(3000, 1, 4.0));
        return run(learner, oracle, 3000);
    };
    const auto a = once();
    const auto b = once();
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a.steps[i].queried, b.steps[i].queried);
        EXPECT_EQ(a.steps[i].predicted, b.steps[i].predicted);
        EXPECT_EQ(a.steps[i].y_true, b.steps[i].y_true);
        EXPECT_EQ(a.steps[i].epoch, b.steps[i].epoch);
    }
}

TEST(Run, QueryCountEqualsLabelSourceCalls) {
    struct Counting final : OnlineLearner {
        OlaLearner inner;
        std::uint64_t calls = 0;
        explicit Counting(OlaLearner l) : inner(std::move(l)) {}
        StepOutcome step(const Point& x, const LabelSource& src) override {
            return inner.step(x, [&](const Point& p) {
                ++calls;
                return src(p);
            });
        }
        [[nodiscard]] std::string_view name() const override { return "counting"; }
    };
    auto oracle = fig1_oracle(8);
    Counting learner(OlaLearner(threshold_grid(201), ThresholdParams::make(10000, 1, 700.0)));
    const auto trace = run(learner, oracle, 10000);
    const auto metrics = compute_metrics(trace);
    EXPECT_EQ(metrics.final_queries(), learner.calls);
    EXPECT_LT(learner.calls, 10000u);
}

TEST(RunDoubling, SegmentsAreTwoFourOne) {
    auto oracle = fig1_oracle(1);
    std::vector<std::uint64_t> horizons;
    const auto trace = run_doubling(
        [&](std::uint64_t horizon) {
            horizons.push_back(horizon);
            return std::make_unique<OlaLearner>(threshold_grid(11), ThresholdParams::make(horizon, 1, 700.0));
        },
        oracle, 7);
    EXPECT_EQ(trace.size(), 7u);
    EXPECT_EQ(horizons, (std::vector<std::uint64_t>{2, 4, 8}));
}

TEST(RunDoubling, TwoStepsMatchesPlainRun) {
    auto a = fig1_oracle(5);
    auto b = fig1_oracle(5);
    const auto doubled = run_doubling(
        [](std::uint64_t h) {
            return std::make_unique<OlaLearner>(threshold_grid(201), ThresholdParams::make(h, 1, 700.0));
        },
        a, 2);
    OlaLearner learner(threshold_grid(201), ThresholdParams::make(2, 1, 700.0));
    const auto plain = run(learner, b, 2);
    ASSERT_EQ(doubled.size(), plain.size());
    for (std::size_t i = 0; i < plain.size(); ++i) {
        EXPECT_EQ(doubled.steps[i].queried, plain.steps[i].queried);
        EXPECT_EQ(doubled.steps[i].y_true, plain.steps[i].y_true);
        EXPECT_EQ(doubled.steps[i].predicted, plain.steps[i].predicted);
    }
}

// The doubling trick costs at most a constant factor in labels.
TEST(RunDoubling, LabelCostWithinFourTimesKnownHorizon) {
    const std::uint64_t horizon = 10000;
    double known = 0.0;
    double doubled = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto a = fig1_oracle(seed);
        OlaLearner learner(threshold_grid(201), ThresholdParams::make(horizon, 1, 700.0));
        known += static_cast<double>(compute_metrics(run(learner, a, horizon)).final_queries());
        auto b = fig1_oracle(seed);
        doubled += static_cast<double>(compute_metrics(run_doubling(
                                                           [](std::uint64_t h) {
                                                               return std::make_unique<OlaLearner>(
                                                                   threshold_grid(201), ThresholdParams::make(h, 1, 700.0));
                                                           },
                                                           b, horizon))
                                           .final_queries());
    }
    EXPECT_LE(doubled, 4.0 * known);
}

}  // namespace
}  // namespace ola
