#include <benchmark/benchmark.h>

#include <memory>

#include "ola/learner.hpp"
#include "ola/stream.hpp"
#include "ola/version_space.hpp"

namespace {

std::shared_ptr<const ola::HypothesisGrid> grid_for(ola::HypothesisKind kind, std::size_t resolution) {
    ola::HypothesisClass cls = kind == ola::HypothesisKind::Box2D        ? ola::HypothesisClass::box()
                               : kind == ola::HypothesisKind::Interval1D ? ola::HypothesisClass::interval()
                                                                         : ola::HypothesisClass::threshold();
    return std::make_shared<const ola::HypothesisGrid>(ola::build_grid(cls, resolution));
}

ola::StreamOracle oracle_for(ola::HypothesisKind kind, std::uint64_t seed) {
    if (kind == ola::HypothesisKind::Box2D) {
        return {ola::InstanceDistribution::cube(2), ola::NoiseModel::massart(), ola::HypothesisClass::box(),
                {0.15, 0.85, 0.15, 0.85}, seed};
    }
    if (kind == ola::HypothesisKind::Interval1D) {
        return {ola::InstanceDistribution::cube(1), ola::NoiseModel::massart(), ola::HypothesisClass::interval(),
                {0.25, 0.75}, seed};
    }
    return {ola::InstanceDistribution::cube(1), ola::NoiseModel::massart(), ola::HypothesisClass::threshold(), {0.5},
            seed};
}

// Worst case for the early exit: points outside the disagreement region of a
// narrow version space force a scan of every active hypothesis.
void BM_InDisagreementFullScan(benchmark::State& state) {
    const auto grid = grid_for(ola::HypothesisKind::Box2D, static_cast<std::size_t>(state.range(0)));
    std::vector<std::uint8_t> mask(grid->size(), 0);
    std::size_t kept = 0;
    for (std::size_t h = 0; h < grid->size(); ++h) {
        const auto p = grid->params(h);
        // Boxes that all contain the centre: they agree there.
        if (p[0] <= 0.5 && p[1] >= 0.5 && p[2] <= 0.5 && p[3] >= 0.5) {
            mask[h] = 1;
            ++kept;
        }
    }
    const ola::VersionSpace vs(grid, mask);
    const ola::Point centre{0.5, 0.5};
    for (auto _ : state) benchmark::DoNotOptimize(ola::in_disagreement(vs, centre));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * kept));
}
BENCHMARK(BM_InDisagreementFullScan)->Arg(11)->Arg(21);

void BM_Prune(benchmark::State& state) {
    const auto kind = static_cast<ola::HypothesisKind>(state.range(0));
    const auto grid = grid_for(kind, kind == ola::HypothesisKind::Box2D ? 11 : 201);
    auto oracle = oracle_for(kind, 1);
    const std::size_t m = static_cast<std::size_t>(state.range(1));
    ola::QueryBuffer z(m);
    for (std::size_t i = 0; i < m; ++i) z.push(oracle.next_example());
    const ola::VersionSpace vs(grid);
    const auto params = ola::ThresholdParams::make(10000, grid->hypothesis_class().vc_dimension(), 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(ola::prune(z, vs, params));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * m * grid->size()));
}
BENCHMARK(BM_Prune)
    ->Args({static_cast<int>(ola::HypothesisKind::Threshold1D), 6450})
    ->Args({static_cast<int>(ola::HypothesisKind::Interval1D), 1000})
    ->Args({static_cast<int>(ola::HypothesisKind::Box2D), 1000});

// A full fig1-style run: T steps of OLA including every epoch transition.
void BM_OlaRun(benchmark::State& state) {
    const auto horizon = static_cast<std::uint64_t>(state.range(0));
    const auto grid = grid_for(ola::HypothesisKind::Threshold1D, 201);
    std::uint64_t seed = 1;
    for (auto _ : state) {
        auto oracle = oracle_for(ola::HypothesisKind::Threshold1D, seed++);
        ola::OlaLearner learner(grid, ola::ThresholdParams::make(horizon, 1, 700.0));
        benchmark::DoNotOptimize(ola::run(learner, oracle, horizon));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * horizon));
}
BENCHMARK(BM_OlaRun)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
