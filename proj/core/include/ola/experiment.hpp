#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ola/config.hpp"
#include "ola/learner.hpp"
#include "ola/stream.hpp"

namespace ola {

struct SeedSummary {
    std::string learner;
    std::uint64_t seed = 0;
    std::uint64_t horizon = 0;
    std::uint64_t queries = 0;
    std::int64_t regret = 0;
    std::uint32_t final_epoch = 0;
};

struct CurvePoint {
    std::uint64_t t = 0;
    std::string learner;
    double mean_q = 0.0;
    double se_q = 0.0;
    double mean_r = 0.0;
    double se_r = 0.0;
    std::size_t n_seeds = 0;
};

struct AggregateResult {
    std::vector<SeedSummary> runs;  // learner-major, then seed order
    std::vector<CurvePoint> curve;  // learner-major, then ascending t
    std::string fingerprint;
};

/// Optional callbacks for callers that want to inspect runs (tests, audits).
/// They may be invoked concurrently from worker threads.
struct RunHooks {
    // Called after a learner is built and before its first step.
    std::function<void(const std::string& learner, std::uint64_t seed, OnlineLearner&)> on_start;
    // Called after the last step.
    std::function<void(const std::string& learner, std::uint64_t seed, OnlineLearner&, const RunTrace&)> on_finish;
};

/// Shared grid for a config (the box grid is large, so build it once).
[[nodiscard]] std::shared_ptr<const HypothesisGrid> make_grid(const ExperimentConfig& config);

[[nodiscard]] StreamOracle make_oracle(const ExperimentConfig& config, std::uint64_t seed);

/// Learner of the given kind for one run. Learner-private randomness is
/// split off the run seed, so it never touches the stream.
[[nodiscard]] std::unique_ptr<OnlineLearner> make_learner(const ExperimentConfig& config, const std::string& kind,
                                                          std::shared_ptr<const HypothesisGrid> grid,
                                                          std::uint64_t horizon, std::uint64_t seed);

/// One run of one learner. Every learner sees the same stream for the same seed.
[[nodiscard]] RunTrace run_single(const ExperimentConfig& config, const std::string& kind,
                                  std::shared_ptr<const HypothesisGrid> grid, std::uint64_t seed,
                                  const RunHooks& hooks = {});

/// 50-point logarithmic grid on [1, T], deduplicated, always ending at T.
[[nodiscard]] std::vector<std::uint64_t> log_time_grid(std::uint64_t horizon, std::size_t points = 50);

/// Worker count from OLA_WORKERS, else the hardware concurrency (at least 1).
[[nodiscard]] std::size_t worker_count();

/// All learners x seeds of a config. The result does not depend on the
/// number of workers or on scheduling.
[[nodiscard]] AggregateResult run_experiment(const ExperimentConfig& config, const RunHooks& hooks = {});

/// Writes summary.csv, aggregate.csv and manifest.json into `dir`. Files are
/// staged and renamed; if any write fails nothing is left behind for
/// aggregate.csv.
void write_experiment(const AggregateResult& result, const ExperimentConfig& config, const std::filesystem::path& dir);

[[nodiscard]] std::string aggregate_csv(const AggregateResult& result);
[[nodiscard]] std::string summary_csv(const AggregateResult& result);

struct SweepPoint {
    double value = 0.0;
    AggregateResult result;
};

/// One run_experiment per value of a numeric config key.
[[nodiscard]] std::vector<SweepPoint> sweep(const nlohmann::json& raw_config, const std::string& axis,
                                            const std::vector<double>& values, const RunHooks& hooks = {});

/// Final Q(T), R(T) per value and learner, with the axis as first column.
[[nodiscard]] std::string sweep_csv(const std::string& axis, const std::vector<SweepPoint>& points);

/// Writes sweep.csv plus one experiment directory per value.
void write_sweep(const std::string& axis, const std::vector<SweepPoint>& points, const nlohmann::json& raw_config,
                 const std::filesystem::path& dir);

}  // namespace ola
