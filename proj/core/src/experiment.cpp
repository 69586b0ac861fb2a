#include "ola/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

#include <fmt/format.h>

#include "ola/analysis.hpp"
#include "ola/baselines.hpp"
#include "ola/error.hpp"

namespace ola {

namespace {

enum : std::uint64_t { kCbgzStream = 1, kA2Stream = 2 };

}  // namespace

std::shared_ptr<const HypothesisGrid> make_grid(const ExperimentConfig& config) {
    return std::make_shared<const HypothesisGrid>(build_grid(config.hypothesis_class, config.resolution));
}

StreamOracle make_oracle(const ExperimentConfig& config, std::uint64_t seed) {
    return StreamOracle(config.distribution, config.noise, config.hypothesis_class, config.bayes_params, seed);
}

std::unique_ptr<OnlineLearner> make_learner(const ExperimentConfig& config, const std::string& kind,
                                            std::shared_ptr<const HypothesisGrid> grid, std::uint64_t horizon,
                                            std::uint64_t seed) {
    const Rng base(seed);
    if (kind == "ola") {
        const auto params = ThresholdParams::make(horizon, config.hypothesis_class.vc_dimension(), config.m,
                                                  config.threshold_rule());
        return std::make_unique<OlaLearner>(std::move(grid), params);
    }
    if (kind == "cal") return std::make_unique<CalLearner>(std::move(grid));
    if (kind == "a2") {
        A2Learner::Options options;
        options.n_mc = config.a2_n_mc;
        return std::make_unique<A2Learner>(std::move(grid), horizon, config.distribution,
                                           base.split(kA2Stream).split(horizon), options);
    }
    if (kind == "dhm") return std::make_unique<DhmLearner>(std::move(grid), horizon);
    if (kind == "cbgz") {
        return std::make_unique<CbgzLearner>(config.distribution.dim, config.cbgz_b,
                                             base.split(kCbgzStream).split(horizon));
    }
    throw ConfigError(fmt::format("unknown learner.kind '{}'", kind));
}

RunTrace run_single(const ExperimentConfig& config, const std::string& kind,
                    std::shared_ptr<const HypothesisGrid> grid, std::uint64_t seed, const RunHooks& hooks) {
    auto oracle = make_oracle(config, seed);
    RunTrace trace;
    if (config.unknown_horizon) {
        // Hooks see only the last segment's learner.
        std::unique_ptr<OnlineLearner> last;
        const LearnerFactory factory = [&](std::uint64_t horizon) -> std::unique_ptr<OnlineLearner> {
            auto learner = make_learner(config, kind, grid, horizon, seed);
            if (hooks.on_start) hooks.on_start(kind, seed, *learner);
            struct Forward final : OnlineLearner {
                explicit Forward(OnlineLearner* inner) : inner(inner) {}
                StepOutcome step(const Point& x, const LabelSource& src) override { return inner->step(x, src); }
                [[nodiscard]] std::string_view name() const override { return inner->name(); }
                OnlineLearner* inner;
            };
            last = std::move(learner);
            return std::make_unique<Forward>(last.get());
        };
        trace = run_doubling(factory, oracle, config.horizon);
        trace.fingerprint = fingerprint(config);
        if (hooks.on_finish) hooks.on_finish(kind, seed, *last, trace);
        return trace;
    }
    auto learner = make_learner(config, kind, grid, config.horizon, seed);
    if (hooks.on_start) hooks.on_start(kind, seed, *learner);
    trace = run(*learner, oracle, config.horizon);
    trace.fingerprint = fingerprint(config);
    if (hooks.on_finish) hooks.on_finish(kind, seed, *learner, trace);
    return trace;
}

std::vector<std::uint64_t> log_time_grid(std::uint64_t horizon, std::size_t points) {
    std::vector<std::uint64_t> grid;
    if (horizon == 0) return grid;
    const double top = std::log(static_cast<double>(horizon));
    for (std::size_t i = 0; i < points; ++i) {
        const double frac = points == 1 ? 1.0 : static_cast<double>(i) / static_cast<double>(points - 1);
        auto t = static_cast<std::uint64_t>(std::llround(std::exp(top * frac)));
        t = std::clamp<std::uint64_t>(t, 1, horizon);
        if (grid.empty() || grid.back() != t) grid.push_back(t);
    }
    if (grid.back() != horizon) grid.push_back(horizon);
    return grid;
}

std::size_t worker_count() {
    if (const char* env = std::getenv("OLA_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) return static_cast<std::size_t>(v);
        throw ConfigError(fmt::format("OLA_WORKERS must be a positive integer, got '{}'", env));
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

struct RunResult {
    SeedSummary summary;
    std::vector<std::uint64_t> q;  // sampled on the time grid
    std::vector<std::int64_t> r;
};

std::pair<double, double> mean_se(const std::vector<double>& xs) {
    const auto n = static_cast<double>(xs.size());
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= n;
    if (xs.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

void write_file_atomically(const std::filesystem::path& path, const std::string& content) {
    const auto staged = path.string() + ".tmp";
    {
        std::ofstream out(staged, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", staged));
        out << content;
        out.flush();
        if (!out) throw std::runtime_error(fmt::format("write to '{}' failed", staged));
    }
    std::filesystem::rename(staged, path);
}

}  // namespace

AggregateResult run_experiment(const ExperimentConfig& config, const RunHooks& hooks) {
    const auto grid = make_grid(config);
    const auto times = log_time_grid(config.horizon);
    const std::size_t n_jobs = config.learners.size() * config.seeds.size();
    std::vector<RunResult> results(n_jobs);

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t job = next++; job < n_jobs; job = next++) {
            try {
                const auto& kind = config.learners[job / config.seeds.size()];
                const auto seed = config.seeds[job % config.seeds.size()];
                const auto trace = run_single(config, kind, grid, seed, hooks);
                const auto metrics = compute_metrics(trace);
                RunResult r;
                r.summary = {kind, seed, config.horizon, metrics.final_queries(), metrics.final_regret(),
                             trace.steps.empty() ? 0u : trace.steps.back().epoch};
                for (auto t : times) {
                    r.q.push_back(metrics.queries[t - 1]);
                    r.r.push_back(metrics.regret[t - 1]);
                }
                results[job] = std::move(r);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = n_jobs;
            }
        }
    };
    const auto n_workers = std::min(worker_count(), n_jobs);
    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t i = 0; i < n_workers; ++i) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    AggregateResult out;
    out.fingerprint = fingerprint(config);
    for (const auto& r : results) out.runs.push_back(r.summary);
    const auto n_seeds = config.seeds.size();
    for (std::size_t l = 0; l < config.learners.size(); ++l) {
        for (std::size_t i = 0; i < times.size(); ++i) {
            std::vector<double> qs;
            std::vector<double> rs;
            for (std::size_t s = 0; s < n_seeds; ++s) {
                const auto& r = results[l * n_seeds + s];
                qs.push_back(static_cast<double>(r.q[i]));
                rs.push_back(static_cast<double>(r.r[i]));
            }
            const auto [mq, sq] = mean_se(qs);
            const auto [mr, sr] = mean_se(rs);
            out.curve.push_back({times[i], config.learners[l], mq, sq, mr, sr, n_seeds});
        }
    }
    return out;
}

std::string aggregate_csv(const AggregateResult& result) {
    std::string s = "t,learner,mean_Q,se_Q,mean_R,se_R,n_seeds\n";
    for (const auto& p : result.curve) {
        s += fmt::format("{},{},{},{},{},{},{}\n", p.t, p.learner, p.mean_q, p.se_q, p.mean_r, p.se_r, p.n_seeds);
    }
    return s;
}

std::string summary_csv(const AggregateResult& result) {
    std::string s = "learner,seed,T,Q_T,R_T,final_epoch,fingerprint\n";
    for (const auto& r : result.runs) {
        s += fmt::format("{},{},{},{},{},{},{}\n", r.learner, r.seed, r.horizon, r.queries, r.regret, r.final_epoch,
                         result.fingerprint);
    }
    return s;
}

void write_experiment(const AggregateResult& result, const ExperimentConfig& config, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    nlohmann::json manifest = {{"config", to_json(config)},
                               {"fingerprint", result.fingerprint},
                               {"seeds", config.seeds},
                               {"runs", result.runs.size()}};
    write_file_atomically(dir / "summary.csv", summary_csv(result));
    write_file_atomically(dir / "manifest.json", manifest.dump(2) + "\n");
    write_file_atomically(dir / "aggregate.csv", aggregate_csv(result));
}

std::vector<SweepPoint> sweep(const nlohmann::json& raw_config, const std::string& axis,
                              const std::vector<double>& values, const RunHooks& hooks) {
    if (values.empty()) throw ConfigError("sweep needs at least one value");
    const auto base = resolve_config_json(raw_config);
    std::vector<SweepPoint> out;
    for (double v : values) {
        auto j = base;
        set_numeric_key(j, axis, v);
        out.push_back({v, run_experiment(parse_config(j), hooks)});
    }
    return out;
}

std::string sweep_csv(const std::string& axis, const std::vector<SweepPoint>& points) {
    std::string s = fmt::format("{},learner,T,mean_Q,se_Q,mean_R,se_R,n_seeds\n", axis);
    for (const auto& p : points) {
        // The last curve point of each learner is its final (T) value.
        std::map<std::string, CurvePoint> last;
        std::vector<std::string> order;
        for (const auto& c : p.result.curve) {
            if (!last.contains(c.learner)) order.push_back(c.learner);
            last[c.learner] = c;
        }
        for (const auto& name : order) {
            const auto& c = last[name];
            s += fmt::format("{},{},{},{},{},{},{},{}\n", p.value, name, c.t, c.mean_q, c.se_q, c.mean_r, c.se_r,
                             c.n_seeds);
        }
    }
    return s;
}

void write_sweep(const std::string& axis, const std::vector<SweepPoint>& points, const nlohmann::json& raw_config,
                 const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    const auto base = resolve_config_json(raw_config);
    for (const auto& p : points) {
        auto j = base;
        set_numeric_key(j, axis, p.value);
        write_experiment(p.result, parse_config(j), dir / fmt::format("{}={}", axis, p.value));
    }
    write_file_atomically(dir / "sweep.csv", sweep_csv(axis, points));
}

}  // namespace ola
