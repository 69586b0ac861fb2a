#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ola/config.hpp"
#include "ola/error.hpp"
#include "ola/experiment.hpp"
#include "ola/plot.hpp"

namespace ola {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("ola_test_" + name);
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

json small_fig1(std::uint64_t horizon, int seeds) {
    return {{"preset", "fig1"}, {"horizon", {{"T", horizon}}}, {"seeds", seeds}, {"a2", {{"n_mc", 500}}}};
}

TEST(Config, PresetFidelity) {
    const auto fig1 = parse_config(json{{"preset", "fig1"}});
    EXPECT_EQ(fig1.hypothesis_class, HypothesisClass::threshold());
    EXPECT_EQ(fig1.bayes_params, std::vector<double>{0.5});
    EXPECT_EQ(fig1.distribution.kind, InstanceDistribution::Kind::UniformCube);
    EXPECT_EQ(fig1.noise.kind, NoiseModel::Kind::MassartFlip);
    EXPECT_DOUBLE_EQ(fig1.noise.eta_high, 0.75);
    EXPECT_DOUBLE_EQ(fig1.noise.eta_low, 0.25);
    EXPECT_DOUBLE_EQ(fig1.noise.gamma(), 0.25);
    EXPECT_EQ(fig1.learners, (std::vector<std::string>{"ola", "a2", "dhm"}));

    const auto fig2 = parse_config(json{{"preset", "fig2"}});
    EXPECT_EQ(fig2.hypothesis_class, HypothesisClass::interval());
    EXPECT_DOUBLE_EQ(fig2.noise.eta_high, 0.75);
    EXPECT_DOUBLE_EQ(fig2.noise.eta_low, 0.25);

    const auto fig3 = parse_config(json{{"preset", "fig3"}});
    EXPECT_EQ(fig3.hypothesis_class, HypothesisClass::box());
    EXPECT_EQ(fig3.distribution.dim, 2u);
    EXPECT_DOUBLE_EQ(fig3.noise.eta_high, 0.75);

    for (const char* name : {"fig4", "fig5"}) {
        const auto sphere = parse_config(json{{"preset", name}});
        EXPECT_EQ(sphere.hypothesis_class, HypothesisClass::halfspace(2));
        EXPECT_EQ(sphere.distribution.kind, InstanceDistribution::Kind::UniformSphere);
        EXPECT_EQ(sphere.distribution.dim, 2u);
        EXPECT_EQ(sphere.noise.kind, NoiseModel::Kind::LinearSphere);
        EXPECT_EQ(sphere.noise.u, (std::vector<double>{1.0, 0.0}));
        EXPECT_EQ(sphere.learners, (std::vector<std::string>{"ola", "cbgz"}));
    }

    const auto real = parse_config(json{{"preset", "realizable"}});
    EXPECT_DOUBLE_EQ(real.noise.eta_high, 1.0);
    EXPECT_DOUBLE_EQ(real.noise.gamma(), 0.5);
}

TEST(Config, OverridesAndShorthands) {
    const auto c = parse_config(json{{"preset", "fig1"},
                                     {"learner", {{"kind", "ola"}}},
                                     {"seed", 9},
                                     {"ola", {{"m", 2.5}}},
                                     {"noise", {{"eta_high", 0.8}}}});
    EXPECT_EQ(c.learners, std::vector<std::string>{"ola"});
    EXPECT_EQ(c.seeds, std::vector<std::uint64_t>{9});
    EXPECT_DOUBLE_EQ(c.m, 2.5);
    EXPECT_DOUBLE_EQ(c.noise.eta_high, 0.8);
    EXPECT_EQ(parse_config(json{{"preset", "fig1"}, {"seeds", 3}}).seeds, (std::vector<std::uint64_t>{1, 2, 3}));
}

TEST(Config, ExplicitBlocksWithoutPreset) {
    const json raw = {{"hypothesis", {{"kind", "interval1d"}, {"resolution", 11}, {"bayes", {0.2, 0.6}}}},
                      {"stream", {{"distribution", "uniform_cube"}, {"dim", 1}}},
                      {"noise", {{"kind", "massart"}, {"eta_high", 0.9}, {"eta_low", 0.1}}}};
    const auto c = parse_config(raw);
    EXPECT_EQ(c.hypothesis_class, HypothesisClass::interval());
    EXPECT_DOUBLE_EQ(c.m, 350.0);
    EXPECT_EQ(c.learners, std::vector<std::string>{"ola"});
}

TEST(Config, DescriptiveErrors) {
    auto message = [](const json& raw) {
        try {
            (void)parse_config(raw);
        } catch (const ConfigError& e) {
            return std::string(e.what());
        }
        return std::string("<no error>");
    };
    EXPECT_NE(message(json{{"preset", "fig9"}}).find("fig9"), std::string::npos);
    EXPECT_NE(message(json{{"preset", "fig1"}, {"learner", {{"kind", "svm"}}}}).find("svm"), std::string::npos);
    EXPECT_NE(message(json{{"preset", "fig1"}, {"learner", {{"kind", "cbgz"}}}}).find("halfspace"), std::string::npos);
    EXPECT_NE(message(json{{"preset", "fig1"}, {"horizon", {{"T", 0}}}}).find("horizon.T"), std::string::npos);
    EXPECT_NE(message(json{{"preset", "fig1"}, {"ola", {{"m", -1}}}}).find("ola.m"), std::string::npos);
    EXPECT_NE(message(json{{"preset", "fig1"}, {"hypothesis", {{"bayes", {0.1, 0.2}}}}}).find("hypothesis.bayes"),
              std::string::npos);
    EXPECT_NE(message(json{{"stream", {{"dim", 1}}}}).find("hypothesis.kind"), std::string::npos);
    EXPECT_NE(message(json{{"preset", "fig1"}, {"noise", {{"kind", "uniform"}}}}).find("noise.kind"),
              std::string::npos);
    EXPECT_NE(message(json::array()).find("object"), std::string::npos);
}

TEST(Config, FingerprintTracksContentNotOutputPath) {
    auto a = parse_config(json{{"preset", "fig1"}});
    auto b = a;
    b.out = "elsewhere";
    EXPECT_EQ(fingerprint(a), fingerprint(b));
    b.m = 701;
    EXPECT_NE(fingerprint(a), fingerprint(b));
    EXPECT_EQ(fingerprint(parse_config(to_json(a))), fingerprint(a));
}

TEST(Experiment, ThreeSeedsAreReproducibleByteForByte) {
    const auto cfg = parse_config(small_fig1(100, 3));
    const auto a = run_experiment(cfg);
    const auto b = run_experiment(cfg);
    EXPECT_EQ(a.runs.size(), 9u);
    EXPECT_EQ(summary_csv(a), summary_csv(b));
    EXPECT_EQ(aggregate_csv(a), aggregate_csv(b));

    const auto dir = scratch("three_seeds");
    write_experiment(a, cfg, dir);
    const auto summary = slurp(dir / "summary.csv");
    std::size_t ola_rows = 0;
    std::istringstream lines(summary);
    std::string line;
    while (std::getline(lines, line)) ola_rows += line.rfind("ola,", 0) == 0;
    EXPECT_EQ(ola_rows, 3u);
    EXPECT_NE(summary.find(a.fingerprint), std::string::npos);
    const auto manifest = json::parse(slurp(dir / "manifest.json"));
    EXPECT_EQ(manifest["seeds"], json({1, 2, 3}));
    fs::remove_all(dir);
}

TEST(Experiment, OutputIndependentOfWorkerCount) {
    const auto cfg = parse_config(small_fig1(300, 4));
    setenv("OLA_WORKERS", "1", 1);
    const auto serial = aggregate_csv(run_experiment(cfg));
    setenv("OLA_WORKERS", "3", 1);
    const auto parallel = aggregate_csv(run_experiment(cfg));
    unsetenv("OLA_WORKERS");
    EXPECT_EQ(serial, parallel);
}

TEST(Experiment, AggregateSchemaAndLogGrid) {
    const auto result = run_experiment(parse_config(small_fig1(1000, 2)));
    const auto csv = aggregate_csv(result);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "t,learner,mean_Q,se_Q,mean_R,se_R,n_seeds");
    const auto grid = log_time_grid(1000);
    EXPECT_LE(grid.size(), 50u);
    EXPECT_EQ(grid.front(), 1u);
    EXPECT_EQ(grid.back(), 1000u);
    for (std::size_t i = 1; i < grid.size(); ++i) EXPECT_LT(grid[i - 1], grid[i]);
    for (const auto& p : result.curve) {
        EXPECT_EQ(p.n_seeds, 2u);
        EXPECT_LE(p.mean_q, static_cast<double>(p.t));
    }
}

TEST(Experiment, FailedWriteLeavesNoAggregate) {
    const auto cfg = parse_config(small_fig1(50, 1));
    const auto result = run_experiment(cfg);
    const auto dir = scratch("io_failure");
    fs::create_directories(dir / "summary.csv.tmp");  // a directory blocks the staged write
    EXPECT_ANY_THROW(write_experiment(result, cfg, dir));
    EXPECT_FALSE(fs::exists(dir / "aggregate.csv"));
    fs::remove_all(dir);
}

TEST(Experiment, UnknownHorizonUsesDoubling) {
    auto raw = small_fig1(500, 1);
    raw["learner"] = {{"kind", "ola"}};
    raw["horizon"]["unknown"] = true;
    const auto result = run_experiment(parse_config(raw));
    ASSERT_EQ(result.runs.size(), 1u);
    EXPECT_EQ(result.runs[0].horizon, 500u);
    EXPECT_EQ(result.runs[0].queries, 500u);
}

TEST(Sweep, HorizonAxisGivesOneRowPerValueAndLearner) {
    auto raw = small_fig1(100, 1);
    raw["learner"] = {{"kind", json::array({"ola", "dhm"})}};
    const auto points = sweep(raw, "horizon.T", {100, 200, 400});
    ASSERT_EQ(points.size(), 3u);
    const auto csv = sweep_csv("horizon.T", points);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 3 * 2);
    EXPECT_EQ(csv.rfind("horizon.T,learner,T,", 0), 0u);

    const auto m_points = sweep(raw, "ola.m", {2, 4, 8});
    EXPECT_EQ(m_points.size(), 3u);
    const auto r_points = sweep(raw, "hypothesis.resolution", {11, 21});
    EXPECT_EQ(r_points.size(), 2u);
}

TEST(Sweep, NonNumericAxisIsConfigError) {
    EXPECT_THROW((void)sweep(small_fig1(100, 1), "learner.kind", {1}), ConfigError);
    EXPECT_THROW((void)sweep(small_fig1(100, 1), "noise.kind", {1}), ConfigError);
    EXPECT_THROW((void)sweep(small_fig1(100, 1), "no.such", {1}), ConfigError);
    EXPECT_THROW((void)sweep(small_fig1(100, 1), "horizon.T", {10.5}), ConfigError);
}

TEST(Plot, EmptyCsvIsSchemaError) { EXPECT_THROW((void)parse_csv(""), SchemaError); }

TEST(Plot, MissingColumnIsNamed) {
    const auto table = parse_csv("t,learner,mean_R\n1,ola,0\n");
    try {
        (void)render_svg(table, PlotMetric::LabelComplexity);
        FAIL() << "expected a schema error";
    } catch (const SchemaError& e) {
        EXPECT_NE(std::string(e.what()).find("mean_Q"), std::string::npos);
    }
}

TEST(Plot, RenderingIsPureAndHasOneLinePerLearner) {
    const auto csv = aggregate_csv(run_experiment(parse_config(small_fig1(200, 2))));
    const auto a = render_svg(parse_csv(csv), PlotMetric::LabelComplexity);
    const auto b = render_svg(parse_csv(csv), PlotMetric::LabelComplexity);
    EXPECT_EQ(a, b);
    std::size_t lines = 0;
    for (auto pos = a.find("<polyline"); pos != std::string::npos; pos = a.find("<polyline", pos + 1)) ++lines;
    EXPECT_EQ(lines, 3u);
    for (const char* name : {">ola<", ">a2<", ">dhm<"}) EXPECT_NE(a.find(name), std::string::npos);
}

TEST(Plot, EmitWritesBothChartsDeterministically) {
    const auto cfg = parse_config(small_fig1(200, 1));
    const auto dir = scratch("plot");
    write_experiment(run_experiment(cfg), cfg, dir);
    const auto first = emit_plot(dir);
    ASSERT_EQ(first.size(), 2u);
    const auto bytes = slurp(dir / "label_complexity.svg");
    (void)emit_plot(dir);
    EXPECT_EQ(bytes, slurp(dir / "label_complexity.svg"));
    EXPECT_TRUE(fs::exists(dir / "regret.svg"));
    fs::remove_all(dir);
}

TEST(Plot, MissingAggregateIsSchemaError) {
    const auto dir = scratch("plot_missing");
    fs::create_directories(dir);
    EXPECT_THROW((void)emit_plot(dir), SchemaError);
    fs::remove_all(dir);
}

}  // namespace
}  // namespace ola
