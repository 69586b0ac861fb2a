// Command line front end: run, sweep, theta, plot.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "ola/analysis.hpp"
#include "ola/config.hpp"
#include "ola/error.hpp"
#include "ola/experiment.hpp"
#include "ola/plot.hpp"

namespace {

nlohmann::json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ola::ConfigError(fmt::format("cannot open config file '{}'", path));
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ola::ConfigError(fmt::format("config file '{}' is not valid JSON: {}", path, e.what()));
    }
}

std::vector<double> parse_values(const std::string& list) {
    std::vector<double> values;
    std::stringstream in(list);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            values.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ola::ConfigError(fmt::format("--values: '{}' is not a number", item));
        }
    }
    if (values.empty()) throw ola::ConfigError("--values is empty");
    return values;
}

void print_finals(const ola::AggregateResult& result) {
    for (const auto& p : result.curve) {
        if (p.t != result.runs.front().horizon) continue;
        std::cout << fmt::format("  {:>5}  Q(T) = {:.1f} +- {:.1f}   R(T) = {:.3f} +- {:.3f}   ({} seeds)\n", p.learner,
                                 p.mean_q, p.se_q, p.mean_r, p.se_r, p.n_seeds);
    }
}

int cmd_run(const std::string& config_path, std::string out_dir) {
    const auto config = ola::parse_config(read_json(config_path));
    if (out_dir.empty()) out_dir = config.out.empty() ? "out" : config.out;
    const auto result = ola::run_experiment(config);
    ola::write_experiment(result, config, out_dir);
    std::cout << fmt::format("wrote {}/aggregate.csv ({} runs, fingerprint {})\n", out_dir, result.runs.size(),
                             result.fingerprint);
    print_finals(result);
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& axis, const std::string& values,
              const std::string& out_dir) {
    const auto raw = read_json(config_path);
    const auto points = ola::sweep(raw, axis, parse_values(values));
    ola::write_sweep(axis, points, raw, out_dir);
    std::cout << ola::sweep_csv(axis, points);
    return 0;
}

int cmd_theta(const std::string& config_path) {
    const auto config = ola::parse_config(read_json(config_path));
    const auto grid = ola::make_grid(config);
    const auto bayes = grid->nearest(config.bayes_params);
    ola::Rng eval = ola::Rng(config.seeds.front()).split(0xe7a1);
    const auto est = ola::estimate_theta(*grid, bayes, config.distribution, config.r_grid, config.n_mc, eval);
    std::cout << "r,phi_over_r\n";
    for (std::size_t i = 0; i < est.radii.size(); ++i) std::cout << fmt::format("{},{}\n", est.radii[i], est.ratios[i]);
    std::cout << fmt::format("theta = {:.4f}\n", est.theta);

    const double gamma = config.noise.gamma();
    if (gamma > 0.0) {
        const int d = config.hypothesis_class.vc_dimension();
        const auto at_m = ola::theorem2_bound(d, config.m, est.theta, gamma, config.horizon);
        const double m_theory = 256.0 * est.theta * est.theta / (gamma * gamma);
        const auto at_theory = ola::theorem2_bound(d, m_theory, est.theta, gamma, config.horizon);
        std::cout << fmt::format("label bound at m = {}: c = {:.4f}, bound = {:.4g}{}\n", config.m, at_m.c, at_m.value,
                                 at_m.in_regime ? "" : " (out of regime)");
        std::cout << fmt::format("label bound at m = 256 theta^2/gamma^2 = {:.1f}: c = {:.4f}, bound = {:.4g}\n",
                                 m_theory, at_theory.c, at_theory.value);
    } else {
        std::cout << "noise has no Massart margin; label bound not applicable\n";
    }
    return 0;
}

int cmd_plot(const std::string& in_dir) {
    for (const auto& p : ola::emit_plot(in_dir)) std::cout << "wrote " << p.string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Online disagreement-based active learning simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    auto* run = app.add_subcommand("run", "Run every learner and seed of a config");
    run->add_option("--config", config_path, "JSON config file")->required();
    run->add_option("--out", out_dir, "Output directory (default: config 'out' or ./out)");

    std::string axis;
    std::string values;
    std::string sweep_out = "sweep_out";
    auto* sw = app.add_subcommand("sweep", "Repeat an experiment over values of one numeric key");
    sw->add_option("--config", config_path, "JSON config file")->required();
    sw->add_option("--axis", axis, "Dotted numeric key, e.g. horizon.T")->required();
    sw->add_option("--values", values, "Comma separated values")->required();
    sw->add_option("--out", sweep_out, "Output directory")->capture_default_str();

    auto* theta = app.add_subcommand("theta", "Estimate the disagreement coefficient of a config");
    theta->add_option("--config", config_path, "JSON config file")->required();

    std::string in_dir;
    auto* plot = app.add_subcommand("plot", "Render SVG charts from an aggregate.csv");
    plot->add_option("--in", in_dir, "Directory holding aggregate.csv")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path, out_dir);
        if (sw->parsed()) return cmd_sweep(config_path, axis, values, sweep_out);
        if (theta->parsed()) return cmd_theta(config_path);
        if (plot->parsed()) return cmd_plot(in_dir);
    } catch (const ola::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const ola::SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
