#include "ola/plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "ola/error.hpp"

namespace ola {

std::size_t CsvTable::column(const std::string& name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw SchemaError(fmt::format("missing column '{}'", name));
    return static_cast<std::size_t>(it - header.begin());
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

double to_double(const std::string& s, const std::string& column) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw SchemaError(fmt::format("column '{}' has non-numeric value '{}'", column, s));
    }
}

constexpr std::array<const char*, 6> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

}  // namespace

CsvTable parse_csv(const std::string& text) {
    CsvTable table;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cells = split_line(line);
        if (table.header.empty()) {
            table.header = std::move(cells);
            continue;
        }
        if (cells.size() != table.header.size()) {
            throw SchemaError(fmt::format("row has {} cells, header has {}", cells.size(), table.header.size()));
        }
        table.rows.push_back(std::move(cells));
    }
    if (table.header.empty()) throw SchemaError("empty CSV: no header row");
    return table;
}

std::string render_svg(const CsvTable& aggregate, PlotMetric metric) {
    const auto c_t = aggregate.column("t");
    const auto c_learner = aggregate.column("learner");
    const std::string value_name = metric == PlotMetric::LabelComplexity ? "mean_Q" : "mean_R";
    const auto c_value = aggregate.column(value_name);
    if (aggregate.rows.empty()) throw SchemaError("aggregate CSV has no data rows");

    std::vector<std::string> learners;
    std::map<std::string, std::vector<std::pair<double, double>>> series;
    double t_max = 1.0;
    double y_min = std::numeric_limits<double>::infinity();
    double y_max = -std::numeric_limits<double>::infinity();
    for (const auto& row : aggregate.rows) {
        const double t = to_double(row[c_t], "t");
        const double v = to_double(row[c_value], value_name);
        if (!(t >= 1.0)) throw SchemaError(fmt::format("column 't' must be >= 1, got {}", row[c_t]));
        if (!series.contains(row[c_learner])) learners.push_back(row[c_learner]);
        series[row[c_learner]].emplace_back(t, v);
        t_max = std::max(t_max, t);
        y_min = std::min(y_min, v);
        y_max = std::max(y_max, v);
    }
    y_min = std::min(y_min, 0.0);
    if (y_max <= y_min) y_max = y_min + 1.0;

    constexpr double kWidth = 640, kHeight = 420, kLeft = 70, kRight = 130, kTop = 40, kBottom = 50;
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    const double log_max = std::max(std::log10(t_max), 1e-9);
    auto px = [&](double t) { return kLeft + plot_w * std::log10(t) / log_max; };
    auto py = [&](double v) { return kTop + plot_h * (1.0 - (v - y_min) / (y_max - y_min)); };

    std::string svg = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n"
        "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
        kWidth, kHeight, kWidth, kHeight);
    const char* title = metric == PlotMetric::LabelComplexity ? "Label complexity Q(t)" : "Regret R(t)";
    svg += fmt::format("<text x=\"{}\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\">{}</text>\n", kLeft, title);
    svg += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n", kLeft,
                       kTop, plot_w, plot_h);

    // Decade ticks on the t axis, five ticks on the value axis.
    for (int e = 0; e <= static_cast<int>(std::floor(log_max)); ++e) {
        const double x = px(std::pow(10.0, e));
        svg += fmt::format("<line x1=\"{:.2f}\" y1=\"{}\" x2=\"{:.2f}\" y2=\"{}\" stroke=\"black\"/>\n", x,
                           kTop + plot_h, x, kTop + plot_h + 5);
        svg += fmt::format(
            "<text x=\"{:.2f}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">1e{}</text>\n",
            x, kTop + plot_h + 18, e);
    }
    for (int i = 0; i <= 4; ++i) {
        const double v = y_min + (y_max - y_min) * i / 4.0;
        const double y = py(v);
        svg += fmt::format("<line x1=\"{}\" y1=\"{:.2f}\" x2=\"{}\" y2=\"{:.2f}\" stroke=\"black\"/>\n", kLeft - 5, y,
                           kLeft, y);
        svg += fmt::format(
            "<text x=\"{}\" y=\"{:.2f}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">{:.4g}</text>\n",
            kLeft - 8, y + 4, v);
    }
    svg += fmt::format(
        "<text x=\"{:.2f}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">t</text>\n",
        kLeft + plot_w / 2, kHeight - 10);

    for (std::size_t i = 0; i < learners.size(); ++i) {
        const auto* color = kPalette[i % kPalette.size()];
        std::string points;
        for (const auto& [t, v] : series[learners[i]]) points += fmt::format("{:.2f},{:.2f} ", px(t), py(v));
        if (!points.empty()) points.pop_back();
        svg += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"2\" points=\"{}\"/>\n", color, points);
        const double ly = kTop + 16.0 * static_cast<double>(i + 1);
        svg += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"2\"/>\n",
                           kWidth - kRight + 10, ly, kWidth - kRight + 30, ly, color);
        svg += fmt::format("<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>\n",
                           kWidth - kRight + 36, ly + 4, learners[i]);
    }
    svg += "</svg>\n";
    return svg;
}

std::vector<std::filesystem::path> emit_plot(const std::filesystem::path& dir) {
    const auto csv_path = dir / "aggregate.csv";
    std::ifstream in(csv_path, std::ios::binary);
    if (!in) throw SchemaError(fmt::format("cannot read '{}'", csv_path.string()));
    std::stringstream buffer;
    buffer << in.rdbuf();
    const auto table = parse_csv(buffer.str());
    for (const char* col : {"t", "learner", "mean_Q", "se_Q", "mean_R", "se_R", "n_seeds"}) (void)table.column(col);

    std::vector<std::filesystem::path> written;
    for (const auto& [metric, name] : {std::pair{PlotMetric::LabelComplexity, "label_complexity.svg"},
                                       std::pair{PlotMetric::Regret, "regret.svg"}}) {
        const auto svg = render_svg(table, metric);
        const auto path = dir / name;
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
        out << svg;
        written.push_back(path);
    }
    return written;
}

}  // namespace ola
