#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace ola {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Column index; throws SchemaError naming the column if it is absent.
    [[nodiscard]] std::size_t column(const std::string& name) const;
};

/// Plain comma-separated parser (no quoting); the first line is the header.
/// Throws SchemaError on empty input or ragged rows.
[[nodiscard]] CsvTable parse_csv(const std::string& text);

enum class PlotMetric { LabelComplexity, Regret };

/// SVG line chart of mean Q(t) or R(t) against t (log axis), one line per
/// learner, drawn straight from an aggregate CSV.
[[nodiscard]] std::string render_svg(const CsvTable& aggregate, PlotMetric metric);

/// Reads `dir`/aggregate.csv and writes label_complexity.svg and regret.svg
/// next to it. Returns the written paths.
std::vector<std::filesystem::path> emit_plot(const std::filesystem::path& dir);

}  // namespace ola
