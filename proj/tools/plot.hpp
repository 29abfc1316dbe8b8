#pragma once

#include <string>
#include <vector>

namespace qram::cli {

// Comma-separated table without quoting, as written by `sweep`.
struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    // Throws, listing the available columns, when `name` is absent.
    std::size_t column(const std::string& name) const;
};

CsvTable parse_csv(const std::string& text);

struct PlotSpec {
    std::string x, y, series;  // series may be empty: one line
    bool logx = false, logy = false;
    std::string title;
};

// Standalone SVG line chart, one polyline per series value in order of first
// appearance. Rows with an empty x or y cell are skipped.
std::string render_svg(const CsvTable& table, const PlotSpec& spec);

}  // namespace qram::cli
