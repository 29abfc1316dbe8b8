#include "plot.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "qram/ir.hpp"

namespace qram::cli {

namespace {

constexpr double kWidth = 800, kHeight = 500;
constexpr double kLeft = 90, kRight = 180, kTop = 50, kBottom = 60;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        out.push_back(line.substr(start, comma - start));
        if (comma == std::string::npos) return out;
        start = comma + 1;
    }
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

double parse_number(const std::string& cell, const std::string& column) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(cell, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != cell.size()) throw Error("column '" + column + "' has non-numeric value '" + cell + "'");
    return v;
}

struct Axis {
    bool log = false;
    double lo = 0, hi = 1;  // in transformed units
    std::vector<double> ticks;

    double transform(double v) const { return log ? std::log10(v) : v; }

    void fit(double a, double b) {
        if (a == b) {
            const double pad = log ? 0.5 : std::max(std::abs(a) * 0.1, 1.0);
            a -= pad;
            b += pad;
        }
        if (log) {
            lo = std::floor(a);
            hi = std::ceil(b);
            const double step = std::max(1.0, std::ceil((hi - lo) / 8));
            for (double t = lo; t <= hi + 1e-9; t += step) ticks.push_back(t);
            return;
        }
        const double raw = (b - a) / 5;
        const double mag = std::pow(10, std::floor(std::log10(raw)));
        double step = mag;
        for (double m : {1.0, 2.0, 5.0, 10.0})
            if (m * mag >= raw) {
                step = m * mag;
                break;
            }
        lo = std::floor(a / step) * step;
        hi = std::ceil(b / step) * step;
        for (double t = lo; t <= hi + step * 1e-9; t += step) ticks.push_back(std::abs(t) < step * 1e-9 ? 0 : t);
    }

    std::string label(double t) const { return log ? fmt::format("1e{}", static_cast<int>(t)) : fmt::format("{:g}", t); }
};

}  // namespace

std::size_t CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return i;
    std::string known;
    for (const auto& c : columns) known += (known.empty() ? "" : ", ") + c;
    throw Error("unknown column '" + name + "' (available: " + known + ")");
}

CsvTable parse_csv(const std::string& text) {
    CsvTable t;
    std::istringstream in(text);
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cells = split(line);
        if (t.columns.empty()) {
            t.columns = std::move(cells);
            continue;
        }
        if (cells.size() != t.columns.size())
            throw Error("CSV line " + std::to_string(n) + " has " + std::to_string(cells.size()) +
                        " fields, header has " + std::to_string(t.columns.size()));
        t.rows.push_back(std::move(cells));
    }
    if (t.columns.empty()) throw Error("CSV input has no header");
    return t;
}

std::string render_svg(const CsvTable& table, const PlotSpec& spec) {
    const std::size_t xi = table.column(spec.x), yi = table.column(spec.y);
    const std::size_t si = spec.series.empty() ? 0 : table.column(spec.series);

    std::vector<std::string> names;
    std::map<std::string, std::vector<std::pair<double, double>>> series;
    for (const auto& row : table.rows) {
        if (row[xi].empty() || row[yi].empty()) continue;
        const double x = parse_number(row[xi], spec.x), y = parse_number(row[yi], spec.y);
        if ((spec.logx && x <= 0) || (spec.logy && y <= 0)) throw Error("log scale requires positive values");
        const std::string key = spec.series.empty() ? spec.y : row[si];
        auto [it, fresh] = series.try_emplace(key);
        if (fresh) names.push_back(key);
        it->second.emplace_back(x, y);
    }

    Axis ax, ay;
    ax.log = spec.logx;
    ay.log = spec.logy;
    bool empty = names.empty();
    if (!empty) {
        double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
        for (const auto& [_, pts] : series)
            for (auto [x, y] : pts) {
                x0 = std::min(x0, ax.transform(x));
                x1 = std::max(x1, ax.transform(x));
                y0 = std::min(y0, ay.transform(y));
                y1 = std::max(y1, ay.transform(y));
            }
        ax.fit(x0, x1);
        ay.fit(y0, y1);
    } else {
        ax.fit(0, 1);
        ay.fit(0, 1);
    }

    const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
    auto px = [&](double v) { return kLeft + (v - ax.lo) / (ax.hi - ax.lo) * pw; };
    auto py = [&](double v) { return kTop + ph - (v - ay.lo) / (ay.hi - ay.lo) * ph; };

    std::string s;
    auto add = [&](const std::string& line) { s += line + "\n"; };
    add(fmt::format(R"(<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}" font-family="sans-serif" font-size="12">)",
                    kWidth, kHeight, kWidth, kHeight));
    add(fmt::format(R"(<rect width="{}" height="{}" fill="white"/>)", kWidth, kHeight));
    if (!spec.title.empty())
        add(fmt::format(R"(<text x="{:.2f}" y="28" text-anchor="middle" font-size="16">{}</text>)", kLeft + pw / 2,
                        escape(spec.title)));
    add(fmt::format(R"(<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="black"/>)", kLeft, kTop, pw, ph));
    for (double t : ax.ticks) {
        const double x = px(t);
        add(fmt::format(R"(<line x1="{0:.2f}" y1="{1:.2f}" x2="{0:.2f}" y2="{2:.2f}" stroke="#dddddd"/>)", x, kTop, kTop + ph));
        add(fmt::format(R"(<text x="{:.2f}" y="{:.2f}" text-anchor="middle">{}</text>)", x, kTop + ph + 18, ax.label(t)));
    }
    for (double t : ay.ticks) {
        const double y = py(t);
        add(fmt::format(R"(<line x1="{1:.2f}" y1="{0:.2f}" x2="{2:.2f}" y2="{0:.2f}" stroke="#dddddd"/>)", y, kLeft, kLeft + pw));
        add(fmt::format(R"(<text x="{:.2f}" y="{:.2f}" text-anchor="end">{}</text>)", kLeft - 6, y + 4, ay.label(t)));
    }
    const std::string xlabel = spec.x + (spec.logx ? " (log scale)" : "");
    const std::string ylabel = spec.y + (spec.logy ? " (log scale)" : "");
    add(fmt::format(R"(<text x="{:.2f}" y="{:.2f}" text-anchor="middle">{}</text>)", kLeft + pw / 2, kHeight - 15,
                    escape(xlabel)));
    add(fmt::format(R"svg(<text x="20" y="{0:.2f}" text-anchor="middle" transform="rotate(-90 20 {0:.2f})">{1}</text>)svg",
                    kTop + ph / 2, escape(ylabel)));

    if (empty) {
        add(fmt::format(R"(<text x="{:.2f}" y="{:.2f}" text-anchor="middle" font-size="18" fill="#888888">no data</text>)",
                        kLeft + pw / 2, kTop + ph / 2));
    }
    for (std::size_t i = 0; i < names.size(); ++i) {
        auto pts = series[names[i]];
        std::stable_sort(pts.begin(), pts.end(), [](auto a, auto b) { return a.first < b.first; });
        const char* color = kPalette[i % std::size(kPalette)];
        std::string points;
        for (auto [x, y] : pts)
            points += fmt::format("{}{:.2f},{:.2f}", points.empty() ? "" : " ", px(ax.transform(x)), py(ay.transform(y)));
        add(fmt::format(R"(<polyline fill="none" stroke="{}" stroke-width="2" points="{}"/>)", color, points));
        for (auto [x, y] : pts)
            add(fmt::format(R"(<circle cx="{:.2f}" cy="{:.2f}" r="2.5" fill="{}"/>)", px(ax.transform(x)),
                            py(ay.transform(y)), color));
        const double ly = kTop + 10 + 20 * static_cast<double>(i);
        add(fmt::format(R"(<line x1="{:.2f}" y1="{:.2f}" x2="{:.2f}" y2="{:.2f}" stroke="{}" stroke-width="2"/>)",
                        kLeft + pw + 15, ly, kLeft + pw + 40, ly, color));
        add(fmt::format(R"(<text x="{:.2f}" y="{:.2f}">{}</text>)", kLeft + pw + 46, ly + 4,
                        escape(spec.series.empty() ? names[i] : spec.series + "=" + names[i])));
    }
    add("</svg>");
    return s;
}

}  // namespace qram::cli
