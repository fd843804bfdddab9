#include "sirdx/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace sirdx::svg {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 30.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 60.0;
constexpr double kPlotW = kWidth - kLeft - kRight;
constexpr double kPlotH = kHeight - kTop - kBottom;

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

struct Range {
    double lo = 0.0;
    double hi = 1.0;

    void expand(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (hi <= lo) {
            lo -= 0.5;
            hi += 0.5;
        } else {
            const double margin = 0.05 * (hi - lo);
            lo -= margin;
            hi += margin;
        }
    }
    double to_x(double v) const { return kLeft + (v - lo) / (hi - lo) * kPlotW; }
    double to_y(double v) const { return kTop + kPlotH - (v - lo) / (hi - lo) * kPlotH; }
};

Range fit_range(std::initializer_list<const std::vector<double>*> columns) {
    Range r{std::numeric_limits<double>::infinity(),
            -std::numeric_limits<double>::infinity()};
    bool any = false;
    for (const auto* col : columns) {
        for (double v : *col) {
            if (!std::isfinite(v)) continue;
            r.expand(v);
            any = true;
        }
    }
    if (!any) r = {0.0, 1.0};
    r.pad();
    return r;
}

// Tick step of the form {1,2,5} * 10^k giving roughly `target` divisions.
double nice_step(double span, int target) {
    if (span <= 0.0) return 1.0;
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double mult : {1.0, 2.0, 5.0, 10.0}) {
        if (mag * mult >= raw) return mag * mult;
    }
    return mag * 10.0;
}

void open_svg(std::ostringstream& out, const std::string& title) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
           "viewBox=\"0 0 800 600\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
    out << "<text x=\"400\" y=\"26\" font-family=\"sans-serif\" font-size=\"16\" "
           "text-anchor=\"middle\">" << title << "</text>\n";
}

void axes_frame(std::ostringstream& out, const std::string& x_label,
                const std::string& y_label) {
    out << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\""
        << num(kPlotW) << "\" height=\"" << num(kPlotH)
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<text x=\"" << num(kLeft + kPlotW / 2) << "\" y=\"" << num(kHeight - 14)
        << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">"
        << x_label << "</text>\n";
    out << "<text x=\"18\" y=\"" << num(kTop + kPlotH / 2)
        << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" "
           "transform=\"rotate(-90 18 " << num(kTop + kPlotH / 2) << ")\">"
        << y_label << "</text>\n";
}

void x_ticks(std::ostringstream& out, const Range& r) {
    const double step = nice_step(r.hi - r.lo, 6);
    for (double v = std::ceil(r.lo / step) * step; v <= r.hi + step * 1e-9; v += step) {
        const double px = r.to_x(v);
        out << "<line x1=\"" << num(px) << "\" y1=\"" << num(kTop + kPlotH)
            << "\" x2=\"" << num(px) << "\" y2=\"" << num(kTop + kPlotH + 5)
            << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << num(px) << "\" y=\"" << num(kTop + kPlotH + 20)
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">"
            << tick_label(v) << "</text>\n";
    }
}

void y_ticks(std::ostringstream& out, const Range& r, bool log_scale) {
    const double step = nice_step(r.hi - r.lo, 6);
    for (double v = std::ceil(r.lo / step) * step; v <= r.hi + step * 1e-9; v += step) {
        const double py = r.to_y(v);
        out << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(py) << "\" x2=\""
            << num(kLeft) << "\" y2=\"" << num(py) << "\" stroke=\"black\"/>\n";
        std::string label = log_scale ? ("1e" + tick_label(v)) : tick_label(v);
        out << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(py + 4)
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">"
            << label << "</text>\n";
    }
}

void legend(std::ostringstream& out, const std::vector<std::string>& names) {
    double y = kTop + 14;
    for (std::size_t s = 0; s < names.size(); ++s) {
        if (names[s].empty()) continue;
        out << "<rect x=\"" << num(kLeft + 10) << "\" y=\"" << num(y - 9)
            << "\" width=\"12\" height=\"12\" fill=\"" << kPalette[s % 6] << "\"/>\n";
        out << "<text x=\"" << num(kLeft + 27) << "\" y=\"" << num(y + 2)
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << names[s]
            << "</text>\n";
        y += 18;
    }
}

} // namespace

std::string line_chart(const std::vector<Series>& series, const std::string& title,
                       const std::string& x_label, const std::string& y_label,
                       bool log_y) {
    std::vector<Series> plotted = series;
    if (log_y) {
        for (auto& s : plotted)
            for (double& v : s.y) v = v > 0.0 ? std::log10(v) : std::nan("");
    }

    std::ostringstream out;
    open_svg(out, title);
    axes_frame(out, x_label, log_y ? y_label + " (log10)" : y_label);

    std::vector<const std::vector<double>*> xs, ys;
    for (const auto& s : plotted) {
        xs.push_back(&s.x);
        ys.push_back(&s.y);
    }
    Range rx{std::numeric_limits<double>::infinity(),
             -std::numeric_limits<double>::infinity()};
    Range ry = rx;
    bool any = false;
    for (const auto& s : plotted) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            rx.expand(s.x[i]);
            ry.expand(s.y[i]);
            any = true;
        }
    }
    if (!any) {
        rx = {0.0, 1.0};
        ry = {0.0, 1.0};
    }
    rx.pad();
    ry.pad();
    x_ticks(out, rx);
    y_ticks(out, ry, log_y);

    for (std::size_t s = 0; s < plotted.size(); ++s) {
        const auto& ser = plotted[s];
        out << "<polyline fill=\"none\" stroke=\"" << kPalette[s % 6]
            << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < ser.x.size(); ++i) {
            if (!std::isfinite(ser.x[i]) || !std::isfinite(ser.y[i])) continue;
            out << num(rx.to_x(ser.x[i])) << ',' << num(ry.to_y(ser.y[i])) << ' ';
        }
        out << "\"/>\n";
    }
    std::vector<std::string> names;
    for (const auto& s : plotted) names.push_back(s.name);
    legend(out, names);
    out << "</svg>\n";
    return out.str();
}

std::string histogram(const std::vector<double>& values, int bins,
                      const std::string& title, const std::string& x_label) {
    std::ostringstream out;
    open_svg(out, title);
    axes_frame(out, x_label, "count");

    if (values.empty() || bins < 1) {
        out << "</svg>\n";
        return out.str();
    }
    Range rx = fit_range({&values});
    std::vector<double> counts(static_cast<std::size_t>(bins), 0.0);
    const double lo = *std::min_element(values.begin(), values.end());
    const double hi = *std::max_element(values.begin(), values.end());
    const double width = hi > lo ? (hi - lo) : 1.0;
    for (double v : values) {
        auto idx = static_cast<std::size_t>((v - lo) / width * bins);
        if (idx >= counts.size()) idx = counts.size() - 1;
        counts[idx] += 1.0;
    }
    Range ry{0.0, *std::max_element(counts.begin(), counts.end())};
    ry.pad();
    ry.lo = 0.0;
    x_ticks(out, rx);
    y_ticks(out, ry, false);

    for (std::size_t b = 0; b < counts.size(); ++b) {
        const double x0 = rx.to_x(lo + width * static_cast<double>(b) / bins);
        const double x1 = rx.to_x(lo + width * static_cast<double>(b + 1) / bins);
        const double y0 = ry.to_y(counts[b]);
        out << "<rect x=\"" << num(x0) << "\" y=\"" << num(y0) << "\" width=\""
            << num(std::max(0.5, x1 - x0 - 1.0)) << "\" height=\""
            << num(kTop + kPlotH - y0) << "\" fill=\"" << kPalette[0]
            << "\" stroke=\"none\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string grouped_bars(const std::vector<std::string>& group_labels,
                         const std::vector<std::string>& series_names,
                         const std::vector<std::vector<double>>& values,
                         const std::string& title, const std::string& y_label) {
    std::ostringstream out;
    open_svg(out, title);
    axes_frame(out, "", y_label);

    const std::size_t groups = group_labels.size();
    const std::size_t nseries = series_names.size();
    if (groups == 0 || nseries == 0) {
        out << "</svg>\n";
        return out.str();
    }

    double max_v = 0.0;
    for (const auto& row : values)
        for (double v : row) max_v = std::max(max_v, v);
    Range ry{0.0, max_v > 0.0 ? max_v : 1.0};
    ry.pad();
    ry.lo = 0.0;
    y_ticks(out, ry, false);

    const double group_w = kPlotW / static_cast<double>(groups);
    const double bar_w = group_w * 0.7 / static_cast<double>(nseries);
    for (std::size_t g = 0; g < groups; ++g) {
        const double gx = kLeft + group_w * (static_cast<double>(g) + 0.15);
        for (std::size_t s = 0; s < nseries; ++s) {
            const double v = std::max(0.0, values[s][g]); // clamp negatives for display
            const double y0 = ry.to_y(v);
            out << "<rect x=\"" << num(gx + bar_w * static_cast<double>(s)) << "\" y=\""
                << num(y0) << "\" width=\"" << num(bar_w - 2.0) << "\" height=\""
                << num(kTop + kPlotH - y0) << "\" fill=\"" << kPalette[s % 6]
                << "\"/>\n";
        }
        out << "<text x=\"" << num(gx + bar_w * static_cast<double>(nseries) / 2)
            << "\" y=\"" << num(kTop + kPlotH + 20)
            << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">"
            << group_labels[g] << "</text>\n";
    }
    legend(out, series_names);
    out << "</svg>\n";
    return out.str();
}

std::string scatter(const std::vector<Series>& series, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    bool identity_line) {
    std::ostringstream out;
    open_svg(out, title);
    axes_frame(out, x_label, y_label);

    Range r{std::numeric_limits<double>::infinity(),
            -std::numeric_limits<double>::infinity()};
    bool any = false;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            r.expand(s.x[i]);
            r.expand(s.y[i]);
            any = true;
        }
    }
    if (!any) r = {0.0, 1.0};
    r.pad();
    x_ticks(out, r);
    y_ticks(out, r, false);

    if (identity_line) {
        out << "<line x1=\"" << num(r.to_x(r.lo)) << "\" y1=\"" << num(r.to_y(r.lo))
            << "\" x2=\"" << num(r.to_x(r.hi)) << "\" y2=\"" << num(r.to_y(r.hi))
            << "\" stroke=\"#888888\" stroke-dasharray=\"6,4\"/>\n";
    }
    for (std::size_t s = 0; s < series.size(); ++s) {
        for (std::size_t i = 0; i < series[s].x.size(); ++i) {
            if (!std::isfinite(series[s].x[i]) || !std::isfinite(series[s].y[i]))
                continue;
            out << "<circle cx=\"" << num(r.to_x(series[s].x[i])) << "\" cy=\""
                << num(r.to_y(series[s].y[i])) << "\" r=\"2.5\" fill=\""
                << kPalette[s % 6] << "\" fill-opacity=\"0.6\"/>\n";
        }
    }
    std::vector<std::string> names;
    for (const auto& s : series) names.push_back(s.name);
    legend(out, names);
    out << "</svg>\n";
    return out.str();
}

std::string confusion_chart(const ConfusionMatrix& matrix, const std::string& title) {
    std::ostringstream out;
    open_svg(out, title);

    const double cell = 180.0;
    const double x0 = kLeft + 120.0;
    const double y0 = kTop + 60.0;
    const std::size_t counts[2][2] = {{matrix.tn, matrix.fp}, {matrix.fn, matrix.tp}};
    const double max_count =
        static_cast<double>(std::max({matrix.tn, matrix.fp, matrix.fn, matrix.tp, std::size_t{1}}));

    for (int row = 0; row < 2; ++row) {
        for (int col = 0; col < 2; ++col) {
            const double shade =
                1.0 - 0.75 * static_cast<double>(counts[row][col]) / max_count;
            const int level = static_cast<int>(shade * 255.0);
            out << "<rect x=\"" << num(x0 + col * cell) << "\" y=\""
                << num(y0 + row * cell) << "\" width=\"" << num(cell)
                << "\" height=\"" << num(cell) << "\" fill=\"rgb(" << level << ','
                << level << ",255)\" stroke=\"black\"/>\n";
            out << "<text x=\"" << num(x0 + col * cell + cell / 2) << "\" y=\""
                << num(y0 + row * cell + cell / 2 + 6)
                << "\" font-family=\"sans-serif\" font-size=\"22\" "
                   "text-anchor=\"middle\">" << counts[row][col] << "</text>\n";
        }
    }
    const char* row_names[2] = {"actual 0", "actual 1"};
    const char* col_names[2] = {"predicted 0", "predicted 1"};
    for (int row = 0; row < 2; ++row) {
        out << "<text x=\"" << num(x0 - 12) << "\" y=\""
            << num(y0 + row * cell + cell / 2)
            << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"end\">"
            << row_names[row] << "</text>\n";
    }
    for (int col = 0; col < 2; ++col) {
        out << "<text x=\"" << num(x0 + col * cell + cell / 2) << "\" y=\""
            << num(y0 - 12)
            << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">"
            << col_names[col] << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace sirdx::svg
