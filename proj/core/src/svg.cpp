#include "chaoskit/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "chaoskit/common.hpp"

namespace chaoskit::svg {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
constexpr int kPaletteSize = 8;

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void expand(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    bool valid() const { return lo <= hi; }
};

std::string fmt_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string escape_xml(const std::string& s) {
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

// Round tick spacing to the usual 1/2/5 ladder covering ~n_target intervals.
double nice_step(double span, int n_target) {
    if (span <= 0.0) return 1.0;
    double raw = span / n_target;
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double frac = raw / mag;
    double nice = frac <= 1.0 ? 1.0 : frac <= 2.0 ? 2.0 : frac <= 5.0 ? 5.0 : 10.0;
    return nice * mag;
}

}  // namespace

void write_line_plot(const std::vector<LineSeries>& series, const PlotSpec& spec,
                     const std::string& path) {
    if (series.empty()) throw param_error("svg: no series to plot");
    for (const LineSeries& s : series)
        if (s.x.size() != s.y.size())
            throw param_error("svg: series '" + s.label + "' has mismatched x/y lengths");

    Range xr, yr;
    for (const LineSeries& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i)
            if (std::isfinite(s.x[i]) && std::isfinite(s.y[i])) {
                xr.expand(s.x[i]);
                yr.expand(s.y[i]);
            }
    if (!xr.valid()) throw param_error("svg: no finite data points");
    if (xr.hi == xr.lo) {
        xr.lo -= 0.5;
        xr.hi += 0.5;
    }
    if (yr.hi == yr.lo) {
        yr.lo -= 0.5;
        yr.hi += 0.5;
    }

    const double ml = 72, mr = 20, mt = spec.title.empty() ? 16 : 40, mb = 52;
    const double pw = spec.width - ml - mr;
    const double ph = spec.height - mt - mb;
    auto px = [&](double x) { return ml + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
    auto py = [&](double y) { return mt + ph - (y - yr.lo) / (yr.hi - yr.lo) * ph; };

    std::ofstream out(path);
    if (!out) throw param_error("cannot open for writing: " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width
        << "\" height=\"" << spec.height << "\" viewBox=\"0 0 " << spec.width << ' '
        << spec.height << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!spec.title.empty())
        out << "<text x=\"" << spec.width / 2 << "\" y=\"22\" text-anchor=\"middle\" "
            << "font-family=\"sans-serif\" font-size=\"15\">" << escape_xml(spec.title)
            << "</text>\n";

    // Gridlines and tick labels.
    double xs = nice_step(xr.hi - xr.lo, 8);
    double ys = nice_step(yr.hi - yr.lo, 6);
    out << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#444\">\n";
    for (double x = std::ceil(xr.lo / xs) * xs; x <= xr.hi + 1e-9 * xs; x += xs) {
        out << "<line x1=\"" << px(x) << "\" y1=\"" << mt << "\" x2=\"" << px(x)
            << "\" y2=\"" << mt + ph << "\" stroke=\"#e0e0e0\"/>\n"
            << "<text x=\"" << px(x) << "\" y=\"" << mt + ph + 16
            << "\" text-anchor=\"middle\">" << fmt_tick(x) << "</text>\n";
    }
    for (double y = std::ceil(yr.lo / ys) * ys; y <= yr.hi + 1e-9 * ys; y += ys) {
        out << "<line x1=\"" << ml << "\" y1=\"" << py(y) << "\" x2=\"" << ml + pw
            << "\" y2=\"" << py(y) << "\" stroke=\"#e0e0e0\"/>\n"
            << "<text x=\"" << ml - 6 << "\" y=\"" << py(y) + 4
            << "\" text-anchor=\"end\">" << fmt_tick(y) << "</text>\n";
    }
    out << "</g>\n";

    // Axes.
    out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\""
        << ph << "\" fill=\"none\" stroke=\"#333\"/>\n";
    if (!spec.xlabel.empty())
        out << "<text x=\"" << ml + pw / 2 << "\" y=\"" << spec.height - 12
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
            << escape_xml(spec.xlabel) << "</text>\n";
    if (!spec.ylabel.empty())
        out << "<text x=\"16\" y=\"" << mt + ph / 2
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
            << "transform=\"rotate(-90 16 " << mt + ph / 2 << ")\">"
            << escape_xml(spec.ylabel) << "</text>\n";

    // Data polylines; non-finite samples split a series into separate segments.
    for (std::size_t si = 0; si < series.size(); ++si) {
        const LineSeries& s = series[si];
        const char* color = kPalette[si % kPaletteSize];
        std::string points;
        auto flush = [&]() {
            if (points.find(' ') != std::string::npos)
                out << "<polyline fill=\"none\" stroke=\"" << color
                    << "\" stroke-width=\"1.6\" points=\"" << points << "\"/>\n";
            points.clear();
        };
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
                flush();
                continue;
            }
            if (!points.empty()) points += ' ';
            points += fmt_tick(px(s.x[i])) + "," + fmt_tick(py(s.y[i]));
        }
        flush();
    }

    // Legend.
    out << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
    for (std::size_t si = 0; si < series.size(); ++si) {
        double ly = mt + 14 + 18 * static_cast<double>(si);
        out << "<line x1=\"" << ml + pw - 150 << "\" y1=\"" << ly << "\" x2=\""
            << ml + pw - 126 << "\" y2=\"" << ly << "\" stroke=\""
            << kPalette[si % kPaletteSize] << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << ml + pw - 120 << "\" y=\"" << ly + 4 << "\">"
            << escape_xml(series[si].label) << "</text>\n";
    }
    out << "</g>\n</svg>\n";
    if (!out) throw numeric_error("write failed: " + path);
}

}  // namespace chaoskit::svg
