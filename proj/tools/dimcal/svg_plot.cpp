#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "dimcal/errors.hpp"

namespace dimcal::cli {

namespace {

std::string num(double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.6g", v);
    return buffer;
}

struct Extent {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void include(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }

    // Pads degenerate or empty ranges so the scale below is always usable.
    void finalize() {
        if (lo > hi) {
            lo = 0.0;
            hi = 1.0;
        }
        if (lo == hi) {
            lo -= 0.5;
            hi += 0.5;
        }
        const double pad = 0.05 * (hi - lo);
        lo -= pad;
        hi += pad;
    }
};

struct Scale {
    Extent extent;
    double pixel_lo = 0.0;
    double pixel_hi = 0.0;

    double operator()(double v) const {
        const double t = (v - extent.lo) / (extent.hi - extent.lo);
        return pixel_lo + t * (pixel_hi - pixel_lo);
    }
};

// Round tick positions at a 1/2/5 step covering the extent.
std::vector<double> ticks(const Extent& e, int target) {
    const double span = e.hi - e.lo;
    const double raw_step = span / std::max(target, 2);
    const double mag = std::pow(10.0, std::floor(std::log10(raw_step)));
    double step = mag;
    for (const double mult : {1.0, 2.0, 5.0, 10.0}) {
        step = mult * mag;
        if (step >= raw_step) break;
    }
    std::vector<double> out;
    const double first = std::ceil(e.lo / step) * step;
    for (double v = first; v <= e.hi + 1e-12 * span; v += step)
        out.push_back(v == 0.0 ? 0.0 : v); // normalize -0
    return out;
}

const char* kPalette[] = {"#4477aa", "#ee6677", "#228833", "#ccbb44",
                          "#66ccee", "#aa3377", "#bbbbbb", "#222255",
                          "#999933", "#cc6644"};
constexpr int kPaletteSize = 10;

} // namespace

std::string line_chart(const std::vector<PlotSeries>& series,
                       const std::string& x_label, const std::string& y_label,
                       const std::string& title) {
    constexpr double width = 720, height = 480;
    constexpr double left = 70, right = 30, top = 40, bottom = 55;

    Extent ex, ey;
    for (const PlotSeries& s : series) {
        if (s.x.size() != s.y.size())
            throw ParameterError("plot series must have equal x/y lengths");
        for (const double v : s.x) ex.include(v);
        for (const double v : s.y) ey.include(v);
    }
    ex.finalize();
    ey.finalize();

    const Scale sx{ex, left, width - right};
    const Scale sy{ey, height - bottom, top}; // y grows upward

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
        << height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"15\">" << title
        << "</text>\n";

    for (const double t : ticks(ex, 8)) {
        const double px = sx(t);
        svg << "<line x1=\"" << num(px) << "\" y1=\"" << height - bottom
            << "\" x2=\"" << num(px) << "\" y2=\"" << top
            << "\" stroke=\"#dddddd\"/>\n";
        svg << "<text x=\"" << num(px) << "\" y=\"" << height - bottom + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"11\">" << num(t) << "</text>\n";
    }
    for (const double t : ticks(ey, 6)) {
        const double py = sy(t);
        svg << "<line x1=\"" << left << "\" y1=\"" << num(py) << "\" x2=\""
            << width - right << "\" y2=\"" << num(py)
            << "\" stroke=\"#dddddd\"/>\n";
        svg << "<text x=\"" << left - 8 << "\" y=\"" << num(py + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
               "font-size=\"11\">" << num(t) << "</text>\n";
    }

    svg << "<line x1=\"" << left << "\" y1=\"" << height - bottom << "\" x2=\""
        << width - right << "\" y2=\"" << height - bottom
        << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << left << "\" y1=\"" << height - bottom << "\" x2=\""
        << left << "\" y2=\"" << top << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << (left + width - right) / 2 << "\" y=\""
        << height - 12 << "\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"13\">" << x_label
        << "</text>\n";
    svg << "<text x=\"18\" y=\"" << (top + height - bottom) / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"13\" transform=\"rotate(-90 18 "
        << (top + height - bottom) / 2 << ")\">" << y_label << "</text>\n";

    for (const PlotSeries& s : series) {
        svg << "<polyline fill=\"none\" stroke=\"" << s.color
            << "\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (i) svg << " ";
            svg << num(sx(s.x[i])) << "," << num(sy(s.y[i]));
        }
        svg << "\"/>\n";
        for (std::size_t i = 0; i < s.x.size(); ++i)
            svg << "<circle cx=\"" << num(sx(s.x[i])) << "\" cy=\""
                << num(sy(s.y[i])) << "\" r=\"3\" fill=\"" << s.color
                << "\"/>\n";
    }

    double legend_y = top + 14;
    for (const PlotSeries& s : series) {
        const double lx = width - right - 180;
        svg << "<line x1=\"" << lx << "\" y1=\"" << legend_y - 4 << "\" x2=\""
            << lx + 26 << "\" y2=\"" << legend_y - 4 << "\" stroke=\""
            << s.color << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << lx + 32 << "\" y=\"" << legend_y
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.name
            << "</text>\n";
        legend_y += 18;
    }

    svg << "</svg>\n";
    return svg.str();
}

std::string scatter_plot(const Matrix& points,
                         const std::optional<Labels>& labels,
                         const std::string& title) {
    if (points.cols() < 2)
        throw ParameterError("scatter plot needs at least 2 columns");
    if (labels && static_cast<Index>(labels->size()) != points.rows())
        throw ParameterError("label count does not match the point count");

    constexpr double size = 560;
    constexpr double margin = 40;

    Extent ex, ey;
    for (Index i = 0; i < points.rows(); ++i) {
        ex.include(points(i, 0));
        ey.include(points(i, 1));
    }
    ex.finalize();
    ey.finalize();
    const Scale sx{ex, margin, size - margin};
    const Scale sy{ey, size - margin, margin};

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size
        << "\" height=\"" << size << "\" viewBox=\"0 0 " << size << " " << size
        << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << size / 2 << "\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"14\">" << title
        << "</text>\n";

    for (Index i = 0; i < points.rows(); ++i) {
        const char* color = "#555555";
        if (labels) {
            const int label = (*labels)[static_cast<std::size_t>(i)];
            const int idx = ((label % kPaletteSize) + kPaletteSize) % kPaletteSize;
            color = kPalette[idx];
        }
        svg << "<circle cx=\"" << num(sx(points(i, 0))) << "\" cy=\""
            << num(sy(points(i, 1))) << "\" r=\"3\" fill=\"" << color
            << "\" fill-opacity=\"0.75\"/>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace dimcal::cli
