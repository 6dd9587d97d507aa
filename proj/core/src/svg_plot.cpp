#include "nlfe/svg_plot.hpp"

#include "nlfe/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

namespace nlfe {

namespace {

constexpr double kLeft = 90.0;
constexpr double kRight = 30.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 70.0;

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

struct Axis {
    bool log = false;
    double lo = 0.0;
    double hi = 1.0;

    double transform(double v) const { return log ? std::log10(v) : v; }

    static Axis fit(const std::vector<double>& values, bool log) {
        Axis a;
        a.log = log;
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (double v : values) {
            if (!std::isfinite(v) || (log && v <= 0.0)) continue;
            const double tv = log ? std::log10(v) : v;
            lo = std::min(lo, tv);
            hi = std::max(hi, tv);
        }
        if (!std::isfinite(lo)) {
            lo = 0.0;
            hi = 1.0;
        }
        if (log) {
            lo = std::floor(lo);
            hi = std::ceil(hi);
        }
        if (hi - lo < 1e-12) {
            lo -= 0.5;
            hi += 0.5;
        }
        a.lo = lo;
        a.hi = hi;
        return a;
    }

    std::vector<double> ticks() const {
        std::vector<double> out;
        if (log) {
            for (double e = lo; e <= hi + 1e-9; e += 1.0) out.push_back(e);
            return out;
        }
        const double span = hi - lo;
        const double raw = span / 5.0;
        const double mag = std::pow(10.0, std::floor(std::log10(raw)));
        double step = mag;
        for (double m : {1.0, 2.0, 5.0, 10.0}) {
            step = m * mag;
            if (span / step <= 6.0) break;
        }
        for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * span; v += step) out.push_back(v);
        return out;
    }

    std::string label(double tick) const {
        std::ostringstream os;
        if (log) {
            os << "1e" << static_cast<int>(std::lround(tick));
        } else {
            os << (std::abs(tick) < 1e-12 ? 0.0 : tick);
        }
        return os.str();
    }
};

} // namespace

void write_svg(std::ostream& os, const PlotSpec& plot) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& s : plot.series) {
        if (s.x.size() != s.y.size()) throw ValidationError("plot series '" + s.label + "' has mismatched x/y");
        xs.insert(xs.end(), s.x.begin(), s.x.end());
        ys.insert(ys.end(), s.y.begin(), s.y.end());
    }
    const Axis ax = Axis::fit(xs, plot.log_x);
    const Axis ay = Axis::fit(ys, plot.log_y);
    const double pw = kSvgWidth - kLeft - kRight;
    const double ph = kSvgHeight - kTop - kBottom;
    auto px = [&](double v) { return kLeft + (ax.transform(v) - ax.lo) / (ax.hi - ax.lo) * pw; };
    auto py = [&](double v) { return kTop + ph - (ay.transform(v) - ay.lo) / (ay.hi - ay.lo) * ph; };
    auto tx = [&](double tv) { return kLeft + (tv - ax.lo) / (ax.hi - ax.lo) * pw; };
    auto ty = [&](double tv) { return kTop + ph - (tv - ay.lo) / (ay.hi - ay.lo) * ph; };

    const auto old = os.precision(6);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSvgWidth << "\" height=\""
       << kSvgHeight << "\" viewBox=\"0 0 " << kSvgWidth << ' ' << kSvgHeight << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << kSvgWidth / 2 << "\" y=\"28\" text-anchor=\"middle\" font-size=\"18\">"
       << escape(plot.title) << "</text>\n";
    os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
       << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (double t : ax.ticks()) {
        const double x = tx(t);
        os << "<line x1=\"" << x << "\" y1=\"" << kTop << "\" x2=\"" << x << "\" y2=\"" << kTop + ph
           << "\" stroke=\"#dddddd\"/>\n";
        os << "<text x=\"" << x << "\" y=\"" << kTop + ph + 20 << "\" text-anchor=\"middle\" font-size=\"12\">"
           << ax.label(t) << "</text>\n";
    }
    for (double t : ay.ticks()) {
        const double y = ty(t);
        os << "<line x1=\"" << kLeft << "\" y1=\"" << y << "\" x2=\"" << kLeft + pw << "\" y2=\"" << y
           << "\" stroke=\"#dddddd\"/>\n";
        os << "<text x=\"" << kLeft - 8 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\" font-size=\"12\">"
           << ay.label(t) << "</text>\n";
    }
    os << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kSvgHeight - 20
       << "\" text-anchor=\"middle\" font-size=\"14\">" << escape(plot.x_label) << "</text>\n";
    os << "<text x=\"20\" y=\"" << kTop + ph / 2 << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 20 "
       << kTop + ph / 2 << ")\">" << escape(plot.y_label) << "</text>\n";

    double legend_y = kTop + 20;
    for (const auto& s : plot.series) {
        os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"2\"";
        if (s.dashed) os << " stroke-dasharray=\"6 4\"";
        os << " points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if ((plot.log_x && s.x[i] <= 0.0) || (plot.log_y && s.y[i] <= 0.0)) continue;
            os << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
        }
        os << "\"/>\n";
        if (s.markers) {
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                if ((plot.log_x && s.x[i] <= 0.0) || (plot.log_y && s.y[i] <= 0.0)) continue;
                os << "<circle cx=\"" << px(s.x[i]) << "\" cy=\"" << py(s.y[i]) << "\" r=\"3.5\" fill=\""
                   << s.color << "\"/>\n";
            }
        }
        const double lx = kLeft + pw - 200;
        os << "<line x1=\"" << lx << "\" y1=\"" << legend_y << "\" x2=\"" << lx + 30 << "\" y2=\""
           << legend_y << "\" stroke=\"" << s.color << "\" stroke-width=\"2\""
           << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n";
        os << "<text x=\"" << lx + 38 << "\" y=\"" << legend_y + 4 << "\" font-size=\"12\">"
           << escape(s.label) << "</text>\n";
        legend_y += 18;
    }
    os << "</svg>\n";
    os.precision(old);
}

void write_svg_file(const std::string& path, const PlotSpec& plot) {
    std::ofstream os(path);
    if (!os) throw Error("cannot open '" + path + "' for writing");
    write_svg(os, plot);
    if (!os) throw Error("write to '" + path + "' failed");
}

} // namespace nlfe
