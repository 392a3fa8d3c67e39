#include "aoisched/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "aoisched/error.hpp"

namespace aoisched {
namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
constexpr int kPaletteSize = 6;

std::string escape_xml(const std::string& s) {
    std::string out;
    out.reserve(s.size());
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

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Tick step of the form {1,2,5} x 10^k giving roughly `target` intervals.
double nice_step(double span, int target) {
    double raw = span / std::max(1, target);
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double frac = raw / mag;
    double step = frac <= 1.0 ? 1.0 : frac <= 2.0 ? 2.0 : frac <= 5.0 ? 5.0 : 10.0;
    return step * mag;
}

struct Range {
    double lo = 0.0;
    double hi = 1.0;
};

Range pad(Range r) {
    if (r.hi - r.lo < 1e-12) {
        double w = std::max(1.0, std::fabs(r.hi)) * 0.5;
        r.lo -= w;
        r.hi += w;
    }
    return r;
}

} // namespace

std::string render_svg(const PlotSpec& spec, const std::vector<PlotSeries>& series) {
    const double ml = 72, mr = 24, mt = 48, mb = 58;
    const double W = spec.width, H = spec.height;
    const double pw = W - ml - mr, ph = H - mt - mb;

    bool any = false;
    Range rx, ry;
    for (const PlotSeries& s : series) {
        if (s.x.size() != s.y.size())
            raise(ErrorCode::InvalidConfig, "series \"" + s.label + "\" has mismatched x/y sizes");
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            double xv = s.x[i];
            if (spec.log_x) {
                if (!(xv > 0.0))
                    raise(ErrorCode::InvalidConfig, "log-x plot needs positive x values");
                xv = std::log10(xv);
            }
            if (!any) {
                rx = {xv, xv};
                ry = {s.y[i], s.y[i]};
                any = true;
            } else {
                rx.lo = std::min(rx.lo, xv);
                rx.hi = std::max(rx.hi, xv);
                ry.lo = std::min(ry.lo, s.y[i]);
                ry.hi = std::max(ry.hi, s.y[i]);
            }
        }
    }
    rx = pad(rx);
    ry = pad(ry);
    // Headroom so polylines do not sit on the frame.
    double yw = ry.hi - ry.lo;
    ry.lo -= 0.06 * yw;
    ry.hi += 0.06 * yw;

    auto X = [&](double v) { return ml + (v - rx.lo) / (rx.hi - rx.lo) * pw; };
    auto Y = [&](double v) { return mt + ph - (v - ry.lo) / (ry.hi - ry.lo) * ph; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << spec.width
        << "\" height=\"" << spec.height << "\" viewBox=\"0 0 " << spec.width << ' '
        << spec.height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#333\">\n";

    // Grid and ticks.
    svg << "<g stroke=\"#ddd\" stroke-width=\"1\">\n";
    std::ostringstream labels;
    if (spec.log_x) {
        int klo = static_cast<int>(std::ceil(rx.lo - 1e-9));
        int khi = static_cast<int>(std::floor(rx.hi + 1e-9));
        for (int k = klo; k <= khi; ++k) {
            double px = X(k);
            svg << "<line x1=\"" << fmt(px) << "\" y1=\"" << fmt(mt) << "\" x2=\"" << fmt(px)
                << "\" y2=\"" << fmt(mt + ph) << "\"/>\n";
            labels << "<text x=\"" << fmt(px) << "\" y=\"" << fmt(mt + ph + 18)
                   << "\" text-anchor=\"middle\">" << fmt(std::pow(10.0, k)) << "</text>\n";
        }
    } else {
        double step = nice_step(rx.hi - rx.lo, 6);
        for (double v = std::ceil(rx.lo / step) * step; v <= rx.hi + 1e-9 * step; v += step) {
            double px = X(v);
            svg << "<line x1=\"" << fmt(px) << "\" y1=\"" << fmt(mt) << "\" x2=\"" << fmt(px)
                << "\" y2=\"" << fmt(mt + ph) << "\"/>\n";
            labels << "<text x=\"" << fmt(px) << "\" y=\"" << fmt(mt + ph + 18)
                   << "\" text-anchor=\"middle\">" << fmt(v + 0.0) << "</text>\n";
        }
    }
    double ystep = nice_step(ry.hi - ry.lo, 6);
    for (double v = std::ceil(ry.lo / ystep) * ystep; v <= ry.hi + 1e-9 * ystep; v += ystep) {
        double py = Y(v);
        svg << "<line x1=\"" << fmt(ml) << "\" y1=\"" << fmt(py) << "\" x2=\"" << fmt(ml + pw)
            << "\" y2=\"" << fmt(py) << "\"/>\n";
        labels << "<text x=\"" << fmt(ml - 8) << "\" y=\"" << fmt(py + 4)
               << "\" text-anchor=\"end\">" << fmt(v + 0.0) << "</text>\n";
    }
    svg << "</g>\n" << labels.str();

    // Frame.
    svg << "<rect x=\"" << fmt(ml) << "\" y=\"" << fmt(mt) << "\" width=\"" << fmt(pw)
        << "\" height=\"" << fmt(ph) << "\" fill=\"none\" stroke=\"#333\"/>\n";

    // Series.
    for (std::size_t si = 0; si < series.size(); ++si) {
        const PlotSeries& s = series[si];
        if (s.x.empty()) continue;
        const char* color = kPalette[si % kPaletteSize];
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.8\"";
        if (s.dashed) svg << " stroke-dasharray=\"6 4\"";
        svg << " points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            double xv = spec.log_x ? std::log10(s.x[i]) : s.x[i];
            svg << fmt(X(xv)) << ',' << fmt(Y(s.y[i]));
            if (i + 1 < s.x.size()) svg << ' ';
        }
        svg << "\"/>\n";
    }

    // Legend, top-right inside the frame.
    double lx = ml + pw - 170, ly = mt + 12;
    for (std::size_t si = 0; si < series.size(); ++si) {
        const PlotSeries& s = series[si];
        const char* color = kPalette[si % kPaletteSize];
        svg << "<line x1=\"" << fmt(lx) << "\" y1=\"" << fmt(ly) << "\" x2=\"" << fmt(lx + 26)
            << "\" y2=\"" << fmt(ly) << "\" stroke=\"" << color << "\" stroke-width=\"1.8\"";
        if (s.dashed) svg << " stroke-dasharray=\"6 4\"";
        svg << "/>\n";
        svg << "<text x=\"" << fmt(lx + 32) << "\" y=\"" << fmt(ly + 4) << "\">"
            << escape_xml(s.label) << "</text>\n";
        ly += 18;
    }

    // Title and axis labels.
    svg << "<text x=\"" << fmt(W / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
        << escape_xml(spec.title) << "</text>\n";
    svg << "<text x=\"" << fmt(ml + pw / 2) << "\" y=\"" << fmt(H - 14)
        << "\" text-anchor=\"middle\">" << escape_xml(spec.x_label) << "</text>\n";
    svg << "<text x=\"18\" y=\"" << fmt(mt + ph / 2)
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << fmt(mt + ph / 2) << ")\">"
        << escape_xml(spec.y_label) << "</text>\n";

    svg << "</g>\n</svg>\n";
    return svg.str();
}

} // namespace aoisched
