#include "dimerctl/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "dimerctl/errors.hpp"

namespace dimerctl {

namespace {

struct Range {
    double lo = 0.0, hi = 1.0;
};

Range padded(double lo, double hi, double frac) {
    if (!(hi > lo)) {
        const double pad = std::max(1.0, std::abs(lo)) * 0.5;
        return {lo - pad, hi + pad};
    }
    const double pad = (hi - lo) * frac;
    return {lo - pad, hi + pad};
}

// Largest of {1, 2, 5} * 10^k not exceeding ~span/4, so axes get 4-8 ticks.
double nice_step(const Range& r) {
    const double raw = (r.hi - r.lo) / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double norm = raw / mag;
    double mult = 10.0;
    if (norm <= 1.0)
        mult = 1.0;
    else if (norm <= 2.0)
        mult = 2.0;
    else if (norm <= 5.0)
        mult = 5.0;
    return mult * mag;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (const char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

void write_svg_plot(const PlotSpec& spec, const std::filesystem::path& path) {
    if (spec.series.empty()) throw std::invalid_argument("svg plot: no series");
    for (const PlotSeries& s : spec.series) {
        if (s.x.empty() || s.x.size() != s.y.size())
            throw std::invalid_argument("svg plot: series needs equally sized, nonempty x and y");
    }

    double xlo = spec.series[0].x[0], xhi = xlo;
    double ylo = spec.series[0].y[0], yhi = ylo;
    for (const PlotSeries& s : spec.series) {
        for (const double v : s.x) xlo = std::min(xlo, v), xhi = std::max(xhi, v);
        for (const double v : s.y) ylo = std::min(ylo, v), yhi = std::max(yhi, v);
    }
    if (spec.dashed_hline) {
        ylo = std::min(ylo, *spec.dashed_hline);
        yhi = std::max(yhi, *spec.dashed_hline);
    }
    const Range xr = padded(xlo, xhi, 0.0);
    const Range yr = padded(ylo, yhi, 0.05);

    const double w = spec.width, h = spec.height;
    const double ml = 70, mr = 20, mt = 40, mb = 55;
    const auto map_x = [&](double x) { return ml + (x - xr.lo) / (xr.hi - xr.lo) * (w - ml - mr); };
    const auto map_y = [&](double y) {
        return h - mb - (y - yr.lo) / (yr.hi - yr.lo) * (h - mt - mb);
    };

    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path.string());

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\""
        << spec.height << "\" viewBox=\"0 0 " << spec.width << " " << spec.height << "\">\n";
    out << "<rect width=\"" << spec.width << "\" height=\"" << spec.height
        << "\" fill=\"white\"/>\n";
    out << "<g style=\"font-family:sans-serif;font-size:13px\" fill=\"#222\">\n";

    // Frame and ticks.
    out << "<rect x=\"" << px(ml) << "\" y=\"" << px(mt) << "\" width=\"" << px(w - ml - mr)
        << "\" height=\"" << px(h - mt - mb)
        << "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\"/>\n";
    const double xstep = nice_step(xr);
    for (double t = std::ceil(xr.lo / xstep) * xstep; t <= xr.hi + 1e-9 * xstep; t += xstep) {
        const double p = map_x(t);
        out << "<line x1=\"" << px(p) << "\" y1=\"" << px(h - mb) << "\" x2=\"" << px(p)
            << "\" y2=\"" << px(h - mb + 5) << "\" stroke=\"#444\"/>\n";
        out << "<text x=\"" << px(p) << "\" y=\"" << px(h - mb + 19)
            << "\" text-anchor=\"middle\">" << fmt(t == 0.0 ? 0.0 : t) << "</text>\n";
    }
    const double ystep = nice_step(yr);
    for (double t = std::ceil(yr.lo / ystep) * ystep; t <= yr.hi + 1e-9 * ystep; t += ystep) {
        const double p = map_y(t);
        out << "<line x1=\"" << px(ml - 5) << "\" y1=\"" << px(p) << "\" x2=\"" << px(ml)
            << "\" y2=\"" << px(p) << "\" stroke=\"#444\"/>\n";
        out << "<text x=\"" << px(ml - 8) << "\" y=\"" << px(p + 4) << "\" text-anchor=\"end\">"
            << fmt(t == 0.0 ? 0.0 : t) << "</text>\n";
    }

    // Titles and axis labels.
    out << "<text x=\"" << px(w / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
        << escape(spec.title) << "</text>\n";
    out << "<text x=\"" << px(ml + (w - ml - mr) / 2) << "\" y=\"" << px(h - 14)
        << "\" text-anchor=\"middle\">" << escape(spec.x_label) << "</text>\n";
    out << "<text x=\"18\" y=\"" << px(mt + (h - mt - mb) / 2)
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << px(mt + (h - mt - mb) / 2)
        << ")\">" << escape(spec.y_label) << "</text>\n";

    // Series, clipped to the frame.
    out << "<clipPath id=\"frame\"><rect x=\"" << px(ml) << "\" y=\"" << px(mt) << "\" width=\""
        << px(w - ml - mr) << "\" height=\"" << px(h - mt - mb) << "\"/></clipPath>\n";
    out << "<g clip-path=\"url(#frame)\">\n";
    if (spec.dashed_hline) {
        const double p = map_y(*spec.dashed_hline);
        out << "<line x1=\"" << px(ml) << "\" y1=\"" << px(p) << "\" x2=\"" << px(w - mr)
            << "\" y2=\"" << px(p)
            << "\" stroke=\"#555\" stroke-width=\"1.5\" stroke-dasharray=\"7 5\"/>\n";
    }
    for (const PlotSeries& s : spec.series) {
        out << "<polyline fill=\"none\" stroke=\"" << s.color
            << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (i) out << ' ';
            out << px(map_x(s.x[i])) << ',' << px(map_y(s.y[i]));
        }
        out << "\"/>\n";
    }
    out << "</g>\n";
    if (spec.dashed_hline && !spec.dashed_label.empty()) {
        out << "<text x=\"" << px(w - mr - 6) << "\" y=\"" << px(map_y(*spec.dashed_hline) - 6)
            << "\" text-anchor=\"end\" fill=\"#555\">" << escape(spec.dashed_label)
            << "</text>\n";
    }

    // Legend, one row per series.
    double ly = mt + 16;
    for (const PlotSeries& s : spec.series) {
        out << "<line x1=\"" << px(ml + 12) << "\" y1=\"" << px(ly - 4) << "\" x2=\""
            << px(ml + 34) << "\" y2=\"" << px(ly - 4) << "\" stroke=\"" << s.color
            << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << px(ml + 40) << "\" y=\"" << px(ly) << "\">" << escape(s.label)
            << "</text>\n";
        ly += 18;
    }

    out << "</g>\n</svg>\n";
    out.flush();
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace dimerctl
