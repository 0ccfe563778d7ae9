#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "cavityduet/errors.hpp"
#include "cavityduet/observables.hpp"

namespace cduet {

struct SvgCurve {
    const std::vector<double>* y = nullptr;
    std::string label;
};

struct SvgPanel {
    std::string title;
    std::vector<SvgCurve> curves;
};

namespace detail {

inline std::string fmt2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline std::string fmt_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

inline const char* palette(std::size_t i) {
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    return colors[i % (sizeof colors / sizeof colors[0])];
}

}  // namespace detail

// Small static plotter: fixed layout, fixed number formatting, no external
// state, so identical inputs produce byte-identical files.
inline void emit_svg(const std::vector<double>& x, const std::vector<SvgPanel>& panels,
                     const std::string& path, const std::string& x_label = "tau") {
    const int cols = panels.size() > 1 ? 2 : 1;
    const int rows = static_cast<int>((panels.size() + cols - 1) / cols);
    const double pw = 470.0, ph = 330.0;          // panel cell
    const double ml = 58.0, mr = 14.0, mt = 30.0, mb = 44.0;
    const double width = cols * pw, height = rows * ph;

    std::ofstream f(path);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    f << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";

    const double x_lo = x.empty() ? 0.0 : x.front();
    const double x_hi = x.empty() ? 1.0 : x.back();
    const double x_span = (x_hi > x_lo) ? (x_hi - x_lo) : 1.0;

    for (std::size_t pi = 0; pi < panels.size(); ++pi) {
        const SvgPanel& panel = panels[pi];
        const double ox = (pi % static_cast<std::size_t>(cols)) * pw;
        const double oy = (pi / static_cast<std::size_t>(cols)) * ph;
        const double plot_w = pw - ml - mr, plot_h = ph - mt - mb;

        double y_lo = 0.0, y_hi = 1.0;
        bool seen = false;
        for (const auto& c : panel.curves)
            for (double v : *c.y) {
                if (!std::isfinite(v)) continue;
                if (!seen) { y_lo = y_hi = v; seen = true; }
                y_lo = std::min(y_lo, v);
                y_hi = std::max(y_hi, v);
            }
        if (!seen) { y_lo = 0.0; y_hi = 1.0; }
        if (y_hi - y_lo < 1e-12) { y_lo -= 1.0; y_hi += 1.0; }
        const double pad = 0.05 * (y_hi - y_lo);
        y_lo -= pad;
        y_hi += pad;
        const double y_span = y_hi - y_lo;

        auto px = [&](double v) { return ox + ml + (v - x_lo) / x_span * plot_w; };
        auto py = [&](double v) { return oy + mt + (y_hi - v) / y_span * plot_h; };

        f << "<rect x=\"" << detail::fmt2(ox + ml) << "\" y=\"" << detail::fmt2(oy + mt)
          << "\" width=\"" << detail::fmt2(plot_w) << "\" height=\"" << detail::fmt2(plot_h)
          << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
        f << "<text x=\"" << detail::fmt2(ox + ml) << "\" y=\"" << detail::fmt2(oy + mt - 9)
          << "\" font-family=\"sans-serif\" font-size=\"13\">" << panel.title << "</text>\n";

        for (int t = 0; t <= 4; ++t) {
            const double xv = x_lo + x_span * t / 4.0;
            const double yv = y_lo + y_span * t / 4.0;
            const double gx = px(xv), gy = py(yv);
            f << "<line x1=\"" << detail::fmt2(gx) << "\" y1=\"" << detail::fmt2(oy + mt + plot_h)
              << "\" x2=\"" << detail::fmt2(gx) << "\" y2=\""
              << detail::fmt2(oy + mt + plot_h + 4) << "\" stroke=\"black\"/>\n";
            f << "<text x=\"" << detail::fmt2(gx) << "\" y=\""
              << detail::fmt2(oy + mt + plot_h + 17)
              << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">"
              << detail::fmt_tick(xv) << "</text>\n";
            f << "<line x1=\"" << detail::fmt2(ox + ml - 4) << "\" y1=\"" << detail::fmt2(gy)
              << "\" x2=\"" << detail::fmt2(ox + ml) << "\" y2=\"" << detail::fmt2(gy)
              << "\" stroke=\"black\"/>\n";
            f << "<text x=\"" << detail::fmt2(ox + ml - 7) << "\" y=\"" << detail::fmt2(gy + 3)
              << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">"
              << detail::fmt_tick(yv) << "</text>\n";
        }
        f << "<text x=\"" << detail::fmt2(ox + ml + plot_w / 2) << "\" y=\""
          << detail::fmt2(oy + mt + plot_h + 32)
          << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" << x_label
          << "</text>\n";

        for (std::size_t ci = 0; ci < panel.curves.size(); ++ci) {
            const auto& c = panel.curves[ci];
            f << "<polyline fill=\"none\" stroke=\"" << detail::palette(ci)
              << "\" stroke-width=\"1.2\" points=\"";
            for (std::size_t i = 0; i < x.size() && i < c.y->size(); ++i) {
                const double v = (*c.y)[i];
                if (!std::isfinite(v)) continue;
                f << detail::fmt2(px(x[i])) << ',' << detail::fmt2(py(v)) << ' ';
            }
            f << "\"/>\n";
            const double lx = ox + ml + plot_w - 120, ly = oy + mt + 14 + 14 * ci;
            f << "<line x1=\"" << detail::fmt2(lx) << "\" y1=\"" << detail::fmt2(ly - 4)
              << "\" x2=\"" << detail::fmt2(lx + 22) << "\" y2=\"" << detail::fmt2(ly - 4)
              << "\" stroke=\"" << detail::palette(ci) << "\" stroke-width=\"1.2\"/>\n";
            f << "<text x=\"" << detail::fmt2(lx + 27) << "\" y=\"" << detail::fmt2(ly)
              << "\" font-family=\"sans-serif\" font-size=\"10\">" << c.label << "</text>\n";
        }
    }
    f << "</svg>\n";
    if (!f) throw IoError("write to '" + path + "' failed");
}

// Panel layouts used by the figure subcommand.
inline void emit_series_svg(const ObservableSeries& s, const std::string& preset,
                            const std::string& path) {
    std::vector<SvgPanel> panels;
    if (preset == "fig1") {
        panels.push_back({"cavity one, product form", {{&s.n1_A, "<n1>"}, {&s.sz1_A, "<sz1>"}, {&s.m1_A, "<M1>"}}});
        panels.push_back({"product form minus exact", {{&s.d_n1, "d n1"}, {&s.d_sz1, "d sz1"}}});
    } else if (preset == "fig2") {
        panels.push_back({"photon exchange", {{&s.n1_A, "<n1>"}, {&s.n2_A, "<n2>"}}});
        panels.push_back({"local excitations", {{&s.m1_A, "<M1>"}, {&s.m2_A, "<M2>"}, {&s.mtot_A, "<M>"}}});
        panels.push_back({"product form minus exact", {{&s.d_n1, "d n1"}, {&s.d_n2, "d n2"}}});
        panels.push_back({"excitation differences", {{&s.d_m1, "d M1"}, {&s.d_m2, "d M2"}}});
    } else if (preset == "fig3") {
        panels.push_back({"photon numbers", {{&s.n1_A, "<n1> prod"}, {&s.n1_N, "<n1> exact"}, {&s.n2_A, "<n2> prod"}, {&s.n2_N, "<n2> exact"}}});
        panels.push_back({"inversions", {{&s.sz1_A, "<sz1> prod"}, {&s.sz1_N, "<sz1> exact"}, {&s.sz2_A, "<sz2> prod"}, {&s.sz2_N, "<sz2> exact"}}});
        panels.push_back({"photon differences", {{&s.d_n1, "d n1"}, {&s.d_n2, "d n2"}}});
        panels.push_back({"inversion differences", {{&s.d_sz1, "d sz1"}, {&s.d_sz2, "d sz2"}}});
    } else {
        panels.push_back({"observables, product form", {{&s.n1_A, "<n1>"}, {&s.n2_A, "<n2>"}, {&s.sz1_A, "<sz1>"}, {&s.sz2_A, "<sz2>"}}});
        panels.push_back({"product form minus exact", {{&s.d_n1, "d n1"}, {&s.d_n2, "d n2"}, {&s.d_sz1, "d sz1"}, {&s.d_sz2, "d sz2"}}});
    }
    emit_svg(s.tau, panels, path);
}

}  // namespace cduet
