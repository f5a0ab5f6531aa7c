#include "rlpp/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace rlpp {

std::string map_to_svg(const GridMap& map, std::span<const Position> path,
                       int cell_px) {
    const int w = map.width() * cell_px;
    const int h = map.height() * cell_px;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
        << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";

    // y increases upward, SVG y increases downward.
    auto px = [&](Position p) { return p.x * cell_px; };
    auto py = [&](Position p) { return (map.height() - 1 - p.y) * cell_px; };

    for (int y = 0; y < map.height(); ++y) {
        for (int x = 0; x < map.width(); ++x) {
            const char* fill = "white";
            switch (map.at({x, y})) {
                case CellKind::Free: fill = "white"; break;
                case CellKind::Obstacle: fill = "black"; break;
                case CellKind::Start: fill = "green"; break;
                case CellKind::End: fill = "blue"; break;
            }
            out << "  <rect x=\"" << px({x, y}) << "\" y=\"" << py({x, y})
                << "\" width=\"" << cell_px << "\" height=\"" << cell_px
                << "\" fill=\"" << fill << "\" stroke=\"#ccc\"/>\n";
        }
    }

    if (!path.empty()) {
        out << "  <polyline fill=\"none\" stroke=\"red\" stroke-width=\""
            << cell_px / 6.0 << "\" points=\"";
        for (size_t i = 0; i < path.size(); ++i) {
            if (i) out << ' ';
            out << px(path[i]) + cell_px / 2.0 << ',' << py(path[i]) + cell_px / 2.0;
        }
        out << "\"/>\n";
    }

    out << "</svg>\n";
    return out.str();
}

std::string curves_to_svg(std::span<const CurveSeries> series, int width_px,
                          int height_px) {
    constexpr int kMargin = 40;
    constexpr std::array<const char*, 6> kColors = {"#1f77b4", "#ff7f0e", "#2ca02c",
                                                    "#d62728", "#9467bd", "#8c564b"};

    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    size_t n = 0;
    for (const CurveSeries& s : series) {
        n = std::max(n, s.values.size());
        for (double v : s.values) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    if (n == 0) {
        lo = 0.0;
        hi = 1.0;
        n = 1;
    }
    if (hi <= lo) hi = lo + 1.0;

    const double plot_w = width_px - 2.0 * kMargin;
    const double plot_h = height_px - 2.0 * kMargin;
    auto sx = [&](size_t i) {
        return kMargin + (n > 1 ? plot_w * i / (n - 1) : plot_w / 2.0);
    };
    auto sy = [&](double v) {
        return kMargin + plot_h * (1.0 - (v - lo) / (hi - lo));
    };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_px
        << "\" height=\"" << height_px << "\">\n";
    out << "  <rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\""
        << plot_w << "\" height=\"" << plot_h
        << "\" fill=\"white\" stroke=\"black\"/>\n";
    // Zero axis when it is inside the plotted range.
    if (lo < 0.0 && hi > 0.0)
        out << "  <line x1=\"" << kMargin << "\" y1=\"" << sy(0.0) << "\" x2=\""
            << kMargin + plot_w << "\" y2=\"" << sy(0.0)
            << "\" stroke=\"#999\" stroke-dasharray=\"4\"/>\n";

    for (size_t k = 0; k < series.size(); ++k) {
        const CurveSeries& s = series[k];
        if (s.values.empty()) continue;
        out << "  <polyline fill=\"none\" stroke=\"" << kColors[k % kColors.size()]
            << "\" points=\"";
        for (size_t i = 0; i < s.values.size(); ++i) {
            if (i) out << ' ';
            out << sx(i) << ',' << sy(s.values[i]);
        }
        out << "\"/>\n";
        out << "  <text x=\"" << kMargin + 6 << "\" y=\"" << kMargin + 16 + 16 * k
            << "\" fill=\"" << kColors[k % kColors.size()] << "\">" << s.label
            << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace rlpp
