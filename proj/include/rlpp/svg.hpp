#pragma once

#include <span>
#include <string>
#include <vector>

#include "rlpp/gridworld.hpp"

namespace rlpp {

// Grid rendering: free white, obstacle black, start green, end blue;
// optional path polyline overlay through cell centers.
std::string map_to_svg(const GridMap& map, std::span<const Position> path = {},
                       int cell_px = 24);

struct CurveSeries {
    std::string label;
    std::vector<double> values;
};

// Simple line chart, one polyline per series.
std::string curves_to_svg(std::span<const CurveSeries> series, int width_px = 800,
                          int height_px = 400);

}  // namespace rlpp
