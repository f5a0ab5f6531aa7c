#pragma once

#include <optional>
#include <vector>

#include "rlpp/gridworld.hpp"
#include "rlpp/rng.hpp"

namespace rlpp {

struct PlanResult {
    std::vector<Position> path;  // start .. end inclusive
    double length = 0.0;         // sum of Euclidean step lengths
    int expanded = 0;            // nodes expanded
};

// Optimal 8-connected path with edge costs 1 / sqrt(2) and Euclidean
// heuristic. Ties in f broken by larger g, then lowest (y, x).
// nullopt when the end is unreachable.
std::optional<PlanResult> astar(const GridMap& map, Position start);

// Same search with a zero heuristic; the optimality oracle.
std::optional<PlanResult> dijkstra(const GridMap& map, Position start);

// Grid-adapted RRT: uniform free-cell samples, nearest tree node by
// Euclidean distance, one 8-connected step toward the sample per
// extension. Not length-optimal.
std::optional<PlanResult> rrt_plan(const GridMap& map, Position start,
                                   int max_samples, Rng& rng);

// Format used by the planner CLI: "x,y" per path cell then a summary line.
std::string format_plan(const PlanResult& plan);

}  // namespace rlpp
