#include "rlpp/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace rlpp {

namespace {

struct QueueEntry {
    double f;
    double g;
    Position pos;
};

// f ascending; ties by larger g, then lowest (y, x).
struct EntryOrder {
    bool operator()(const QueueEntry& a, const QueueEntry& b) const {
        if (a.f != b.f) return a.f > b.f;
        if (a.g != b.g) return a.g < b.g;
        if (a.pos.y != b.pos.y) return a.pos.y > b.pos.y;
        return a.pos.x > b.pos.x;
    }
};

std::optional<PlanResult> best_first(const GridMap& map, Position start,
                                     bool use_heuristic) {
    if (!map.in_bounds(start) || map.at(start) == CellKind::Obstacle)
        throw std::invalid_argument("planner start position invalid");

    const int w = map.width(), h = map.height();
    const Position goal = map.end();
    auto idx = [w](Position p) { return static_cast<size_t>(p.y) * w + p.x; };
    auto heuristic = [&](Position p) {
        return use_heuristic ? euclidean(p, goal) : 0.0;
    };

    std::vector<double> dist(static_cast<size_t>(w) * h,
                             std::numeric_limits<double>::infinity());
    std::vector<int> parent(static_cast<size_t>(w) * h, -1);
    std::vector<char> closed(static_cast<size_t>(w) * h, 0);
    std::priority_queue<QueueEntry, std::vector<QueueEntry>, EntryOrder> open;

    dist[idx(start)] = 0.0;
    open.push({heuristic(start), 0.0, start});
    int expanded = 0;

    while (!open.empty()) {
        QueueEntry top = open.top();
        open.pop();
        size_t ti = idx(top.pos);
        if (closed[ti]) continue;
        closed[ti] = 1;
        ++expanded;

        if (top.pos == goal) {
            PlanResult result;
            result.expanded = expanded;
            result.length = dist[ti];
            for (Position p = goal;;) {
                result.path.push_back(p);
                int pi = parent[idx(p)];
                if (pi < 0) break;
                p = {pi % w, pi / w};
            }
            std::reverse(result.path.begin(), result.path.end());
            return result;
        }

        for (int a = 1; a <= kNumActions; ++a) {
            Position d = action_delta({a});
            Position n{top.pos.x + d.x, top.pos.y + d.y};
            if (!map.in_bounds(n) || map.at(n) == CellKind::Obstacle) continue;
            double ng = dist[ti] + action_length({a});
            size_t ni = idx(n);
            if (ng < dist[ni]) {
                dist[ni] = ng;
                parent[ni] = static_cast<int>(ti);
                open.push({ng + heuristic(n), ng, n});
            }
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<PlanResult> astar(const GridMap& map, Position start) {
    return best_first(map, start, true);
}

std::optional<PlanResult> dijkstra(const GridMap& map, Position start) {
    return best_first(map, start, false);
}

std::optional<PlanResult> rrt_plan(const GridMap& map, Position start,
                                   int max_samples, Rng& rng) {
    if (!map.in_bounds(start) || map.at(start) == CellKind::Obstacle)
        throw std::invalid_argument("planner start position invalid");

    const int w = map.width();
    // Sample space is the robot-placeable cells plus the end itself; without
    // the end in the sample set a saturated tree can never step onto it.
    std::vector<Position> samples = free_positions(map);
    samples.push_back(map.end());
    std::vector<Position> nodes{start};
    std::vector<int> parents{-1};
    std::vector<int> node_at(static_cast<size_t>(w) * map.height(), -1);
    node_at[start.y * w + start.x] = 0;

    auto extract = [&](int leaf) {
        PlanResult result;
        for (int i = leaf; i >= 0; i = parents[i]) result.path.push_back(nodes[i]);
        std::reverse(result.path.begin(), result.path.end());
        for (size_t i = 1; i < result.path.size(); ++i)
            result.length += euclidean(result.path[i - 1], result.path[i]);
        result.expanded = static_cast<int>(nodes.size());
        return result;
    };

    for (int iter = 0; iter < max_samples; ++iter) {
        Position sample = samples[rng.below(samples.size())];

        int nearest = 0;
        double best = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < nodes.size(); ++i) {
            double d = euclidean(nodes[i], sample);
            if (d < best) {
                best = d;
                nearest = static_cast<int>(i);
            }
        }
        Position from = nodes[nearest];
        int sx = (sample.x > from.x) - (sample.x < from.x);
        int sy = (sample.y > from.y) - (sample.y < from.y);
        if (sx == 0 && sy == 0) continue;
        Position next{from.x + sx, from.y + sy};
        if (!map.in_bounds(next) || map.at(next) == CellKind::Obstacle) continue;
        if (next == map.end()) {
            nodes.push_back(next);
            parents.push_back(nearest);
            return extract(static_cast<int>(nodes.size()) - 1);
        }
        if (node_at[next.y * w + next.x] >= 0) continue;
        node_at[next.y * w + next.x] = static_cast<int>(nodes.size());
        nodes.push_back(next);
        parents.push_back(nearest);
    }
    return std::nullopt;
}

std::string format_plan(const PlanResult& plan) {
    std::ostringstream out;
    for (Position p : plan.path) out << p.x << ',' << p.y << '\n';
    out << "length=" << plan.length << " expanded=" << plan.expanded << '\n';
    return out.str();
}

}  // namespace rlpp
