#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace rlpp {

struct Position {
    int x = 0;  // column, increases rightward
    int y = 0;  // row, increases upward

    bool operator==(const Position&) const = default;
};

enum class CellKind : std::uint8_t { Free, Obstacle, Start, End };

// Action indices 1..8 in order E, NE, N, NW, W, SW, S, SE.
struct Action {
    int index = 1;

    bool operator==(const Action&) const = default;
};

inline constexpr int kNumActions = 8;

// Displacement of action i (1-based).
Position action_delta(Action a);

// Euclidean length of one step of action a (1 or sqrt(2)).
double action_length(Action a);

enum class Terminal : std::uint8_t { None, ReachedEnd, HitObstacle, OffGrid };

struct StepOutcome {
    Position next;
    Terminal terminal = Terminal::None;
};

class GridMap {
public:
    GridMap() = default;
    GridMap(int width, int height, std::vector<CellKind> cells);

    int width() const { return width_; }
    int height() const { return height_; }
    Position start() const { return start_; }
    Position end() const { return end_; }

    bool in_bounds(Position p) const {
        return p.x >= 0 && p.x < width_ && p.y >= 0 && p.y < height_;
    }
    CellKind at(Position p) const { return cells_[p.y * width_ + p.x]; }
    void set(Position p, CellKind k);

    const std::vector<CellKind>& cells() const { return cells_; }

    bool operator==(const GridMap&) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<CellKind> cells_;
    Position start_;
    Position end_;
};

// One environment step. pos must be on-map and not an obstacle.
StepOutcome apply_action(const GridMap& map, Position pos, Action action);

// Single-channel network input: free 0, obstacle -1, end +1, robot cell +0.5.
// Row-major, height x width, element [y * width + x].
std::vector<double> encode_state(const GridMap& map, Position robot);

// Robot-placeable cells (Free or Start), row-major order.
std::vector<Position> free_positions(const GridMap& map);

// Free positions from which the end is reachable (BFS over the 8-connected
// free graph with the same corner-cutting rule as apply_action).
std::vector<Position> reachable_positions(const GridMap& map);

double euclidean(Position a, Position b);

// Text map format: "<width> <height>" then height rows of {., #, S, E},
// row 0 printed last.
GridMap parse_map(std::istream& in);
GridMap load_map(const std::string& path);
std::string render_map(const GridMap& map);
void save_map(const GridMap& map, const std::string& path);

}  // namespace rlpp
