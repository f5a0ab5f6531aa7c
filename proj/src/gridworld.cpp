#include "rlpp/gridworld.hpp"

#include <cmath>
#include <deque>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rlpp {

namespace {

constexpr std::array<int, 8> kDx = {1, 1, 0, -1, -1, -1, 0, 1};
constexpr std::array<int, 8> kDy = {0, 1, 1, 1, 0, -1, -1, -1};

}  // namespace

Position action_delta(Action a) {
    if (a.index < 1 || a.index > kNumActions)
        throw std::out_of_range("action index out of 1..8");
    return {kDx[a.index - 1], kDy[a.index - 1]};
}

double action_length(Action a) {
    Position d = action_delta(a);
    return (d.x != 0 && d.y != 0) ? std::sqrt(2.0) : 1.0;
}

GridMap::GridMap(int width, int height, std::vector<CellKind> cells)
    : width_(width), height_(height), cells_(std::move(cells)) {
    if (width_ <= 0 || height_ <= 0)
        throw std::invalid_argument("map dimensions must be positive");
    if (static_cast<int>(cells_.size()) != width_ * height_)
        throw std::invalid_argument("cell count does not match dimensions");
    int starts = 0, ends = 0;
    for (int y = 0; y < height_; ++y) {
        for (int x = 0; x < width_; ++x) {
            CellKind k = cells_[y * width_ + x];
            if (k == CellKind::Start) {
                start_ = {x, y};
                ++starts;
            } else if (k == CellKind::End) {
                end_ = {x, y};
                ++ends;
            }
        }
    }
    if (starts != 1 || ends != 1)
        throw std::invalid_argument("map must have exactly one start and one end");
}

void GridMap::set(Position p, CellKind k) {
    if (!in_bounds(p)) throw std::out_of_range("position off-map");
    CellKind old = cells_[p.y * width_ + p.x];
    if (old == CellKind::Start || old == CellKind::End || k == CellKind::Start ||
        k == CellKind::End)
        throw std::invalid_argument("start/end cells are immutable");
    cells_[p.y * width_ + p.x] = k;
}

StepOutcome apply_action(const GridMap& map, Position pos, Action action) {
    if (!map.in_bounds(pos) || map.at(pos) == CellKind::Obstacle)
        throw std::invalid_argument("apply_action: robot position invalid");
    Position d = action_delta(action);
    Position next{pos.x + d.x, pos.y + d.y};
    if (!map.in_bounds(next)) return {next, Terminal::OffGrid};
    switch (map.at(next)) {
        case CellKind::Obstacle:
            return {next, Terminal::HitObstacle};
        case CellKind::End:
            return {next, Terminal::ReachedEnd};
        default:
            return {next, Terminal::None};
    }
}

std::vector<double> encode_state(const GridMap& map, Position robot) {
    if (!map.in_bounds(robot) || map.at(robot) == CellKind::Obstacle)
        throw std::invalid_argument("encode_state: robot position invalid");
    std::vector<double> out(static_cast<size_t>(map.width()) * map.height(), 0.0);
    for (int y = 0; y < map.height(); ++y) {
        for (int x = 0; x < map.width(); ++x) {
            CellKind k = map.at({x, y});
            double v = 0.0;
            if (k == CellKind::Obstacle) v = -1.0;
            else if (k == CellKind::End) v = 1.0;
            out[y * map.width() + x] = v;
        }
    }
    out[robot.y * map.width() + robot.x] = 0.5;
    return out;
}

std::vector<Position> free_positions(const GridMap& map) {
    std::vector<Position> out;
    for (int y = 0; y < map.height(); ++y)
        for (int x = 0; x < map.width(); ++x) {
            CellKind k = map.at({x, y});
            if (k == CellKind::Free || k == CellKind::Start) out.push_back({x, y});
        }
    return out;
}

std::vector<Position> reachable_positions(const GridMap& map) {
    // BFS backwards from the end over the 8-connected non-obstacle graph.
    std::vector<char> seen(static_cast<size_t>(map.width()) * map.height(), 0);
    std::deque<Position> queue{map.end()};
    seen[map.end().y * map.width() + map.end().x] = 1;
    while (!queue.empty()) {
        Position p = queue.front();
        queue.pop_front();
        for (int i = 1; i <= kNumActions; ++i) {
            Position d = action_delta({i});
            Position n{p.x + d.x, p.y + d.y};
            if (!map.in_bounds(n) || map.at(n) == CellKind::Obstacle) continue;
            char& s = seen[n.y * map.width() + n.x];
            if (!s) {
                s = 1;
                queue.push_back(n);
            }
        }
    }
    std::vector<Position> out;
    for (Position p : free_positions(map))
        if (seen[p.y * map.width() + p.x]) out.push_back(p);
    return out;
}

double euclidean(Position a, Position b) {
    double dx = a.x - b.x, dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

GridMap parse_map(std::istream& in) {
    int width = 0, height = 0;
    if (!(in >> width >> height))
        throw std::runtime_error("map header: expected '<width> <height>'");
    std::string line;
    std::getline(in, line);
    std::vector<CellKind> cells(static_cast<size_t>(width) * height, CellKind::Free);
    for (int row = 0; row < height; ++row) {
        if (!std::getline(in, line))
            throw std::runtime_error("map body truncated");
        if (static_cast<int>(line.size()) < width)
            throw std::runtime_error("map row too short");
        int y = height - 1 - row;  // row 0 printed last
        for (int x = 0; x < width; ++x) {
            CellKind k;
            switch (line[x]) {
                case '.': k = CellKind::Free; break;
                case '#': k = CellKind::Obstacle; break;
                case 'S': k = CellKind::Start; break;
                case 'E': k = CellKind::End; break;
                default:
                    throw std::runtime_error("map: unexpected character '" +
                                             std::string(1, line[x]) + "'");
            }
            cells[y * width + x] = k;
        }
    }
    return GridMap(width, height, std::move(cells));
}

GridMap load_map(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open map file: " + path);
    return parse_map(in);
}

std::string render_map(const GridMap& map) {
    std::ostringstream out;
    out << map.width() << ' ' << map.height() << '\n';
    for (int y = map.height() - 1; y >= 0; --y) {
        for (int x = 0; x < map.width(); ++x) {
            char c = '.';
            switch (map.at({x, y})) {
                case CellKind::Free: c = '.'; break;
                case CellKind::Obstacle: c = '#'; break;
                case CellKind::Start: c = 'S'; break;
                case CellKind::End: c = 'E'; break;
            }
            out << c;
        }
        out << '\n';
    }
    return out.str();
}

void save_map(const GridMap& map, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write map file: " + path);
    out << render_map(map);
}

}  // namespace rlpp
