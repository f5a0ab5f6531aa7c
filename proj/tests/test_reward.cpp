#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rlpp/reward.hpp"
#include "rlpp/rng.hpp"
#include "test_util.hpp"

using namespace rlpp;
using namespace rlpp::testutil;

namespace {

// Independent recomputation straight from the distance definitions.
double shaped_reward_oracle(double alpha, double beta, Position s, Position e,
                            Position prev, Position curr) {
    auto dist = [](Position a, Position b) {
        return std::hypot(a.x - b.x, a.y - b.y);
    };
    return alpha * (dist(prev, e) - dist(curr, e)) +
           beta * (dist(s, curr) - dist(s, prev) - dist(prev, curr));
}

}  // namespace

TEST_CASE("worked value: on-ray diagonal move toward the goal") {
    RewardParams params;
    double r = shaped_reward(params, {0, 0}, {10, 10}, {2, 2}, {3, 3});
    CHECK(r == doctest::Approx(0.84853).epsilon(1e-5));
    CHECK(r == doctest::Approx(shaped_reward_oracle(0.6, 0.4, {0, 0}, {10, 10},
                                                    {2, 2}, {3, 3}))
                   .epsilon(1e-12));
    // prev lies on the start->curr ray, so the beta term vanishes.
    double beta_term = std::sqrt(18.0) - std::sqrt(8.0) - std::sqrt(2.0);
    CHECK(std::abs(beta_term) < 1e-12);
}

TEST_CASE("worked value: off-ray detour is penalized") {
    RewardParams params;
    double r = shaped_reward(params, {0, 0}, {10, 0}, {5, 0}, {5, 1});
    CHECK(r == doctest::Approx(-0.41980).epsilon(1e-4));
    CHECK(r == doctest::Approx(shaped_reward_oracle(0.6, 0.4, {0, 0}, {10, 0},
                                                    {5, 0}, {5, 1}))
                   .epsilon(1e-12));
}

TEST_CASE("degenerate weights give zero reward") {
    RewardParams params;
    params.alpha = 0.0;
    params.beta = 0.0;
    CHECK(shaped_reward(params, {0, 0}, {9, 9}, {4, 4}, {5, 5}) == 0.0);
}

TEST_CASE("beta term is never positive (triangle inequality)") {
    RewardParams params;
    params.alpha = 0.0;
    params.beta = 1.0;
    Rng rng(7);
    for (int i = 0; i < 20000; ++i) {
        Position s{int(rng.below(40)) - 20, int(rng.below(40)) - 20};
        Position prev{int(rng.below(40)) - 20, int(rng.below(40)) - 20};
        Position curr{int(rng.below(40)) - 20, int(rng.below(40)) - 20};
        if (prev == curr) continue;
        CHECK(shaped_reward(params, s, {0, 0}, prev, curr) <= 1e-12);
    }
}

TEST_CASE("beta term vanishes exactly when prev is between start and curr") {
    RewardParams params;
    params.alpha = 0.0;
    params.beta = 1.0;
    Rng rng(8);
    for (int i = 0; i < 5000; ++i) {
        // Construct collinear triples: start, start + k*d, start + m*d, k <= m.
        Position s{int(rng.below(20)), int(rng.below(20))};
        int dx = int(rng.below(7)) - 3, dy = int(rng.below(7)) - 3;
        if (dx == 0 && dy == 0) continue;
        int k = 1 + int(rng.below(4));
        int m = k + 1 + int(rng.below(4));
        Position prev{s.x + k * dx, s.y + k * dy};
        Position curr{s.x + m * dx, s.y + m * dy};
        CHECK(std::abs(shaped_reward(params, s, {0, 0}, prev, curr)) < 1e-9);
    }
}

TEST_CASE("alpha term is antisymmetric under swapping prev and curr") {
    RewardParams params;
    params.beta = 0.0;
    Rng rng(9);
    for (int i = 0; i < 5000; ++i) {
        Position e{int(rng.below(20)), int(rng.below(20))};
        Position a{int(rng.below(20)), int(rng.below(20))};
        Position b{int(rng.below(20)), int(rng.below(20))};
        double fwd = shaped_reward(params, {0, 0}, e, a, b);
        double rev = shaped_reward(params, {0, 0}, e, b, a);
        CHECK(fwd == doctest::Approx(-rev).epsilon(1e-12));
    }
}

TEST_CASE("shaped reward is translation invariant") {
    RewardParams params;
    Rng rng(10);
    for (int i = 0; i < 5000; ++i) {
        Position s{int(rng.below(15)), int(rng.below(15))};
        Position e{int(rng.below(15)), int(rng.below(15))};
        Position prev{int(rng.below(15)), int(rng.below(15))};
        Position curr{int(rng.below(15)), int(rng.below(15))};
        int tx = int(rng.below(21)) - 10, ty = int(rng.below(21)) - 10;
        double base = shaped_reward(params, s, e, prev, curr);
        double moved = shaped_reward(params, {s.x + tx, s.y + ty},
                                     {e.x + tx, e.y + ty}, {prev.x + tx, prev.y + ty},
                                     {curr.x + tx, curr.y + ty});
        CHECK(base == doctest::Approx(moved).epsilon(1e-9));
    }
}

TEST_CASE("single-step rewards are bounded") {
    RewardParams params;
    GridMap map = empty_map(20, {0, 0}, {19, 19});
    Rng rng(11);
    const double sqrt2 = std::sqrt(2.0);
    for (int i = 0; i < 5000; ++i) {
        Position prev{int(rng.below(20)), int(rng.below(20))};
        int a = 1 + int(rng.below(8));
        Position d = action_delta({a});
        Position curr{prev.x + d.x, prev.y + d.y};
        if (curr.x < 0 || curr.x >= 20 || curr.y < 0 || curr.y >= 20) continue;
        if (prev == curr) continue;

        RewardParams alpha_only{params.alpha, 0.0, 10, -10};
        RewardParams beta_only{0.0, params.beta, 10, -10};
        CHECK(std::abs(shaped_reward(alpha_only, map.start(), map.end(), prev,
                                     curr)) <= params.alpha * sqrt2 + 1e-12);
        CHECK(std::abs(shaped_reward(beta_only, map.start(), map.end(), prev,
                                     curr)) <= params.beta * 2.0 * sqrt2 + 1e-12);
    }
}

TEST_CASE("step_reward: terminal rewards replace the shaped reward") {
    RewardParams params;
    GridMap map = empty_map(20, {0, 0}, {10, 10});
    CHECK(step_reward(params, map.start(), map.end(), {9, 9},
                      {{10, 10}, Terminal::ReachedEnd}) == 10.0);
    CHECK(step_reward(params, map.start(), map.end(), {4, 4},
                      {{5, 5}, Terminal::HitObstacle}) == -10.0);
    CHECK(step_reward(params, map.start(), map.end(), {0, 0},
                      {{-1, 0}, Terminal::OffGrid}) == -10.0);
    CHECK(step_reward(params, map.start(), map.end(), {2, 2},
                      {{3, 3}, Terminal::None}) ==
          doctest::Approx(0.84853).epsilon(1e-5));
}
