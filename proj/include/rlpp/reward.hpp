#pragma once

#include "rlpp/gridworld.hpp"

namespace rlpp {

struct RewardParams {
    double alpha = 0.6;          // goal-progress weight
    double beta = 0.4;           // path-straightness weight
    double reward_end = 10.0;
    double reward_obstacle = -10.0;
};

// Dense reward for a free-position move:
//   alpha * (d(prev,end) - d(curr,end))
// + beta  * (d(start,curr) - d(start,prev) - d(prev,curr))
// All distances Euclidean. The beta term is <= 0 and vanishes exactly when
// prev lies on the segment from start to curr.
double shaped_reward(const RewardParams& params, Position start, Position end,
                     Position prev, Position curr);

// Terminal outcomes replace the shaped reward: end -> reward_end,
// obstacle/off-grid -> reward_obstacle, otherwise shaped_reward.
double step_reward(const RewardParams& params, Position start, Position end,
                   Position prev, const StepOutcome& outcome);

}  // namespace rlpp
