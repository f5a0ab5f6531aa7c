#include "rlpp/reward.hpp"

namespace rlpp {

double shaped_reward(const RewardParams& params, Position start, Position end,
                     Position prev, Position curr) {
    double goal_term = euclidean(prev, end) - euclidean(curr, end);
    double straight_term =
        euclidean(start, curr) - euclidean(start, prev) - euclidean(prev, curr);
    return params.alpha * goal_term + params.beta * straight_term;
}

double step_reward(const RewardParams& params, Position start, Position end,
                   Position prev, const StepOutcome& outcome) {
    switch (outcome.terminal) {
        case Terminal::ReachedEnd:
            return params.reward_end;
        case Terminal::HitObstacle:
        case Terminal::OffGrid:
            return params.reward_obstacle;
        case Terminal::None:
            break;
    }
    return shaped_reward(params, start, end, prev, outcome.next);
}

}  // namespace rlpp
