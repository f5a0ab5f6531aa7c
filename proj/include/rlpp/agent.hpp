#pragma once

#include <span>
#include <string>
#include <vector>

#include "rlpp/gridworld.hpp"
#include "rlpp/neuralnet.hpp"
#include "rlpp/reward.hpp"
#include "rlpp/rng.hpp"

namespace rlpp {

struct Transition {
    Position state;
    Action action;
    double reward = 0.0;
    Position next_state;   // attempted cell; may be off-map when terminal
    bool terminal = false;
    int map_index = 0;     // which map the transition was observed on
};

class ReplayBuffer {
public:
    explicit ReplayBuffer(size_t capacity = 10000) : capacity_(capacity) {}

    void push(const Transition& t) {
        if (storage_.size() < capacity_) {
            storage_.push_back(t);
        } else {
            storage_[cursor_] = t;
        }
        cursor_ = (cursor_ + 1) % capacity_;
    }

    size_t size() const { return storage_.size(); }
    size_t capacity() const { return capacity_; }
    const Transition& at(size_t i) const { return storage_[i]; }

    // Uniform with replacement.
    const Transition& sample(Rng& rng) const { return storage_[rng.below(size())]; }

private:
    size_t capacity_;
    size_t cursor_ = 0;
    std::vector<Transition> storage_;
};

struct TrainConfig {
    double gamma = 0.95;
    int batch_size = 32;
    double p_r = 0.5;                     // probability of the designated start
    int target_sync_period = 500;         // training steps between target copies
    double epsilon_start = 1.0;
    double epsilon_end = 0.1;
    int epsilon_decay_steps = 10000;
    int max_episode_steps = 200;
    int min_replay_before_training = 500;
    size_t replay_capacity = 10000;
    int total_train_steps = 50000;        // environment steps
    std::uint64_t seed = 0;
    RewardParams reward;
    OptimizerConfig optimizer;
    NetworkArch arch;
    bool use_random_init = true;
    bool use_shaped_reward = true;
};

enum class EpisodeEnd : std::uint8_t {
    ReachedEnd,
    HitObstacle,
    OffGrid,
    Timeout,
    LoopDetected,
};

const char* to_string(EpisodeEnd e);

struct EpisodeRecord {
    Position initial;
    int steps = 0;
    double total_reward = 0.0;
    double average_reward_per_step = 0.0;
    EpisodeEnd termination = EpisodeEnd::Timeout;
    std::vector<Position> path;  // positions visited, initial first
    double epsilon = 0.0;        // behavior epsilon when the episode ended

    bool success() const { return termination == EpisodeEnd::ReachedEnd; }
    double path_length() const;
};

// Linear anneal, clamped at epsilon_end.
double epsilon_at(const TrainConfig& config, int env_step);

// Epsilon-greedy; greedy ties broken by lowest action index.
Action select_action(std::span<const double> q_values, double epsilon, Rng& rng);

Action greedy_action(std::span<const double> q_values);

// Double-DQN target: online net picks the bootstrap action, target net
// evaluates it. Terminal transitions return the reward alone.
double compute_target(const NetworkParams& online, const NetworkParams& target,
                      const NetworkArch& arch, std::span<const GridMap> maps,
                      const Transition& transition, double gamma);

// Start-or-random-free-cell initialization.
Position reset_episode(const GridMap& map, const TrainConfig& config, Rng& rng);

// One mini-batch update; returns false (no-op) while the buffer is below
// the warm-up threshold. train_step_count drives target syncing.
bool train_step(std::span<const GridMap> maps, NetworkParams& online,
                NetworkParams& target, const ReplayBuffer& buffer,
                const TrainConfig& config, Rng& rng, long& train_step_count);

struct TrainResult {
    NetworkParams params;
    std::vector<EpisodeRecord> episodes;
};

TrainResult run_training(const GridMap& map, const TrainConfig& config);

// Multi-map variant: each episode draws one map uniformly.
TrainResult run_training(std::span<const GridMap> maps, const TrainConfig& config);

// Greedy rollout; fails on terminal collision, step cap, or revisiting a
// position (loop detection).
EpisodeRecord rollout_policy(const GridMap& map, const NetworkParams& params,
                             const NetworkArch& arch, Position start, int step_cap,
                             const RewardParams& reward = {});

void write_episode_csv(const std::string& path,
                       std::span<const EpisodeRecord> records);

}  // namespace rlpp
