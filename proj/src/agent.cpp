#include "rlpp/agent.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>
#include <unordered_set>

#include "rlpp/kernels.hpp"

namespace rlpp {

namespace {

EpisodeEnd to_episode_end(Terminal t) {
    switch (t) {
        case Terminal::ReachedEnd: return EpisodeEnd::ReachedEnd;
        case Terminal::HitObstacle: return EpisodeEnd::HitObstacle;
        case Terminal::OffGrid: return EpisodeEnd::OffGrid;
        case Terminal::None: break;
    }
    return EpisodeEnd::Timeout;
}

struct PositionHash {
    size_t operator()(Position p) const {
        return std::hash<long long>()((static_cast<long long>(p.y) << 32) ^
                                      static_cast<unsigned>(p.x));
    }
};

}  // namespace

const char* to_string(EpisodeEnd e) {
    switch (e) {
        case EpisodeEnd::ReachedEnd: return "reached_end";
        case EpisodeEnd::HitObstacle: return "hit_obstacle";
        case EpisodeEnd::OffGrid: return "off_grid";
        case EpisodeEnd::Timeout: return "timeout";
        case EpisodeEnd::LoopDetected: return "loop_detected";
    }
    return "unknown";
}

double EpisodeRecord::path_length() const {
    double len = 0.0;
    for (size_t i = 1; i < path.size(); ++i)
        len += euclidean(path[i - 1], path[i]);
    return len;
}

double epsilon_at(const TrainConfig& config, int env_step) {
    double span = config.epsilon_start - config.epsilon_end;
    double eps = config.epsilon_start -
                 span * static_cast<double>(env_step) / config.epsilon_decay_steps;
    return std::max(config.epsilon_end, eps);
}

Action greedy_action(std::span<const double> q_values) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(q_values.size()); ++i)
        if (q_values[i] > q_values[best]) best = i;
    return {best + 1};
}

Action select_action(std::span<const double> q_values, double epsilon, Rng& rng) {
    if (epsilon > 0.0 && rng.uniform() < epsilon)
        return {static_cast<int>(rng.below(q_values.size())) + 1};
    return greedy_action(q_values);
}

double compute_target(const NetworkParams& online, const NetworkParams& target,
                      const NetworkArch& arch, std::span<const GridMap> maps,
                      const Transition& transition, double gamma) {
    if (transition.terminal) return transition.reward;
    const GridMap& map = maps[transition.map_index];
    std::vector<double> next = encode_state(map, transition.next_state);
    Action pick = greedy_action(forward(online, arch, next));
    double value = forward(target, arch, next)[pick.index - 1];
    return transition.reward + gamma * value;
}

Position reset_episode(const GridMap& map, const TrainConfig& config, Rng& rng) {
    if (!config.use_random_init) return map.start();
    if (rng.uniform() < config.p_r) return map.start();
    std::vector<Position> cells = free_positions(map);
    return cells[rng.below(cells.size())];
}

bool train_step(std::span<const GridMap> maps, NetworkParams& online,
                NetworkParams& target, const ReplayBuffer& buffer,
                const TrainConfig& config, Rng& rng, long& train_step_count) {
    if (buffer.size() < static_cast<size_t>(config.min_replay_before_training))
        return false;

    std::vector<Transition> sampled(config.batch_size);
    for (Transition& t : sampled) t = buffer.sample(rng);

    std::vector<BatchItem> batch(sampled.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < static_cast<long>(sampled.size()); ++i) {
        const Transition& t = sampled[i];
        batch[i].state = encode_state(maps[t.map_index], t.state);
        batch[i].action = t.action;
        batch[i].td_target = compute_target(online, target, config.arch, maps, t,
                                            config.gamma);
    }

    Gradients grads = batch_gradients_parallel(online, config.arch, batch);
    adam_step(online, grads, config.optimizer);

    ++train_step_count;
    if (train_step_count % config.target_sync_period == 0)
        target = copy_params(online);
    return true;
}

TrainResult run_training(const GridMap& map, const TrainConfig& config) {
    return run_training(std::span<const GridMap>(&map, 1), config);
}

TrainResult run_training(std::span<const GridMap> maps, const TrainConfig& config) {
    if (maps.empty()) throw std::invalid_argument("run_training: no maps");
    Rng rng(config.seed);
    NetworkParams online = init_params(config.arch, config.seed);
    NetworkParams target = copy_params(online);
    ReplayBuffer buffer(config.replay_capacity);

    TrainResult result;
    long train_steps = 0;
    int env_step = 0;

    while (env_step < config.total_train_steps) {
        int map_index =
            maps.size() > 1 ? static_cast<int>(rng.below(maps.size())) : 0;
        const GridMap& map = maps[map_index];
        Position pos = reset_episode(map, config, rng);

        EpisodeRecord record;
        record.initial = pos;
        record.path.push_back(pos);

        while (true) {
            std::vector<double> state = encode_state(map, pos);
            std::vector<double> q = forward(online, config.arch, state);
            double eps = epsilon_at(config, env_step);
            Action action = select_action(q, eps, rng);
            StepOutcome outcome = apply_action(map, pos, action);

            // Baseline configuration keeps the terminal rewards but flattens
            // free moves to zero.
            double reward =
                (config.use_shaped_reward || outcome.terminal != Terminal::None)
                    ? step_reward(config.reward, map.start(), map.end(), pos, outcome)
                    : 0.0;

            buffer.push({pos, action, reward, outcome.next,
                         outcome.terminal != Terminal::None, map_index});

            record.steps += 1;
            record.total_reward += reward;
            record.path.push_back(outcome.next);
            record.epsilon = eps;
            ++env_step;

            train_step(maps, online, target, buffer, config, rng, train_steps);

            if (outcome.terminal != Terminal::None) {
                record.termination = to_episode_end(outcome.terminal);
                break;
            }
            pos = outcome.next;
            if (record.steps >= config.max_episode_steps) {
                record.termination = EpisodeEnd::Timeout;
                break;
            }
            if (env_step >= config.total_train_steps) {
                record.termination = EpisodeEnd::Timeout;
                break;
            }
        }

        record.average_reward_per_step = record.total_reward / record.steps;
        result.episodes.push_back(std::move(record));
    }

    result.params = std::move(online);
    return result;
}

EpisodeRecord rollout_policy(const GridMap& map, const NetworkParams& params,
                             const NetworkArch& arch, Position start, int step_cap,
                             const RewardParams& reward) {
    EpisodeRecord record;
    record.initial = start;
    record.path.push_back(start);
    std::unordered_set<Position, PositionHash> visited{start};

    Position pos = start;
    while (record.steps < step_cap) {
        std::vector<double> state = encode_state(map, pos);
        Action action = greedy_action(forward(params, arch, state));
        StepOutcome outcome = apply_action(map, pos, action);

        record.steps += 1;
        record.total_reward += step_reward(reward, map.start(), map.end(), pos, outcome);
        record.path.push_back(outcome.next);

        if (outcome.terminal != Terminal::None) {
            record.termination = to_episode_end(outcome.terminal);
            break;
        }
        if (!visited.insert(outcome.next).second) {
            record.termination = EpisodeEnd::LoopDetected;
            break;
        }
        pos = outcome.next;
    }
    if (record.steps == 0) {
        // Degenerate step_cap; count the rollout as an immediate timeout.
        record.steps = 1;
        record.termination = EpisodeEnd::Timeout;
    }
    record.average_reward_per_step = record.total_reward / record.steps;
    return record;
}

void write_episode_csv(const std::string& path,
                       std::span<const EpisodeRecord> records) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write episode csv: " + path);
    out << "episode,steps,total_reward,avg_reward_per_step,termination,epsilon\n";
    out.precision(17);
    for (size_t i = 0; i < records.size(); ++i) {
        const EpisodeRecord& r = records[i];
        out << i << ',' << r.steps << ',' << r.total_reward << ','
            << r.average_reward_per_step << ',' << to_string(r.termination) << ','
            << r.epsilon << '\n';
    }
}

}  // namespace rlpp
