#include "rlpp/manifest.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace rlpp {

namespace {

nlohmann::json config_to_json(const TrainConfig& c) {
    return {
        {"gamma", c.gamma},
        {"batch_size", c.batch_size},
        {"p_r", c.p_r},
        {"target_sync_period", c.target_sync_period},
        {"epsilon_start", c.epsilon_start},
        {"epsilon_end", c.epsilon_end},
        {"epsilon_decay_steps", c.epsilon_decay_steps},
        {"max_episode_steps", c.max_episode_steps},
        {"min_replay_before_training", c.min_replay_before_training},
        {"replay_capacity", c.replay_capacity},
        {"total_train_steps", c.total_train_steps},
        {"seed", c.seed},
        {"use_random_init", c.use_random_init},
        {"use_shaped_reward", c.use_shaped_reward},
        {"reward",
         {{"alpha", c.reward.alpha},
          {"beta", c.reward.beta},
          {"reward_end", c.reward.reward_end},
          {"reward_obstacle", c.reward.reward_obstacle}}},
        {"optimizer",
         {{"learning_rate", c.optimizer.learning_rate},
          {"beta1", c.optimizer.beta1},
          {"beta2", c.optimizer.beta2},
          {"epsilon", c.optimizer.epsilon}}},
        {"arch",
         {{"input_h", c.arch.input_h},
          {"input_w", c.arch.input_w},
          {"conv_filters", c.arch.conv_filters},
          {"conv_kernel", c.arch.conv_kernel},
          {"conv_stride", c.arch.conv_stride},
          {"conv_padding", c.arch.conv_padding},
          {"output_dim", c.arch.output_dim}}},
    };
}

TrainConfig config_from_json(const nlohmann::json& j) {
    TrainConfig c;
    c.gamma = j.at("gamma");
    c.batch_size = j.at("batch_size");
    c.p_r = j.at("p_r");
    c.target_sync_period = j.at("target_sync_period");
    c.epsilon_start = j.at("epsilon_start");
    c.epsilon_end = j.at("epsilon_end");
    c.epsilon_decay_steps = j.at("epsilon_decay_steps");
    c.max_episode_steps = j.at("max_episode_steps");
    c.min_replay_before_training = j.at("min_replay_before_training");
    c.replay_capacity = j.at("replay_capacity");
    c.total_train_steps = j.at("total_train_steps");
    c.seed = j.at("seed");
    c.use_random_init = j.at("use_random_init");
    c.use_shaped_reward = j.at("use_shaped_reward");
    const auto& r = j.at("reward");
    c.reward.alpha = r.at("alpha");
    c.reward.beta = r.at("beta");
    c.reward.reward_end = r.at("reward_end");
    c.reward.reward_obstacle = r.at("reward_obstacle");
    const auto& o = j.at("optimizer");
    c.optimizer.learning_rate = o.at("learning_rate");
    c.optimizer.beta1 = o.at("beta1");
    c.optimizer.beta2 = o.at("beta2");
    c.optimizer.epsilon = o.at("epsilon");
    const auto& a = j.at("arch");
    c.arch.input_h = a.at("input_h");
    c.arch.input_w = a.at("input_w");
    c.arch.conv_filters = a.at("conv_filters");
    c.arch.conv_kernel = a.at("conv_kernel");
    c.arch.conv_stride = a.at("conv_stride");
    c.arch.conv_padding = a.at("conv_padding");
    c.arch.output_dim = a.at("output_dim");
    return c;
}

}  // namespace

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001b3ull;
    }
    std::ostringstream out;
    out << std::hex << h;
    return out.str();
}

std::string file_hash(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for hashing: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return fnv1a_hex(buf.str());
}

void save_manifest(const std::string& path, const RunManifest& manifest) {
    nlohmann::json j = {
        {"config", config_to_json(manifest.config)},
        {"map_file", manifest.map_file},
        {"map_hash", manifest.map_hash},
        {"version", manifest.version},
        {"started_at", manifest.started_at},
        {"finished_at", manifest.finished_at},
    };
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write manifest: " + path);
    out << j.dump(2) << '\n';
}

RunManifest load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open manifest: " + path);
    nlohmann::json j = nlohmann::json::parse(in);
    RunManifest m;
    m.config = config_from_json(j.at("config"));
    m.map_file = j.value("map_file", "");
    m.map_hash = j.value("map_hash", "");
    m.version = j.value("version", "");
    m.started_at = j.value("started_at", "");
    m.finished_at = j.value("finished_at", "");
    return m;
}

}  // namespace rlpp
