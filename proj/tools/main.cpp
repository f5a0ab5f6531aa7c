#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rlpp/agent.hpp"
#include "rlpp/baselines.hpp"
#include "rlpp/experiments.hpp"
#include "rlpp/gridworld.hpp"
#include "rlpp/manifest.hpp"
#include "rlpp/svg.hpp"

namespace fs = std::filesystem;
using namespace rlpp;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitMissing = 3;
constexpr int kExitNoPath = 4;
constexpr const char* kVersion = "rlpp 0.1.0";

std::string now_iso8601() {
    auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&t));
    return buf;
}

std::string out_root() {
    const char* root = std::getenv("RLPP_OUT_ROOT");
    return root ? root : ".";
}

GridMap load_map_or_exit(const std::string& path) {
    if (!fs::exists(path)) {
        std::cerr << "map file not found: " << path << '\n';
        std::exit(kExitMissing);
    }
    return load_map(path);
}

Position parse_xy(const std::string& text) {
    size_t comma = text.find(',');
    if (comma == std::string::npos)
        throw CLI::ValidationError("expected 'x,y', got: " + text);
    return {std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
}

int cmd_train(const std::string& map_path, std::string out_dir, TrainConfig config,
              bool baseline, const std::string& manifest_path) {
    if (!manifest_path.empty()) {
        if (!fs::exists(manifest_path)) {
            std::cerr << "manifest not found: " << manifest_path << '\n';
            return kExitMissing;
        }
        config = load_manifest(manifest_path).config;
    }
    if (baseline) {
        config.use_random_init = false;
        config.use_shaped_reward = false;
    }
    // A corpus directory trains one model across its train split.
    std::vector<GridMap> maps;
    std::string hashed_file = map_path;
    if (fs::is_directory(map_path)) {
        maps = load_corpus(map_path).train;
        hashed_file = (fs::path(map_path) / "manifest.json").string();
    } else {
        maps.push_back(load_map_or_exit(map_path));
    }
    config.arch.input_w = maps.front().width();
    config.arch.input_h = maps.front().height();

    if (out_dir.empty()) out_dir = (fs::path(out_root()) / "run").string();
    fs::create_directories(out_dir);

    RunManifest manifest;
    manifest.config = config;
    manifest.map_file = map_path;
    manifest.map_hash = file_hash(hashed_file);
    manifest.version = kVersion;
    manifest.started_at = now_iso8601();

    TrainResult result = run_training(maps, config);

    manifest.finished_at = now_iso8601();
    save_checkpoint((fs::path(out_dir) / "checkpoint.bin").string(), config.arch,
                    result.params);
    write_episode_csv((fs::path(out_dir) / "episodes.csv").string(), result.episodes);
    save_manifest((fs::path(out_dir) / "manifest.json").string(), manifest);

    int successes = 0;
    for (const EpisodeRecord& r : result.episodes)
        if (r.success()) ++successes;
    std::cout << "episodes=" << result.episodes.size()
              << " reached_end=" << successes << " out=" << out_dir << '\n';
    return kExitOk;
}

int cmd_eval(const std::string& checkpoint_path, const std::string& map_path,
             const std::string& corpus_dir, const std::string& mode,
             const std::string& out_csv, int step_cap) {
    if (!fs::exists(checkpoint_path)) {
        std::cerr << "checkpoint not found: " << checkpoint_path << '\n';
        return kExitMissing;
    }
    NetworkArch arch;
    NetworkParams params;
    load_checkpoint(checkpoint_path, arch, params);

    std::vector<std::pair<std::string, EvalSummary>> rows;
    if (mode == "fixed" || mode == "all-starts") {
        GridMap map = load_map_or_exit(map_path);
        if (mode == "fixed") {
            EpisodeRecord record;
            EvalSummary s = eval_fixed_start(map, params, arch, step_cap, &record);
            rows.emplace_back("fixed", s);
            std::cout << "termination=" << to_string(record.termination)
                      << " steps=" << record.steps
                      << " length=" << record.path_length() << '\n';
        } else {
            rows.emplace_back("all-starts", eval_all_starts(map, params, arch, step_cap));
        }
    } else if (mode == "corpus") {
        if (!fs::is_directory(corpus_dir)) {
            std::cerr << "corpus directory not found: " << corpus_dir << '\n';
            return kExitMissing;
        }
        NoiseCorpus corpus = load_corpus(corpus_dir);
        rows.emplace_back("train", eval_corpus_split(corpus.train, params, arch, step_cap));
        rows.emplace_back("test", eval_corpus_split(corpus.test, params, arch, step_cap));
    } else {
        std::cerr << "unknown eval mode: " << mode << '\n';
        return kExitConfig;
    }

    for (const auto& [split, s] : rows)
        std::cout << split << ": attempted=" << s.attempted
                  << " succeeded=" << s.succeeded
                  << " success_rate=" << s.success_rate
                  << " mean_path_ratio=" << s.mean_path_ratio << '\n';
    if (!out_csv.empty()) write_summary_csv(out_csv, rows);
    return kExitOk;
}

int cmd_plan(const std::string& map_path, const std::string& algo,
             const std::string& start_text, std::uint64_t seed, int max_samples,
             const std::string& out_file) {
    GridMap map = load_map_or_exit(map_path);
    Position start = start_text.empty() ? map.start() : parse_xy(start_text);

    std::optional<PlanResult> plan;
    if (algo == "astar") {
        plan = astar(map, start);
    } else if (algo == "dijkstra") {
        plan = dijkstra(map, start);
    } else if (algo == "rrt") {
        Rng rng(seed);
        plan = rrt_plan(map, start, max_samples, rng);
    } else {
        std::cerr << "unknown planner: " << algo << '\n';
        return kExitConfig;
    }

    if (!plan) {
        std::cerr << "no path found\n";
        return kExitNoPath;
    }
    std::string text = format_plan(*plan);
    if (out_file.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_file);
        out << text;
    }
    return kExitOk;
}

std::vector<Position> read_path_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open path file: " + path);
    std::vector<Position> cells;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line.find('=') != std::string::npos) continue;
        cells.push_back(parse_xy(line));
    }
    return cells;
}

int cmd_render(const std::string& map_path, const std::string& path_file,
               const std::string& csv_path, std::vector<std::string> metrics,
               const std::string& out_file) {
    std::string svg;
    if (!csv_path.empty()) {
        if (!fs::exists(csv_path)) {
            std::cerr << "csv not found: " << csv_path << '\n';
            return kExitMissing;
        }
        std::ifstream in(csv_path);
        std::string header;
        std::getline(in, header);
        std::vector<std::string> columns;
        {
            std::istringstream hs(header);
            std::string col;
            while (std::getline(hs, col, ',')) columns.push_back(col);
        }
        if (metrics.empty()) metrics = {"avg_reward_per_step"};

        std::vector<CurveSeries> series;
        std::vector<int> indices;
        for (const std::string& m : metrics) {
            auto it = std::find(columns.begin(), columns.end(), m);
            if (it == columns.end()) {
                std::cerr << "unknown metric column: " << m << '\n';
                return kExitConfig;
            }
            indices.push_back(static_cast<int>(it - columns.begin()));
            series.push_back({m, {}});
        }
        std::string line;
        while (std::getline(in, line)) {
            std::vector<std::string> fields;
            std::istringstream ls(line);
            std::string f;
            while (std::getline(ls, f, ',')) fields.push_back(f);
            for (size_t k = 0; k < indices.size(); ++k)
                series[k].values.push_back(std::stod(fields[indices[k]]));
        }
        svg = curves_to_svg(series);
    } else {
        GridMap map = load_map_or_exit(map_path);
        std::vector<Position> path;
        if (!path_file.empty()) path = read_path_file(path_file);
        svg = map_to_svg(map, path);
    }

    if (out_file.empty()) {
        std::cout << svg;
    } else {
        std::ofstream out(out_file);
        out << svg;
    }
    return kExitOk;
}

int cmd_gen_corpus(const std::string& map_path, std::string out_dir,
                   NoiseCorpusSpec spec) {
    spec.base_map = load_map_or_exit(map_path);
    if (out_dir.empty()) out_dir = (fs::path(out_root()) / "corpus").string();
    NoiseCorpus corpus = generate_noise_corpus(spec);
    save_corpus(out_dir, corpus, spec);
    std::cout << "train=" << corpus.train.size() << " test=" << corpus.test.size()
              << " out=" << out_dir << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Grid path planning: improved double-DQN learner and classical baselines"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.set_config("--config");

    // train
    auto* train = app.add_subcommand("train", "Train a model on a map");
    std::string train_map, train_out, from_manifest;
    TrainConfig config;
    bool baseline = false;
    train->add_option("--map", train_map, "Map file")->required();
    train->add_option("--out", train_out, "Output directory");
    train->add_option("--from-manifest", from_manifest,
                      "Take the full config from a previous run's manifest");
    train->add_option("--steps", config.total_train_steps, "Environment steps");
    train->add_option("--seed", config.seed, "RNG seed");
    train->add_option("--gamma", config.gamma, "Discount factor");
    train->add_option("--batch-size", config.batch_size, "Mini-batch size");
    train->add_option("--p-r", config.p_r, "Probability of the designated start");
    train->add_option("--target-sync", config.target_sync_period,
                      "Training steps between target network copies");
    train->add_option("--eps-start", config.epsilon_start, "Initial epsilon");
    train->add_option("--eps-end", config.epsilon_end, "Final epsilon");
    train->add_option("--eps-decay", config.epsilon_decay_steps,
                      "Steps to anneal epsilon");
    train->add_option("--max-episode-steps", config.max_episode_steps);
    train->add_option("--min-replay", config.min_replay_before_training);
    train->add_option("--replay-capacity", config.replay_capacity);
    train->add_option("--alpha", config.reward.alpha, "Goal-progress weight");
    train->add_option("--beta", config.reward.beta, "Straightness weight");
    train->add_option("--reward-end", config.reward.reward_end);
    train->add_option("--reward-obstacle", config.reward.reward_obstacle);
    train->add_option("--lr", config.optimizer.learning_rate, "Adam learning rate");
    train->add_option("--filters", config.arch.conv_filters, "Conv filters");
    train->add_flag("--baseline", baseline,
                    "Plain DDQN: start-only init, flat free-move reward");
    train->add_flag("!--no-random-init", config.use_random_init);
    train->add_flag("!--no-shaped-reward", config.use_shaped_reward);

    // eval
    auto* eval = app.add_subcommand("eval", "Evaluate a trained checkpoint");
    std::string eval_ckpt, eval_map, eval_corpus, eval_mode = "fixed", eval_out;
    int step_cap = 200;
    eval->add_option("--checkpoint", eval_ckpt, "Checkpoint file")->required();
    eval->add_option("--map", eval_map, "Map file");
    eval->add_option("--corpus", eval_corpus, "Corpus directory");
    eval->add_option("--mode", eval_mode, "fixed | all-starts | corpus");
    eval->add_option("--out", eval_out, "Summary CSV path");
    eval->add_option("--step-cap", step_cap, "Rollout step cap");

    // plan
    auto* plan = app.add_subcommand("plan", "Run a classical planner");
    std::string plan_map, plan_algo = "astar", plan_start, plan_out;
    std::uint64_t plan_seed = 0;
    int max_samples = 100000;
    plan->add_option("--map", plan_map, "Map file")->required();
    plan->add_option("--algo", plan_algo, "astar | dijkstra | rrt");
    plan->add_option("--start", plan_start, "Start cell as x,y (default: map start)");
    plan->add_option("--seed", plan_seed, "RRT seed");
    plan->add_option("--max-samples", max_samples, "RRT sample budget");
    plan->add_option("--out", plan_out, "Write plan to file instead of stdout");

    // render
    auto* render = app.add_subcommand("render", "Render a map or training curves as SVG");
    std::string render_map, render_path, render_csv, render_out;
    std::vector<std::string> render_metrics;
    render->add_option("--map", render_map, "Map file");
    render->add_option("--path", render_path, "Planner output file to overlay");
    render->add_option("--csv", render_csv, "Episode CSV to chart");
    render->add_option("--metric", render_metrics, "CSV column(s) to chart");
    render->add_option("--out", render_out, "Output SVG path");

    // gen-corpus
    auto* gen = app.add_subcommand("gen-corpus", "Generate a noise-map corpus");
    std::string gen_map, gen_out;
    NoiseCorpusSpec spec;
    gen->add_option("--map", gen_map, "Base map file")->required();
    gen->add_option("--out", gen_out, "Corpus directory");
    gen->add_option("--count", spec.count, "Total maps");
    gen->add_option("--min", spec.min_new_obstacles, "Min new obstacles per map");
    gen->add_option("--max", spec.max_new_obstacles, "Max new obstacles per map");
    gen->add_option("--train-count", spec.train_count, "Training split size");
    gen->add_option("--band", spec.placement_band,
                    "Chebyshev radius around the base optimal path");
    gen->add_option("--seed", spec.seed, "RNG seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*train)
            return cmd_train(train_map, train_out, config, baseline, from_manifest);
        if (*eval)
            return cmd_eval(eval_ckpt, eval_map, eval_corpus, eval_mode, eval_out,
                            step_cap);
        if (*plan)
            return cmd_plan(plan_map, plan_algo, plan_start, plan_seed, max_samples,
                            plan_out);
        if (*render)
            return cmd_render(render_map, render_path, render_csv, render_metrics,
                              render_out);
        if (*gen) return cmd_gen_corpus(gen_map, gen_out, spec);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return kExitConfig;
}
