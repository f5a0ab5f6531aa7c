#include "rlpp/experiments.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace fs = std::filesystem;

namespace rlpp {

namespace {

void finish(EvalSummary& s, double ratio_sum) {
    s.success_rate = s.attempted > 0
                         ? static_cast<double>(s.succeeded) / s.attempted
                         : 0.0;
    s.mean_path_ratio = s.succeeded > 0 ? ratio_sum / s.succeeded : 0.0;
}

}  // namespace

EvalSummary eval_fixed_start(const GridMap& map, const NetworkParams& params,
                             const NetworkArch& arch, int step_cap,
                             EpisodeRecord* record_out) {
    EpisodeRecord record = rollout_policy(map, params, arch, map.start(), step_cap);
    if (record_out) *record_out = record;

    EvalSummary summary;
    summary.attempted = 1;
    double ratio_sum = 0.0;
    if (record.success()) {
        summary.succeeded = 1;
        auto optimal = astar(map, map.start());
        ratio_sum = optimal ? record.path_length() / optimal->length : 0.0;
    }
    finish(summary, ratio_sum);
    return summary;
}

EvalSummary eval_all_starts(const GridMap& map, const NetworkParams& params,
                            const NetworkArch& arch, int step_cap) {
    std::vector<Position> starts = reachable_positions(map);
    std::vector<char> success(starts.size(), 0);
    std::vector<double> ratio(starts.size(), 0.0);

#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(starts.size()); ++i) {
        EpisodeRecord record = rollout_policy(map, params, arch, starts[i], step_cap);
        if (record.success()) {
            success[i] = 1;
            auto optimal = astar(map, starts[i]);
            ratio[i] = optimal ? record.path_length() / optimal->length : 0.0;
        }
    }

    EvalSummary summary;
    summary.attempted = static_cast<int>(starts.size());
    double ratio_sum = 0.0;
    for (size_t i = 0; i < starts.size(); ++i) {
        if (success[i]) {
            ++summary.succeeded;
            ratio_sum += ratio[i];
        }
    }
    finish(summary, ratio_sum);
    return summary;
}

NoiseCorpus generate_noise_corpus(const NoiseCorpusSpec& spec) {
    const GridMap& base = spec.base_map;
    auto base_plan = astar(base, base.start());
    if (!base_plan) throw std::runtime_error("noise corpus: base map unsolvable");
    if (spec.train_count > spec.count)
        throw std::invalid_argument("noise corpus: train split larger than corpus");

    // Free cells within the Chebyshev band of the base optimal path,
    // excluding start and end.
    std::vector<Position> candidates;
    for (Position p : free_positions(base)) {
        if (p == base.start()) continue;
        bool near = false;
        for (Position q : base_plan->path) {
            if (std::abs(p.x - q.x) <= spec.placement_band &&
                std::abs(p.y - q.y) <= spec.placement_band) {
                near = true;
                break;
            }
        }
        if (near) candidates.push_back(p);
    }
    if (candidates.empty())
        throw std::runtime_error("noise corpus: no placement candidates");

    Rng rng(spec.seed);
    std::set<std::vector<int>> seen;
    std::vector<GridMap> maps;
    const int retry_bound = 200 * spec.count + 1000;
    int attempts = 0;
    while (static_cast<int>(maps.size()) < spec.count) {
        if (++attempts > retry_bound)
            throw std::runtime_error("noise corpus: retry bound exceeded");

        int k = spec.min_new_obstacles +
                static_cast<int>(rng.below(
                    spec.max_new_obstacles - spec.min_new_obstacles + 1));
        std::vector<int> picks;
        while (static_cast<int>(picks.size()) < k) {
            int c = static_cast<int>(rng.below(candidates.size()));
            if (std::find(picks.begin(), picks.end(), c) == picks.end())
                picks.push_back(c);
        }
        std::sort(picks.begin(), picks.end());
        if (seen.contains(picks)) continue;

        GridMap map = base;
        for (int c : picks) map.set(candidates[c], CellKind::Obstacle);
        if (!astar(map, map.start())) continue;

        seen.insert(picks);
        maps.push_back(std::move(map));
    }

    NoiseCorpus corpus;
    corpus.train.assign(maps.begin(), maps.begin() + spec.train_count);
    corpus.test.assign(maps.begin() + spec.train_count, maps.end());
    return corpus;
}

EvalSummary eval_corpus_split(std::span<const GridMap> maps,
                              const NetworkParams& params, const NetworkArch& arch,
                              int step_cap) {
    std::vector<char> success(maps.size(), 0);
    std::vector<double> ratio(maps.size(), 0.0);

#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(maps.size()); ++i) {
        EpisodeRecord record =
            rollout_policy(maps[i], params, arch, maps[i].start(), step_cap);
        if (record.success()) {
            success[i] = 1;
            auto optimal = astar(maps[i], maps[i].start());
            ratio[i] = optimal ? record.path_length() / optimal->length : 0.0;
        }
    }

    EvalSummary summary;
    summary.attempted = static_cast<int>(maps.size());
    double ratio_sum = 0.0;
    for (size_t i = 0; i < maps.size(); ++i) {
        if (success[i]) {
            ++summary.succeeded;
            ratio_sum += ratio[i];
        }
    }
    finish(summary, ratio_sum);
    return summary;
}

NoiseExperimentResult run_noise_experiment(const NoiseCorpus& corpus,
                                           const TrainConfig& config) {
    TrainResult trained = run_training(corpus.train, config);
    NoiseExperimentResult result;
    result.train = eval_corpus_split(corpus.train, trained.params, config.arch,
                                     config.max_episode_steps);
    result.test = eval_corpus_split(corpus.test, trained.params, config.arch,
                                    config.max_episode_steps);
    result.params = std::move(trained.params);
    result.episodes = std::move(trained.episodes);
    return result;
}

void save_corpus(const std::string& dir, const NoiseCorpus& corpus,
                 const NoiseCorpusSpec& spec) {
    fs::create_directories(fs::path(dir) / "train");
    fs::create_directories(fs::path(dir) / "test");

    auto write_split = [&](const std::string& split,
                           const std::vector<GridMap>& maps) {
        for (size_t i = 0; i < maps.size(); ++i) {
            std::ostringstream name;
            name.width(3);
            name.fill('0');
            name << i;
            save_map(maps[i], (fs::path(dir) / split / (name.str() + ".map")).string());
        }
    };
    write_split("train", corpus.train);
    write_split("test", corpus.test);

    nlohmann::json manifest = {
        {"count", spec.count},
        {"min_new_obstacles", spec.min_new_obstacles},
        {"max_new_obstacles", spec.max_new_obstacles},
        {"train_count", spec.train_count},
        {"placement_band", spec.placement_band},
        {"seed", spec.seed},
    };
    std::ofstream out(fs::path(dir) / "manifest.json");
    if (!out) throw std::runtime_error("cannot write corpus manifest");
    out << manifest.dump(2) << '\n';
}

NoiseCorpus load_corpus(const std::string& dir) {
    NoiseCorpus corpus;
    auto read_split = [&](const std::string& split, std::vector<GridMap>& maps) {
        std::vector<fs::path> files;
        fs::path split_dir = fs::path(dir) / split;
        if (!fs::is_directory(split_dir))
            throw std::runtime_error("corpus split missing: " + split_dir.string());
        for (const auto& entry : fs::directory_iterator(split_dir))
            if (entry.path().extension() == ".map") files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files) maps.push_back(load_map(f.string()));
    };
    read_split("train", corpus.train);
    read_split("test", corpus.test);
    return corpus;
}

void write_summary_csv(const std::string& path,
                       std::span<const std::pair<std::string, EvalSummary>> rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write summary csv: " + path);
    out << "split,attempted,succeeded,success_rate,mean_path_ratio\n";
    for (const auto& [split, s] : rows) {
        out << split << ',' << s.attempted << ',' << s.succeeded << ','
            << s.success_rate << ',' << s.mean_path_ratio << '\n';
    }
}

}  // namespace rlpp
