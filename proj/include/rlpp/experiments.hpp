#pragma once

#include <string>
#include <vector>

#include "rlpp/agent.hpp"
#include "rlpp/baselines.hpp"
#include "rlpp/gridworld.hpp"

namespace rlpp {

struct NoiseCorpusSpec {
    GridMap base_map;
    int count = 300;
    int min_new_obstacles = 1;
    int max_new_obstacles = 5;
    int train_count = 100;   // remainder is the test split
    int placement_band = 1;  // Chebyshev radius around the base optimal path
    std::uint64_t seed = 0;
};

struct EvalSummary {
    int attempted = 0;
    int succeeded = 0;
    double success_rate = 0.0;
    // Successful rollout length / A* optimum, averaged over successes.
    double mean_path_ratio = 0.0;
};

struct NoiseCorpus {
    std::vector<GridMap> train;
    std::vector<GridMap> test;
};

// Single greedy rollout from the designated start.
EvalSummary eval_fixed_start(const GridMap& map, const NetworkParams& params,
                             const NetworkArch& arch, int step_cap,
                             EpisodeRecord* record = nullptr);

// Greedy rollout from every reachable free position; rollouts run in
// parallel against the shared parameter snapshot.
EvalSummary eval_all_starts(const GridMap& map, const NetworkParams& params,
                            const NetworkArch& arch, int step_cap);

// Perturbed copies of the base map: 1..5 extra obstacles sampled from the
// free cells within placement_band of the base A* path. Every map stays
// solvable from the designated start and obstacle sets are unique across
// the corpus. Deterministic given spec.seed.
NoiseCorpus generate_noise_corpus(const NoiseCorpusSpec& spec);

struct NoiseExperimentResult {
    EvalSummary train;
    EvalSummary test;
    NetworkParams params;
    std::vector<EpisodeRecord> episodes;
};

// Trains one model across the train split (uniform map per episode), then
// evaluates greedy fixed-start rollouts on both splits.
NoiseExperimentResult run_noise_experiment(const NoiseCorpus& corpus,
                                           const TrainConfig& config);

// Greedy fixed-start rollout on every map of one split.
EvalSummary eval_corpus_split(std::span<const GridMap> maps,
                              const NetworkParams& params, const NetworkArch& arch,
                              int step_cap);

// corpus/<name>/train/NNN.map, corpus/<name>/test/NNN.map + manifest.json.
void save_corpus(const std::string& dir, const NoiseCorpus& corpus,
                 const NoiseCorpusSpec& spec);
NoiseCorpus load_corpus(const std::string& dir);

void write_summary_csv(const std::string& path,
                       std::span<const std::pair<std::string, EvalSummary>> rows);

}  // namespace rlpp
