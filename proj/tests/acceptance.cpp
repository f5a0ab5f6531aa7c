// End-to-end acceptance suite. Each criterion prints one pass/fail line;
// the process exits nonzero if any criterion fails. Expects RLPP_MAPS_DIR
// (canonical map) and RLPP_CLI (path to the CLI binary, for the
// determinism criterion).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "rlpp/agent.hpp"
#include "rlpp/baselines.hpp"
#include "rlpp/experiments.hpp"
#include "rlpp/gridworld.hpp"
#include "rlpp/reward.hpp"
#include "rlpp/rng.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;
using namespace rlpp;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion,
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

GridMap random_solvable_map(Rng& rng) {
    for (;;) {
        std::vector<CellKind> cells(400, CellKind::Free);
        for (CellKind& c : cells)
            if (rng.uniform() < 0.3) c = CellKind::Obstacle;
        size_t si = rng.below(cells.size());
        size_t ei = rng.below(cells.size());
        if (si == ei) continue;
        cells[si] = CellKind::Start;
        cells[ei] = CellKind::End;
        GridMap map(20, 20, std::move(cells));
        if (astar(map, map.start())) return map;
    }
}

// --- criterion 1: A* length equals Dijkstra length -------------------------
void criterion_oracle_equivalence() {
    auto t0 = Clock::now();
    GridMap canonical = testutil::canonical_map();
    auto a = astar(canonical, canonical.start());
    auto d = dijkstra(canonical, canonical.start());
    bool ok = a && d && std::abs(a->length - d->length) <= 1e-9;

    Rng rng(1001);
    int checked = 0;
    while (ok && checked < 200) {
        GridMap map = random_solvable_map(rng);
        auto am = astar(map, map.start());
        auto dm = dijkstra(map, map.start());
        ok = am && dm && std::abs(am->length - dm->length) <= 1e-9;
        ++checked;
    }
    double secs = seconds_since(t0);
    std::ostringstream msg;
    msg << "astar = dijkstra on canonical + " << checked
        << " random maps (tol 1e-9), " << secs << " s";
    report(1, ok && secs < 10.0, msg.str());
}

// --- criterion 2: analytic gradients vs central finite differences ---------
void criterion_gradient_check() {
    auto t0 = Clock::now();
    NetworkArch arch;
    const double h = 1e-5;
    bool ok = true;
    double worst = 0.0;

    for (int instance = 0; instance < 50 && ok; ++instance) {
        Rng rng(2000 + instance);
        NetworkParams p = init_params(arch, 2000 + instance);
        std::vector<double> state(400);
        for (double& v : state) v = rng.uniform(-1.0, 1.0);
        Action a{static_cast<int>(rng.below(8)) + 1};
        double target = rng.uniform(-10.0, 10.0);
        Gradients g = backward(p, arch, state, a, target);

        auto loss = [&]() {
            double q = forward(p, arch, state)[a.index - 1];
            return (target - q) * (target - q);
        };
        auto check_one = [&](std::vector<double>& w, const std::vector<double>& grad,
                             size_t i) {
            double keep = w[i];
            w[i] = keep + h;
            double up = loss();
            w[i] = keep - h;
            double down = loss();
            w[i] = keep;
            double fd = (up - down) / (2.0 * h);
            if (std::abs(fd) < 1e-8 && std::abs(grad[i]) < 1e-8) return;
            double rel = std::abs(grad[i] - fd) /
                         std::max({std::abs(fd), std::abs(grad[i]), 1e-8});
            worst = std::max(worst, rel);
            if (rel >= 1e-4) ok = false;
        };

        for (size_t i = 0; i < p.conv_w.size(); ++i) check_one(p.conv_w, g.conv_w, i);
        for (size_t i = 0; i < p.conv_b.size(); ++i) check_one(p.conv_b, g.conv_b, i);
        for (size_t i = 0; i < p.fc_b.size(); ++i) check_one(p.fc_b, g.fc_b, i);
        // fc_w is large; a fixed 400-entry random subset per instance.
        for (int k = 0; k < 400; ++k)
            check_one(p.fc_w, g.fc_w, rng.below(p.fc_w.size()));
    }
    double secs = seconds_since(t0);
    std::ostringstream msg;
    msg << "50 instances, h=1e-5, worst relative error " << worst << ", " << secs
        << " s";
    report(2, ok && secs < 30.0, msg.str());
}

// --- criterion 3: reward geometry ------------------------------------------
void criterion_reward_geometry() {
    RewardParams beta_only{0.0, 1.0, 10.0, -10.0};
    Rng rng(3001);
    bool ok = true;
    for (int i = 0; i < 100000 && ok; ++i) {
        Position s{int(rng.below(40)) - 20, int(rng.below(40)) - 20};
        Position prev{int(rng.below(40)) - 20, int(rng.below(40)) - 20};
        Position curr{int(rng.below(40)) - 20, int(rng.below(40)) - 20};
        if (prev == curr) continue;
        if (shaped_reward(beta_only, s, {0, 0}, prev, curr) > 1e-12) ok = false;
    }
    // Collinear construction: prev strictly between start and curr.
    for (int i = 0; i < 20000 && ok; ++i) {
        Position s{int(rng.below(20)), int(rng.below(20))};
        int dx = int(rng.below(7)) - 3, dy = int(rng.below(7)) - 3;
        if (dx == 0 && dy == 0) continue;
        int k = 1 + int(rng.below(5));
        int m = k + 1 + int(rng.below(5));
        Position prev{s.x + k * dx, s.y + k * dy};
        Position curr{s.x + m * dx, s.y + m * dy};
        if (std::abs(shaped_reward(beta_only, s, {0, 0}, prev, curr)) >= 1e-9)
            ok = false;
    }
    report(3, ok, "beta term <= 1e-12 everywhere, = 0 on collinear triples");
}

// --- criterion 4: worked reward values --------------------------------------
void criterion_worked_rewards() {
    RewardParams params;
    // Independent recomputation from the raw distances.
    double r1_oracle = 0.6 * (std::hypot(8, 8) - std::hypot(7, 7)) +
                       0.4 * (std::hypot(3, 3) - std::hypot(2, 2) - std::hypot(1, 1));
    double r2_oracle = 0.6 * (5.0 - std::sqrt(26.0)) +
                       0.4 * (std::sqrt(26.0) - 5.0 - 1.0);
    double r1 = shaped_reward(params, {0, 0}, {10, 10}, {2, 2}, {3, 3});
    double r2 = shaped_reward(params, {0, 0}, {10, 0}, {5, 0}, {5, 1});
    bool ok = std::abs(r1 - 0.84853) < 1e-5 && std::abs(r2 - (-0.41980)) < 1e-5 &&
              std::abs(r1 - r1_oracle) < 1e-12 && std::abs(r2 - r2_oracle) < 1e-12;
    std::ostringstream msg;
    msg << "shaped_reward = " << r1 << " and " << r2
        << " (expected 0.84853 / -0.41980)";
    report(4, ok, msg.str());
}

struct SeedRun {
    std::uint64_t seed;
    NetworkParams params;
    double late_avg = 0.0;
    bool fixed_success = false;
    double ratio = 0.0;
};

double late_average_reward(const std::vector<EpisodeRecord>& episodes) {
    size_t n = episodes.size();
    size_t from = n > 50 ? n - 50 : 0;
    double sum = 0.0;
    int k = 0;
    for (size_t i = from; i < n; ++i) {
        sum += episodes[i].average_reward_per_step;
        ++k;
    }
    return k ? sum / k : 0.0;
}

SeedRun train_and_eval(const GridMap& map, std::uint64_t seed, bool improved,
                       double optimal_length) {
    TrainConfig config;
    config.seed = seed;
    config.use_random_init = improved;
    config.use_shaped_reward = improved;
    TrainResult result = run_training(map, config);

    SeedRun run;
    run.seed = seed;
    run.late_avg = late_average_reward(result.episodes);
    EpisodeRecord record =
        rollout_policy(map, result.params, config.arch, map.start(), 200);
    run.fixed_success = record.success();
    run.ratio = run.fixed_success ? record.path_length() / optimal_length : 0.0;
    run.params = std::move(result.params);
    return run;
}

// Criteria 5-7 share the six trained models.
void criteria_training(const GridMap& map) {
    const std::vector<std::uint64_t> seeds{7, 11, 13};
    auto optimal = astar(map, map.start());

    std::vector<SeedRun> improved, baseline;
    for (std::uint64_t seed : seeds) {
        auto t0 = Clock::now();
        improved.push_back(train_and_eval(map, seed, true, optimal->length));
        std::printf("  improved seed %llu: %s ratio=%.3f late_avg=%.3f (%.0f s)\n",
                    (unsigned long long)seed,
                    improved.back().fixed_success ? "reached end" : "failed",
                    improved.back().ratio, improved.back().late_avg,
                    seconds_since(t0));
        std::fflush(stdout);
    }
    for (std::uint64_t seed : seeds) {
        auto t0 = Clock::now();
        baseline.push_back(train_and_eval(map, seed, false, optimal->length));
        std::printf("  baseline seed %llu: %s late_avg=%.3f (%.0f s)\n",
                    (unsigned long long)seed,
                    baseline.back().fixed_success ? "reached end" : "failed",
                    baseline.back().late_avg, seconds_since(t0));
        std::fflush(stdout);
    }

    // Criterion 5: improved fixed-start success with ratio <= 1.35 in >= 2/3.
    int good = 0;
    for (const SeedRun& run : improved)
        if (run.fixed_success && run.ratio <= 1.35) ++good;
    {
        std::ostringstream msg;
        msg << good << "/3 improved seeds reach the end within 1.35x optimum";
        report(5, good >= 2, msg.str());
    }

    // Criterion 6: baseline fails in >= 2/3 seeds and trains to a lower
    // mean late-episode average reward.
    int baseline_failures = 0;
    double improved_mean = 0.0, baseline_mean = 0.0;
    for (const SeedRun& run : baseline) {
        if (!run.fixed_success) ++baseline_failures;
        baseline_mean += run.late_avg / baseline.size();
    }
    for (const SeedRun& run : improved) improved_mean += run.late_avg / improved.size();
    {
        std::ostringstream msg;
        msg << baseline_failures << "/3 baseline seeds fail; late avg reward "
            << baseline_mean << " (baseline) vs " << improved_mean << " (improved)";
        report(6, baseline_failures >= 2 && baseline_mean < improved_mean, msg.str());
    }

    // Criterion 7: all-starts success of the criterion-5 model. Among the
    // passing seeds the model is selected by the training-time metric
    // (highest late-episode average reward), never by test performance.
    const SeedRun* selected = nullptr;
    for (const SeedRun& run : improved) {
        if (!(run.fixed_success && run.ratio <= 1.35)) continue;
        if (!selected || run.late_avg > selected->late_avg) selected = &run;
    }
    if (!selected) {
        report(7, false, "no criterion-5 model available");
    } else {
        auto t0 = Clock::now();
        NetworkArch arch;
        EvalSummary s = eval_all_starts(map, selected->params, arch, 200);
        double secs = seconds_since(t0);
        std::ostringstream msg;
        msg << "seed " << selected->seed << ": " << s.succeeded << "/" << s.attempted
            << " reachable starts (" << s.success_rate * 100.0 << "%), " << secs
            << " s";
        report(7, s.success_rate >= 0.55 && secs < 30.0, msg.str());
    }

    // Criterion 10: greedy fixed-start rollout wall time < 0.15 s.
    {
        const NetworkParams& params =
            selected ? selected->params : improved.front().params;
        NetworkArch arch;
        auto t0 = Clock::now();
        EpisodeRecord record = rollout_policy(map, params, arch, map.start(), 200);
        double secs = seconds_since(t0);
        std::ostringstream msg;
        msg << "greedy rollout (" << record.steps << " steps) in " << secs << " s";
        report(10, secs < 0.15, msg.str());
    }
}

// --- criterion 8: noise-map corpus ------------------------------------------
void criterion_noise_corpus(const GridMap& map) {
    auto t0 = Clock::now();
    NoiseCorpusSpec spec;
    spec.base_map = map;
    spec.seed = 11;
    NoiseCorpus corpus = generate_noise_corpus(spec);

    TrainConfig config;
    config.seed = 7;
    config.total_train_steps = 150000;
    NoiseExperimentResult result = run_noise_experiment(corpus, config);
    double secs = seconds_since(t0);

    std::ostringstream msg;
    msg << "train " << result.train.succeeded << "/100 ("
        << result.train.success_rate * 100.0 << "%), test " << result.test.succeeded
        << "/200 (" << result.test.success_rate * 100.0
        << "%); reference results 98% / 79%; " << secs << " s";
    report(8,
           result.train.success_rate >= 0.75 && result.test.success_rate >= 0.50 &&
               secs < 2700.0,
           msg.str());
}

// --- criterion 9: bit-identical reruns through the CLI ----------------------
std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void criterion_determinism() {
    const char* cli = std::getenv("RLPP_CLI");
    if (!cli) {
        report(9, false, "RLPP_CLI not set");
        return;
    }
    std::string map_path = testutil::maps_dir() + "/canonical.map";
    fs::path dir = fs::temp_directory_path() / "rlpp_acceptance_det";
    fs::remove_all(dir);

    bool ok = true;
    for (int run = 0; run < 2 && ok; ++run) {
        std::ostringstream cmd;
        cmd << '"' << cli << "\" train --map \"" << map_path << "\" --out \""
            << (dir / ("run" + std::to_string(run))).string()
            << "\" --steps 3000 --seed 7 > /dev/null";
        ok = std::system(cmd.str().c_str()) == 0;
    }
    if (ok) {
        ok = slurp(dir / "run0" / "checkpoint.bin") ==
                 slurp(dir / "run1" / "checkpoint.bin") &&
             slurp(dir / "run0" / "episodes.csv") ==
                 slurp(dir / "run1" / "episodes.csv") &&
             !slurp(dir / "run0" / "checkpoint.bin").empty();
    }
    fs::remove_all(dir);
    report(9, ok, "two identical train invocations produce byte-identical outputs");
}

}  // namespace

int main() {
    GridMap map = testutil::canonical_map();

    criterion_oracle_equivalence();
    criterion_gradient_check();
    criterion_reward_geometry();
    criterion_worked_rewards();
    criteria_training(map);     // criteria 5, 6, 7, 10
    criterion_noise_corpus(map);
    criterion_determinism();

    if (g_failures) {
        std::printf("%d criterion(s) FAILED\n", g_failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
