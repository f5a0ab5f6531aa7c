// Timing comparison of the serial reference kernels against the OpenMP
// paths: mini-batch gradient computation and all-starts evaluation.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "rlpp/agent.hpp"
#include "rlpp/experiments.hpp"
#include "rlpp/gridworld.hpp"
#include "rlpp/kernels.hpp"
#include "rlpp/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace rlpp;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

GridMap empty_map(int n) {
    std::vector<CellKind> cells(static_cast<size_t>(n) * n, CellKind::Free);
    cells[0] = CellKind::Start;
    cells[cells.size() - 1] = CellKind::End;
    return GridMap(n, n, std::move(cells));
}

}  // namespace

int main(int argc, char** argv) {
    int batch = argc > 1 ? std::atoi(argv[1]) : 256;
    int reps = argc > 2 ? std::atoi(argv[2]) : 200;

#ifdef _OPENMP
    std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
    std::printf("openmp: disabled\n");
#endif

    NetworkArch arch;
    NetworkParams params = init_params(arch, 1);
    GridMap map = empty_map(20);
    Rng rng(2);

    std::vector<BatchItem> items(batch);
    std::vector<Position> cells = free_positions(map);
    for (BatchItem& item : items) {
        item.state = encode_state(map, cells[rng.below(cells.size())]);
        item.action = {static_cast<int>(rng.below(kNumActions)) + 1};
        item.td_target = rng.uniform(-10.0, 10.0);
    }

    auto t0 = Clock::now();
    Gradients gs = Gradients::zeros(arch);
    for (int r = 0; r < reps; ++r) gs = batch_gradients_serial(params, arch, items);
    double serial_s = seconds_since(t0);

    t0 = Clock::now();
    Gradients gp = Gradients::zeros(arch);
    for (int r = 0; r < reps; ++r) gp = batch_gradients_parallel(params, arch, items);
    double parallel_s = seconds_since(t0);

    double max_diff = 0.0;
    for (size_t i = 0; i < gs.fc_w.size(); ++i)
        max_diff = std::max(max_diff, std::abs(gs.fc_w[i] - gp.fc_w[i]));

    std::printf("batch gradients (batch=%d, reps=%d):\n", batch, reps);
    std::printf("  serial    %.3f s\n", serial_s);
    std::printf("  parallel  %.3f s  (speedup %.2fx, max fc_w diff %.1e)\n",
                parallel_s, serial_s / parallel_s, max_diff);

    // All-starts evaluation (parallel inside eval_all_starts).
    t0 = Clock::now();
    EvalSummary summary = eval_all_starts(map, params, arch, 200);
    double eval_s = seconds_since(t0);
    std::printf("all-starts eval: %d rollouts in %.3f s\n", summary.attempted,
                eval_s);
    return 0;
}
