#include "rlpp/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rlpp {

Gradients batch_gradients_serial(const NetworkParams& params,
                                 const NetworkArch& arch,
                                 std::span<const BatchItem> batch) {
    Gradients sum = Gradients::zeros(arch);
    for (const BatchItem& item : batch) {
        Gradients g = backward(params, arch, item.state, item.action, item.td_target);
        sum.add_scaled(g, 1.0);
    }
    if (!batch.empty()) sum.scale(1.0 / static_cast<double>(batch.size()));
    return sum;
}

Gradients batch_gradients_parallel(const NetworkParams& params,
                                   const NetworkArch& arch,
                                   std::span<const BatchItem> batch) {
    std::vector<Gradients> slots(batch.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < static_cast<long>(batch.size()); ++i) {
        slots[i] = backward(params, arch, batch[i].state, batch[i].action,
                            batch[i].td_target);
    }
    // Fixed-order reduction keeps the result independent of thread count.
    Gradients sum = Gradients::zeros(arch);
    for (const Gradients& g : slots) sum.add_scaled(g, 1.0);
    if (!batch.empty()) sum.scale(1.0 / static_cast<double>(batch.size()));
    return sum;
}

}  // namespace rlpp
