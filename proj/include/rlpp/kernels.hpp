#pragma once

#include <span>
#include <vector>

#include "rlpp/neuralnet.hpp"

namespace rlpp {

// One mini-batch element, state already encoded.
struct BatchItem {
    std::vector<double> state;
    Action action;
    double td_target = 0.0;
};

// Mean gradient of the squared TD error over the batch.
//
// The serial version is the reference implementation; the parallel one
// runs the per-item backward passes under OpenMP, writes each item's
// gradient into its own slot, and reduces in batch order, so both return
// bit-identical results for any thread count.
Gradients batch_gradients_serial(const NetworkParams& params,
                                 const NetworkArch& arch,
                                 std::span<const BatchItem> batch);

Gradients batch_gradients_parallel(const NetworkParams& params,
                                   const NetworkArch& arch,
                                   std::span<const BatchItem> batch);

}  // namespace rlpp
