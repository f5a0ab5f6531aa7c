#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rlpp/gridworld.hpp"

namespace rlpp {

// Conv(3x3, stride 2) -> ReLU -> flatten -> affine(output_dim).
struct NetworkArch {
    int input_h = 20;
    int input_w = 20;
    int conv_filters = 16;
    int conv_kernel = 3;
    int conv_stride = 2;
    int conv_padding = 0;
    int output_dim = kNumActions;

    int conv_out_h() const {
        return (input_h + 2 * conv_padding - conv_kernel) / conv_stride + 1;
    }
    int conv_out_w() const {
        return (input_w + 2 * conv_padding - conv_kernel) / conv_stride + 1;
    }
    int flat_size() const { return conv_filters * conv_out_h() * conv_out_w(); }

    bool operator==(const NetworkArch&) const = default;
};

// Gradient (or moment) arrays, shape-matched to the weights.
struct Gradients {
    std::vector<double> conv_w;  // [filter][ky][kx]
    std::vector<double> conv_b;  // [filter]
    std::vector<double> fc_w;    // [out][flat]
    std::vector<double> fc_b;    // [out]

    static Gradients zeros(const NetworkArch& arch);
    void add_scaled(const Gradients& other, double scale);
    void scale(double s);
};

struct NetworkParams {
    std::vector<double> conv_w;
    std::vector<double> conv_b;
    std::vector<double> fc_w;
    std::vector<double> fc_b;
    Gradients adam_m;
    Gradients adam_v;
    std::int64_t adam_t = 0;
};

struct OptimizerConfig {
    double learning_rate = 0.01;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

// Weights uniform in +-sqrt(6 / fan_in), biases and moments zero.
NetworkParams init_params(const NetworkArch& arch, std::uint64_t seed);

// Deep copy of the weights with fresh (zero) optimizer state.
NetworkParams copy_params(const NetworkParams& src);

// Q(s, .): returns output_dim action values.
std::vector<double> forward(const NetworkParams& params, const NetworkArch& arch,
                            std::span<const double> state);

// Gradient of (td_target - Q(s, action))^2 w.r.t. all weights. Only the
// taken action's output row carries gradient.
Gradients backward(const NetworkParams& params, const NetworkArch& arch,
                   std::span<const double> state, Action action, double td_target);

// One Adam update with bias correction; increments adam_t.
void adam_step(NetworkParams& params, const Gradients& grads,
               const OptimizerConfig& opt);

// Versioned binary checkpoint; weight values round-trip bit-exactly.
void save_checkpoint(const std::string& path, const NetworkArch& arch,
                     const NetworkParams& params);
void load_checkpoint(const std::string& path, NetworkArch& arch,
                     NetworkParams& params);

}  // namespace rlpp
