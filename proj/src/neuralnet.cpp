#include "rlpp/neuralnet.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "rlpp/rng.hpp"

namespace rlpp {

namespace {

constexpr char kCheckpointMagic[8] = {'R', 'L', 'P', 'P', 'N', 'E', 'T', '1'};

void check_shapes(const NetworkParams& params, const NetworkArch& arch) {
    size_t cw = static_cast<size_t>(arch.conv_filters) * arch.conv_kernel * arch.conv_kernel;
    size_t fw = static_cast<size_t>(arch.output_dim) * arch.flat_size();
    if (params.conv_w.size() != cw || params.conv_b.size() != size_t(arch.conv_filters) ||
        params.fc_w.size() != fw || params.fc_b.size() != size_t(arch.output_dim))
        throw std::invalid_argument("network parameter shapes do not match arch");
}

// Conv + ReLU activations, flattened as [filter][oy][ox].
std::vector<double> conv_relu(const NetworkParams& params, const NetworkArch& arch,
                              std::span<const double> state) {
    if (static_cast<int>(state.size()) != arch.input_h * arch.input_w)
        throw std::invalid_argument("state shape mismatch");
    const int oh = arch.conv_out_h(), ow = arch.conv_out_w(), k = arch.conv_kernel;
    std::vector<double> act(static_cast<size_t>(arch.conv_filters) * oh * ow);
    for (int f = 0; f < arch.conv_filters; ++f) {
        const double* w = &params.conv_w[static_cast<size_t>(f) * k * k];
        for (int oy = 0; oy < oh; ++oy) {
            for (int ox = 0; ox < ow; ++ox) {
                double sum = params.conv_b[f];
                int iy0 = oy * arch.conv_stride - arch.conv_padding;
                int ix0 = ox * arch.conv_stride - arch.conv_padding;
                for (int ky = 0; ky < k; ++ky)
                    for (int kx = 0; kx < k; ++kx) {
                        int iy = iy0 + ky, ix = ix0 + kx;
                        if (iy < 0 || iy >= arch.input_h || ix < 0 || ix >= arch.input_w)
                            continue;
                        sum += w[ky * k + kx] * state[iy * arch.input_w + ix];
                    }
                act[(static_cast<size_t>(f) * oh + oy) * ow + ox] = sum > 0.0 ? sum : 0.0;
            }
        }
    }
    return act;
}

void adam_update_array(std::vector<double>& w, const std::vector<double>& g,
                       std::vector<double>& m, std::vector<double>& v,
                       const OptimizerConfig& opt, double bc1, double bc2) {
    for (size_t i = 0; i < w.size(); ++i) {
        m[i] = opt.beta1 * m[i] + (1.0 - opt.beta1) * g[i];
        v[i] = opt.beta2 * v[i] + (1.0 - opt.beta2) * g[i] * g[i];
        double mhat = m[i] / bc1;
        double vhat = v[i] / bc2;
        w[i] -= opt.learning_rate * mhat / (std::sqrt(vhat) + opt.epsilon);
    }
}

void write_u64(std::ostream& out, std::uint64_t v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint64_t read_u64(std::istream& in) {
    std::uint64_t v = 0;
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}

void write_array(std::ostream& out, const std::vector<double>& a) {
    write_u64(out, a.size());
    out.write(reinterpret_cast<const char*>(a.data()),
              static_cast<std::streamsize>(a.size() * sizeof(double)));
}

std::vector<double> read_array(std::istream& in) {
    std::vector<double> a(read_u64(in));
    in.read(reinterpret_cast<char*>(a.data()),
            static_cast<std::streamsize>(a.size() * sizeof(double)));
    return a;
}

}  // namespace

Gradients Gradients::zeros(const NetworkArch& arch) {
    Gradients g;
    g.conv_w.assign(static_cast<size_t>(arch.conv_filters) * arch.conv_kernel *
                        arch.conv_kernel,
                    0.0);
    g.conv_b.assign(arch.conv_filters, 0.0);
    g.fc_w.assign(static_cast<size_t>(arch.output_dim) * arch.flat_size(), 0.0);
    g.fc_b.assign(arch.output_dim, 0.0);
    return g;
}

void Gradients::add_scaled(const Gradients& other, double s) {
    for (size_t i = 0; i < conv_w.size(); ++i) conv_w[i] += s * other.conv_w[i];
    for (size_t i = 0; i < conv_b.size(); ++i) conv_b[i] += s * other.conv_b[i];
    for (size_t i = 0; i < fc_w.size(); ++i) fc_w[i] += s * other.fc_w[i];
    for (size_t i = 0; i < fc_b.size(); ++i) fc_b[i] += s * other.fc_b[i];
}

void Gradients::scale(double s) {
    for (double& x : conv_w) x *= s;
    for (double& x : conv_b) x *= s;
    for (double& x : fc_w) x *= s;
    for (double& x : fc_b) x *= s;
}

NetworkParams init_params(const NetworkArch& arch, std::uint64_t seed) {
    NetworkParams p;
    p.adam_m = Gradients::zeros(arch);
    p.adam_v = Gradients::zeros(arch);
    p.conv_b.assign(arch.conv_filters, 0.0);
    p.fc_b.assign(arch.output_dim, 0.0);

    Rng rng(seed);
    double conv_bound = std::sqrt(6.0 / (arch.conv_kernel * arch.conv_kernel));
    size_t cw = static_cast<size_t>(arch.conv_filters) * arch.conv_kernel * arch.conv_kernel;
    p.conv_w.resize(cw);
    for (double& w : p.conv_w) w = rng.uniform(-conv_bound, conv_bound);

    double fc_bound = std::sqrt(6.0 / arch.flat_size());
    p.fc_w.resize(static_cast<size_t>(arch.output_dim) * arch.flat_size());
    for (double& w : p.fc_w) w = rng.uniform(-fc_bound, fc_bound);
    return p;
}

NetworkParams copy_params(const NetworkParams& src) {
    NetworkParams p;
    p.conv_w = src.conv_w;
    p.conv_b = src.conv_b;
    p.fc_w = src.fc_w;
    p.fc_b = src.fc_b;
    p.adam_m.conv_w.assign(src.conv_w.size(), 0.0);
    p.adam_m.conv_b.assign(src.conv_b.size(), 0.0);
    p.adam_m.fc_w.assign(src.fc_w.size(), 0.0);
    p.adam_m.fc_b.assign(src.fc_b.size(), 0.0);
    p.adam_v = p.adam_m;
    p.adam_t = 0;
    return p;
}

std::vector<double> forward(const NetworkParams& params, const NetworkArch& arch,
                            std::span<const double> state) {
    check_shapes(params, arch);
    std::vector<double> act = conv_relu(params, arch, state);
    const int flat = arch.flat_size();
    std::vector<double> q(arch.output_dim);
    for (int o = 0; o < arch.output_dim; ++o) {
        const double* w = &params.fc_w[static_cast<size_t>(o) * flat];
        double sum = params.fc_b[o];
        for (int i = 0; i < flat; ++i) sum += w[i] * act[i];
        q[o] = sum;
    }
    return q;
}

Gradients backward(const NetworkParams& params, const NetworkArch& arch,
                   std::span<const double> state, Action action, double td_target) {
    check_shapes(params, arch);
    if (action.index < 1 || action.index > arch.output_dim)
        throw std::out_of_range("action index out of range");

    std::vector<double> act = conv_relu(params, arch, state);
    const int flat = arch.flat_size();
    const int a = action.index - 1;
    const double* wa = &params.fc_w[static_cast<size_t>(a) * flat];
    double q = params.fc_b[a];
    for (int i = 0; i < flat; ++i) q += wa[i] * act[i];

    // L = (Y - q)^2, dL/dq = -2 (Y - q)
    double dq = -2.0 * (td_target - q);

    Gradients g = Gradients::zeros(arch);
    g.fc_b[a] = dq;
    double* gw = &g.fc_w[static_cast<size_t>(a) * flat];
    for (int i = 0; i < flat; ++i) gw[i] = dq * act[i];

    // Back through ReLU into the conv layer. d(act_i)/d(pre_i) = [act_i > 0].
    const int oh = arch.conv_out_h(), ow = arch.conv_out_w(), k = arch.conv_kernel;
    for (int f = 0; f < arch.conv_filters; ++f) {
        double* gcw = &g.conv_w[static_cast<size_t>(f) * k * k];
        for (int oy = 0; oy < oh; ++oy) {
            for (int ox = 0; ox < ow; ++ox) {
                size_t idx = (static_cast<size_t>(f) * oh + oy) * ow + ox;
                if (act[idx] <= 0.0) continue;
                double dpre = dq * wa[idx];
                g.conv_b[f] += dpre;
                int iy0 = oy * arch.conv_stride - arch.conv_padding;
                int ix0 = ox * arch.conv_stride - arch.conv_padding;
                for (int ky = 0; ky < k; ++ky)
                    for (int kx = 0; kx < k; ++kx) {
                        int iy = iy0 + ky, ix = ix0 + kx;
                        if (iy < 0 || iy >= arch.input_h || ix < 0 || ix >= arch.input_w)
                            continue;
                        gcw[ky * k + kx] += dpre * state[iy * arch.input_w + ix];
                    }
            }
        }
    }
    return g;
}

void adam_step(NetworkParams& params, const Gradients& grads,
               const OptimizerConfig& opt) {
    params.adam_t += 1;
    double bc1 = 1.0 - std::pow(opt.beta1, static_cast<double>(params.adam_t));
    double bc2 = 1.0 - std::pow(opt.beta2, static_cast<double>(params.adam_t));
    adam_update_array(params.conv_w, grads.conv_w, params.adam_m.conv_w,
                      params.adam_v.conv_w, opt, bc1, bc2);
    adam_update_array(params.conv_b, grads.conv_b, params.adam_m.conv_b,
                      params.adam_v.conv_b, opt, bc1, bc2);
    adam_update_array(params.fc_w, grads.fc_w, params.adam_m.fc_w,
                      params.adam_v.fc_w, opt, bc1, bc2);
    adam_update_array(params.fc_b, grads.fc_b, params.adam_m.fc_b,
                      params.adam_v.fc_b, opt, bc1, bc2);
}

void save_checkpoint(const std::string& path, const NetworkArch& arch,
                     const NetworkParams& params) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write checkpoint: " + path);
    out.write(kCheckpointMagic, sizeof kCheckpointMagic);
    std::int32_t fields[7] = {arch.input_h,     arch.input_w,    arch.conv_filters,
                              arch.conv_kernel, arch.conv_stride, arch.conv_padding,
                              arch.output_dim};
    out.write(reinterpret_cast<const char*>(fields), sizeof fields);
    write_u64(out, static_cast<std::uint64_t>(params.adam_t));
    write_array(out, params.conv_w);
    write_array(out, params.conv_b);
    write_array(out, params.fc_w);
    write_array(out, params.fc_b);
    write_array(out, params.adam_m.conv_w);
    write_array(out, params.adam_m.conv_b);
    write_array(out, params.adam_m.fc_w);
    write_array(out, params.adam_m.fc_b);
    write_array(out, params.adam_v.conv_w);
    write_array(out, params.adam_v.conv_b);
    write_array(out, params.adam_v.fc_w);
    write_array(out, params.adam_v.fc_b);
    if (!out) throw std::runtime_error("checkpoint write failed: " + path);
}

void load_checkpoint(const std::string& path, NetworkArch& arch,
                     NetworkParams& params) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open checkpoint: " + path);
    char magic[8];
    in.read(magic, sizeof magic);
    if (!in || std::memcmp(magic, kCheckpointMagic, sizeof magic) != 0)
        throw std::runtime_error("not a checkpoint file: " + path);
    std::int32_t fields[7];
    in.read(reinterpret_cast<char*>(fields), sizeof fields);
    arch.input_h = fields[0];
    arch.input_w = fields[1];
    arch.conv_filters = fields[2];
    arch.conv_kernel = fields[3];
    arch.conv_stride = fields[4];
    arch.conv_padding = fields[5];
    arch.output_dim = fields[6];
    params.adam_t = static_cast<std::int64_t>(read_u64(in));
    params.conv_w = read_array(in);
    params.conv_b = read_array(in);
    params.fc_w = read_array(in);
    params.fc_b = read_array(in);
    params.adam_m.conv_w = read_array(in);
    params.adam_m.conv_b = read_array(in);
    params.adam_m.fc_w = read_array(in);
    params.adam_m.fc_b = read_array(in);
    params.adam_v.conv_w = read_array(in);
    params.adam_v.conv_b = read_array(in);
    params.adam_v.fc_w = read_array(in);
    params.adam_v.fc_b = read_array(in);
    if (!in) throw std::runtime_error("checkpoint truncated: " + path);
    check_shapes(params, arch);
}

}  // namespace rlpp
