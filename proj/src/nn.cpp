#include "nn.hpp"

#include <cmath>
#include <random>

#include "errors.hpp"

namespace periraise::nn {

MlpParams::MlpParams(const MlpShape& shape) : shape_(shape) {
    if (shape.in <= 0 || shape.hidden <= 0 || shape.out <= 0)
        throw UsageError("MlpParams: dimensions must be positive");
    flat_.assign(w1_size() + b1_size() + w2_size() + b2_size() + log_std_size(), 0.0);
}

MlpParams MlpParams::initialized(const MlpShape& shape, Rng& rng, double head_scale) {
    MlpParams p(shape);
    const double bound1 = std::sqrt(1.0 / shape.in);
    const double bound2 = std::sqrt(1.0 / shape.hidden) * head_scale;
    std::uniform_real_distribution<double> u1(-bound1, bound1);
    std::uniform_real_distribution<double> u2(-bound2, bound2);
    for (std::size_t i = 0; i < p.w1_size(); ++i) p.w1()[i] = u1(rng);
    for (std::size_t i = 0; i < p.w2_size(); ++i) p.w2()[i] = u2(rng);
    // biases and log_std stay zero
    return p;
}

void forward(const MlpParams& params, const double* x, ForwardCache& cache) {
    const MlpShape& s = params.shape();
    cache.x.assign(x, x + s.in);
    cache.z1.assign(s.hidden, 0.0);
    cache.h.resize(s.hidden);
    cache.y.assign(s.out, 0.0);

    const double* w1 = params.w1();
    const double* b1 = params.b1();
    for (int j = 0; j < s.hidden; ++j) {
        double acc = b1[j];
        const double* row = w1 + static_cast<std::size_t>(j) * s.in;
        for (int i = 0; i < s.in; ++i) acc += row[i] * x[i];
        cache.z1[j] = acc;
        cache.h[j] = acc > 0.0 ? acc : kLeakySlope * acc;
    }

    const double* w2 = params.w2();
    const double* b2 = params.b2();
    for (int o = 0; o < s.out; ++o) {
        double acc = b2[o];
        const double* row = w2 + static_cast<std::size_t>(o) * s.hidden;
        for (int j = 0; j < s.hidden; ++j) acc += row[j] * cache.h[j];
        cache.y[o] = s.tanh_output ? std::tanh(acc) : acc;
    }
}

void backward(const MlpParams& params, const ForwardCache& cache, const double* dl_dy,
              MlpParams& grads) {
    const MlpShape& s = params.shape();

    std::vector<double> g_pre(s.out);
    for (int o = 0; o < s.out; ++o) {
        const double dydz = s.tanh_output ? 1.0 - cache.y[o] * cache.y[o] : 1.0;
        g_pre[o] = dl_dy[o] * dydz;
    }

    double* gw2 = grads.w2();
    double* gb2 = grads.b2();
    const double* w2 = params.w2();
    std::vector<double> g_h(s.hidden, 0.0);
    for (int o = 0; o < s.out; ++o) {
        double* grow = gw2 + static_cast<std::size_t>(o) * s.hidden;
        const double* row = w2 + static_cast<std::size_t>(o) * s.hidden;
        for (int j = 0; j < s.hidden; ++j) {
            grow[j] += g_pre[o] * cache.h[j];
            g_h[j] += row[j] * g_pre[o];
        }
        gb2[o] += g_pre[o];
    }

    double* gw1 = grads.w1();
    double* gb1 = grads.b1();
    for (int j = 0; j < s.hidden; ++j) {
        const double g_z1 = g_h[j] * (cache.z1[j] > 0.0 ? 1.0 : kLeakySlope);
        double* grow = gw1 + static_cast<std::size_t>(j) * s.in;
        for (int i = 0; i < s.in; ++i) grow[i] += g_z1 * cache.x[i];
        gb1[j] += g_z1;
    }
}

double scalar_forward(const MlpParams& params, const double* x) {
    ForwardCache cache;
    forward(params, x, cache);
    return cache.y[0];
}

void adam_update(std::vector<double>& params, const std::vector<double>& grads, AdamState& state,
                 const AdamConfig& config) {
    if (params.size() != grads.size() || params.size() != state.m.size())
        throw UsageError("adam_update: size mismatch");
    ++state.step;
    const double bc1 = 1.0 - std::pow(config.beta1, static_cast<double>(state.step));
    const double bc2 = 1.0 - std::pow(config.beta2, static_cast<double>(state.step));
    for (std::size_t i = 0; i < params.size(); ++i) {
        state.m[i] = config.beta1 * state.m[i] + (1.0 - config.beta1) * grads[i];
        state.v[i] = config.beta2 * state.v[i] + (1.0 - config.beta2) * grads[i] * grads[i];
        const double m_hat = state.m[i] / bc1;
        const double v_hat = state.v[i] / bc2;
        params[i] -= config.lr * m_hat / (std::sqrt(v_hat) + config.eps);
    }
}

}  // namespace periraise::nn
