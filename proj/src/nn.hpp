#pragma once

#include <cstddef>
#include <vector>

#include "rng.hpp"

namespace periraise::nn {

inline constexpr double kLeakySlope = 0.01;

struct MlpShape {
    int in = 0;
    int hidden = 0;
    int out = 0;
    bool tanh_output = false;
    bool has_log_std = false;

    bool operator==(const MlpShape&) const = default;
};

// One-hidden-layer dense network, parameters in a single flat vector so the
// optimizer, clipping and checkpointing treat them uniformly.
// Layout: [w1 (hidden x in, row-major) | b1 | w2 (out x hidden) | b2 | log_std].
class MlpParams {
  public:
    explicit MlpParams(const MlpShape& shape);  // zero-initialized

    // fan-in uniform weights +-sqrt(1/fan_in), zero biases, log_std = 0.
    // head_scale shrinks the output layer (policy heads start near zero so
    // the tanh cannot saturate before any learning happened).
    static MlpParams initialized(const MlpShape& shape, Rng& rng, double head_scale = 1.0);

    const MlpShape& shape() const { return shape_; }
    std::vector<double>& flat() { return flat_; }
    const std::vector<double>& flat() const { return flat_; }
    std::size_t size() const { return flat_.size(); }

    double* w1() { return flat_.data(); }
    double* b1() { return flat_.data() + w1_size(); }
    double* w2() { return flat_.data() + w1_size() + b1_size(); }
    double* b2() { return flat_.data() + w1_size() + b1_size() + w2_size(); }
    double* log_std() { return flat_.data() + w1_size() + b1_size() + w2_size() + b2_size(); }
    const double* w1() const { return flat_.data(); }
    const double* b1() const { return flat_.data() + w1_size(); }
    const double* w2() const { return flat_.data() + w1_size() + b1_size(); }
    const double* b2() const { return flat_.data() + w1_size() + b1_size() + w2_size(); }
    const double* log_std() const {
        return flat_.data() + w1_size() + b1_size() + w2_size() + b2_size();
    }

    std::size_t w1_size() const { return static_cast<std::size_t>(shape_.hidden) * shape_.in; }
    std::size_t b1_size() const { return shape_.hidden; }
    std::size_t w2_size() const { return static_cast<std::size_t>(shape_.out) * shape_.hidden; }
    std::size_t b2_size() const { return shape_.out; }
    std::size_t log_std_size() const { return shape_.has_log_std ? shape_.out : 0; }

    void zero() { flat_.assign(flat_.size(), 0.0); }

  private:
    MlpShape shape_;
    std::vector<double> flat_;
};

struct ForwardCache {
    std::vector<double> x;   // input copy
    std::vector<double> z1;  // hidden pre-activation
    std::vector<double> h;   // hidden post leaky-ReLU
    std::vector<double> y;   // output (post tanh for the actor)
};

// y = act(w2 * leaky(w1 x + b1) + b2), act = tanh or identity per shape.
void forward(const MlpParams& params, const double* x, ForwardCache& cache);

// Accumulates d(loss)/d(params) into `grads` (same shape, not zeroed here)
// given d(loss)/d(output). The output activation is part of the network, so
// dl_dy is with respect to the post-activation output. log_std has no
// forward path; its gradient is the caller's business.
void backward(const MlpParams& params, const ForwardCache& cache, const double* dl_dy,
              MlpParams& grads);

// Convenience single-output evaluation (critic).
double scalar_forward(const MlpParams& params, const double* x);

struct AdamConfig {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

struct AdamState {
    std::vector<double> m;
    std::vector<double> v;
    long long step = 0;

    explicit AdamState(std::size_t n) : m(n, 0.0), v(n, 0.0) {}
};

// Standard bias-corrected Adam step.
void adam_update(std::vector<double>& params, const std::vector<double>& grads, AdamState& state,
                 const AdamConfig& config);

}  // namespace periraise::nn
