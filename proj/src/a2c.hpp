#pragma once

#include <cstdint>
#include <vector>

#include "env.hpp"
#include "nn.hpp"
#include "rng.hpp"

namespace periraise::a2c {

struct A2cConfig {
    double gamma = 1.0;
    // longer rollouts than the classic 5 keep the tanh policy head from
    // drifting into saturation on terminal-reward episodes
    int n_rollout = 32;
    double value_loss_weight = 0.5;
    double entropy_weight = 0.0;
    double grad_clip_norm = 0.5;
    int hidden = 200;
    nn::AdamConfig adam;  // lr defaults to 1e-3
};

struct PolicySample {
    std::vector<double> mean;
    std::vector<double> std;
    std::vector<double> pre_clamp;  // raw Gaussian draw; log_prob refers to it
    std::vector<double> action;     // clamped to [-1, 1] for the environment
    double log_prob = 0.0;
};

double gaussian_log_prob(const std::vector<double>& x, const std::vector<double>& mean,
                         const std::vector<double>& stddev);

// Draws from N(actor(obs), diag(exp(log_std)^2)).
PolicySample sample_action(const nn::MlpParams& actor, const std::vector<double>& obs, Rng& rng);

// Closed-form diagonal-Gaussian entropy: sum_k 0.5*ln(2*pi*e*sigma_k^2).
double policy_entropy(const nn::MlpParams& actor);

struct Transition {
    std::vector<double> obs;
    std::vector<double> pre_clamp_action;
    double reward = 0.0;
    bool done = false;
};

struct Rollout {
    std::vector<Transition> steps;
    double bootstrap_value = 0.0;  // V of the state after the last step; unused when it is terminal
};

// n-step bootstrapped returns G_t and advantages G_t - V(s_t). `values` holds
// V(s_t) per step. A done step cuts the chain (terminal value 0).
void compute_returns_and_advantages(const Rollout& rollout, const std::vector<double>& values,
                                    double gamma, std::vector<double>& returns,
                                    std::vector<double>& advantages);

struct LossReport {
    double policy_loss = 0.0;
    double value_loss = 0.0;
    double entropy = 0.0;
};

// One learner, one environment, strictly sequential. Rollouts run across
// episode boundaries; the environment is re-reset with a fresh seed from the
// learner's stream whenever an episode finishes.
class Learner {
  public:
    Learner(env::EnvInterface& env, const A2cConfig& config, std::uint64_t seed);

    struct RolloutStats {
        LossReport loss;
        int steps = 0;
        std::vector<double> finished_episode_rewards;
    };

    // Collects n_rollout transitions, then performs one actor and one critic
    // Adam step. Throws DivergenceError on non-finite losses.
    RolloutStats collect_and_update();

    const nn::MlpParams& actor() const { return actor_; }
    const nn::MlpParams& critic() const { return critic_; }
    nn::MlpParams& actor() { return actor_; }
    nn::MlpParams& critic() { return critic_; }
    nn::AdamState& actor_adam() { return actor_adam_; }
    nn::AdamState& critic_adam() { return critic_adam_; }
    const nn::AdamConfig& adam_config() const { return config_.adam; }

    long long global_step() const { return global_step_; }

  private:
    LossReport update(const Rollout& rollout);

    env::EnvInterface& env_;
    A2cConfig config_;
    nn::MlpParams actor_;
    nn::MlpParams critic_;
    nn::AdamState actor_adam_;
    nn::AdamState critic_adam_;
    Rng rng_;
    std::vector<double> current_obs_;
    bool episode_active_ = false;
    double episode_return_ = 0.0;
    long long global_step_ = 0;
};

// Deterministic policy output (the Gaussian mean, clamped) for evaluation.
std::vector<double> mean_action(const nn::MlpParams& actor, const std::vector<double>& obs);

}  // namespace periraise::a2c
