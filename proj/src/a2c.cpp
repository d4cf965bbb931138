#include "a2c.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "errors.hpp"

namespace periraise::a2c {

namespace {
constexpr double kLogTwoPi = 1.8378770664093453;  // ln(2*pi)
}

double gaussian_log_prob(const std::vector<double>& x, const std::vector<double>& mean,
                         const std::vector<double>& stddev) {
    double lp = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double z = (x[k] - mean[k]) / stddev[k];
        lp += -0.5 * z * z - std::log(stddev[k]) - 0.5 * kLogTwoPi;
    }
    return lp;
}

PolicySample sample_action(const nn::MlpParams& actor, const std::vector<double>& obs, Rng& rng) {
    const int out = actor.shape().out;
    PolicySample s;
    s.mean.resize(out);
    s.std.resize(out);
    s.pre_clamp.resize(out);
    s.action.resize(out);

    nn::ForwardCache cache;
    nn::forward(actor, obs.data(), cache);
    std::normal_distribution<double> unit(0.0, 1.0);
    for (int k = 0; k < out; ++k) {
        s.mean[k] = cache.y[k];
        s.std[k] = std::exp(actor.log_std()[k]);
        s.pre_clamp[k] = s.mean[k] + s.std[k] * unit(rng);
        s.action[k] = std::clamp(s.pre_clamp[k], -1.0, 1.0);
    }
    s.log_prob = gaussian_log_prob(s.pre_clamp, s.mean, s.std);
    return s;
}

double policy_entropy(const nn::MlpParams& actor) {
    double h = 0.0;
    for (std::size_t k = 0; k < actor.log_std_size(); ++k)
        h += 0.5 * (1.0 + kLogTwoPi) + actor.log_std()[k];
    return h;
}

void compute_returns_and_advantages(const Rollout& rollout, const std::vector<double>& values,
                                    double gamma, std::vector<double>& returns,
                                    std::vector<double>& advantages) {
    const std::size_t n = rollout.steps.size();
    returns.assign(n, 0.0);
    advantages.assign(n, 0.0);
    double running = rollout.steps.empty() || rollout.steps.back().done ? 0.0
                                                                        : rollout.bootstrap_value;
    for (std::size_t i = n; i-- > 0;) {
        const Transition& tr = rollout.steps[i];
        running = tr.done ? tr.reward : tr.reward + gamma * running;
        returns[i] = running;
        advantages[i] = returns[i] - values[i];
    }
}

std::vector<double> mean_action(const nn::MlpParams& actor, const std::vector<double>& obs) {
    nn::ForwardCache cache;
    nn::forward(actor, obs.data(), cache);
    std::vector<double> action = cache.y;
    for (double& a : action) a = std::clamp(a, -1.0, 1.0);
    return action;
}

Learner::Learner(env::EnvInterface& env, const A2cConfig& config, std::uint64_t seed)
    : env_(env),
      config_(config),
      actor_(nn::MlpParams(nn::MlpShape{env.observation_dim(), config.hidden, env.action_dim(),
                                        /*tanh_output=*/true, /*has_log_std=*/true})),
      critic_(nn::MlpParams(nn::MlpShape{env.observation_dim(), config.hidden, 1,
                                         /*tanh_output=*/false, /*has_log_std=*/false})),
      actor_adam_(0),
      critic_adam_(0),
      rng_(make_rng(seed, 2)) {
    Rng init_rng = make_rng(seed, 3);
    actor_ = nn::MlpParams::initialized(actor_.shape(), init_rng);
    critic_ = nn::MlpParams::initialized(critic_.shape(), init_rng);
    actor_adam_ = nn::AdamState(actor_.size());
    critic_adam_ = nn::AdamState(critic_.size());
}

Learner::RolloutStats Learner::collect_and_update() {
    Rollout rollout;
    rollout.steps.reserve(config_.n_rollout);
    RolloutStats stats;

    if (!episode_active_) {
        current_obs_ = env_.reset(rng_());
        episode_active_ = true;
        episode_return_ = 0.0;
    }

    for (int i = 0; i < config_.n_rollout; ++i) {
        PolicySample sample = sample_action(actor_, current_obs_, rng_);
        const env::StepResult result = env_.step(sample.action);
        ++global_step_;
        ++stats.steps;
        episode_return_ += result.reward;

        Transition tr;
        tr.obs = current_obs_;
        tr.pre_clamp_action = std::move(sample.pre_clamp);
        tr.reward = result.reward;
        tr.done = result.done;
        rollout.steps.push_back(std::move(tr));

        if (result.done) {
            stats.finished_episode_rewards.push_back(episode_return_);
            current_obs_ = env_.reset(rng_());
            episode_return_ = 0.0;
        } else {
            current_obs_ = result.observation;
        }
    }
    if (!rollout.steps.back().done)
        rollout.bootstrap_value = nn::scalar_forward(critic_, current_obs_.data());

    stats.loss = update(rollout);
    return stats;
}

LossReport Learner::update(const Rollout& rollout) {
    const std::size_t n = rollout.steps.size();
    if (n == 0) throw UsageError("a2c update: empty rollout");
    const int act_dim = actor_.shape().out;
    const double inv_n = 1.0 / static_cast<double>(n);

    std::vector<nn::ForwardCache> actor_caches(n), critic_caches(n);
    std::vector<double> values(n);
    for (std::size_t t = 0; t < n; ++t) {
        nn::forward(actor_, rollout.steps[t].obs.data(), actor_caches[t]);
        nn::forward(critic_, rollout.steps[t].obs.data(), critic_caches[t]);
        values[t] = critic_caches[t].y[0];
    }

    std::vector<double> returns, advantages;
    compute_returns_and_advantages(rollout, values, config_.gamma, returns, advantages);

    LossReport report;
    report.entropy = policy_entropy(actor_);

    nn::MlpParams actor_grads(actor_.shape());
    nn::MlpParams critic_grads(critic_.shape());
    std::vector<double> dl_dmean(act_dim);
    double dl_dvalue = 0.0;

    for (std::size_t t = 0; t < n; ++t) {
        const Transition& tr = rollout.steps[t];
        const std::vector<double>& mean = actor_caches[t].y;
        const double adv = advantages[t];

        double lp = 0.0;
        for (int k = 0; k < act_dim; ++k) {
            const double sigma = std::exp(actor_.log_std()[k]);
            const double z = (tr.pre_clamp_action[k] - mean[k]) / sigma;
            lp += -0.5 * z * z - actor_.log_std()[k] - 0.5 * kLogTwoPi;
            // policy loss -mean(lp * adv): d/dmean and d/dlog_std
            dl_dmean[k] = -adv * inv_n * z / sigma;
            actor_grads.log_std()[k] += -adv * inv_n * (z * z - 1.0);
        }
        nn::backward(actor_, actor_caches[t], dl_dmean.data(), actor_grads);
        report.policy_loss += -lp * adv * inv_n;

        const double value_err = values[t] - returns[t];
        report.value_loss += value_err * value_err * inv_n;
        dl_dvalue = config_.value_loss_weight * 2.0 * value_err * inv_n;
        nn::backward(critic_, critic_caches[t], &dl_dvalue, critic_grads);
    }
    for (int k = 0; k < act_dim; ++k)
        actor_grads.log_std()[k] += -config_.entropy_weight;  // d(-w_H * H)/dlog_std = -w_H

    if (!std::isfinite(report.policy_loss) || !std::isfinite(report.value_loss))
        throw DivergenceError("a2c update: non-finite loss");

    // joint global-norm clip across both networks
    if (config_.grad_clip_norm > 0.0) {
        double sq = 0.0;
        for (double g : actor_grads.flat()) sq += g * g;
        for (double g : critic_grads.flat()) sq += g * g;
        const double norm = std::sqrt(sq);
        if (norm > config_.grad_clip_norm) {
            const double scale = config_.grad_clip_norm / norm;
            for (double& g : actor_grads.flat()) g *= scale;
            for (double& g : critic_grads.flat()) g *= scale;
        }
    }

    nn::adam_update(actor_.flat(), actor_grads.flat(), actor_adam_, config_.adam);
    nn::adam_update(critic_.flat(), critic_grads.flat(), critic_adam_, config_.adam);
    return report;
}

}  // namespace periraise::a2c
