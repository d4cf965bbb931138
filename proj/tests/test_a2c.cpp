#include <cmath>
#include <numeric>
#include <vector>

#include <doctest.h>

#include "a2c.hpp"
#include "env.hpp"

using namespace periraise;
using namespace periraise::a2c;

namespace {

// 1-step bandit: reward -|a - 0.5|, constant observation.
class BanditEnv final : public env::EnvInterface {
  public:
    int observation_dim() const override { return 1; }
    int action_dim() const override { return 1; }
    std::vector<double> reset(std::uint64_t) override { return {0.0}; }
    env::StepResult step(const std::vector<double>& action) override {
        env::StepResult r;
        r.observation = {0.0};
        r.reward = -std::abs(action[0] - 0.5);
        r.done = true;
        return r;
    }
};

// Zero reward forever, fixed-length episodes.
class ZeroEnv final : public env::EnvInterface {
  public:
    int observation_dim() const override { return 2; }
    int action_dim() const override { return 2; }
    std::vector<double> reset(std::uint64_t) override {
        t_ = 0;
        return {0.1, -0.2};
    }
    env::StepResult step(const std::vector<double>&) override {
        ++t_;
        return {{0.1, -0.2}, 0.0, t_ >= 4};
    }

  private:
    int t_ = 0;
};

A2cConfig bandit_config() {
    A2cConfig cfg;
    cfg.hidden = 16;
    cfg.n_rollout = 5;  // single-step episodes need no long-rollout averaging
    return cfg;
}

}  // namespace

TEST_CASE("gaussian log density at the mean of a unit normal") {
    const std::vector<double> zero3(3, 0.0), one3(3, 1.0);
    CHECK(gaussian_log_prob(zero3, zero3, one3) ==
          doctest::Approx(-1.5 * std::log(2.0 * std::numbers::pi)).epsilon(1e-12));
    CHECK(gaussian_log_prob(zero3, zero3, one3) == doctest::Approx(-2.7568).epsilon(1e-4));
}

TEST_CASE("sampling with vanishing std degenerates to the clamped mean") {
    Rng init = make_rng(1, 0);
    nn::MlpParams actor = nn::MlpParams::initialized({8, 16, 3, true, true}, init);
    for (std::size_t k = 0; k < 3; ++k) actor.log_std()[k] = -40.0;
    Rng rng = make_rng(2, 0);
    const std::vector<double> obs(8, 0.25);
    const PolicySample s = sample_action(actor, obs, rng);
    for (int k = 0; k < 3; ++k) {
        CHECK(s.action[k] == doctest::Approx(s.mean[k]).epsilon(1e-12));
        CHECK(s.action[k] >= -1.0);
        CHECK(s.action[k] <= 1.0);
    }
}

TEST_CASE("sample mean converges to the network mean") {
    nn::MlpParams actor({4, 8, 2, true, true});  // zero params: mean (0,0), std 1
    Rng rng = make_rng(3, 0);
    const std::vector<double> obs(4, 0.0);
    const int n = 100000;
    double acc0 = 0.0, acc1 = 0.0;
    for (int i = 0; i < n; ++i) {
        const PolicySample s = sample_action(actor, obs, rng);
        acc0 += s.pre_clamp[0];
        acc1 += s.pre_clamp[1];
    }
    const double bound = 3.0 / std::sqrt(static_cast<double>(n));  // 3 sigma / sqrt(n)
    CHECK(std::abs(acc0 / n) < bound);
    CHECK(std::abs(acc1 / n) < bound);
}

TEST_CASE("log_prob refers to the pre-clamp sample") {
    nn::MlpParams actor({2, 4, 1, true, true});
    actor.log_std()[0] = 2.0;  // wide: clamping happens often
    Rng rng = make_rng(4, 0);
    const std::vector<double> obs(2, 0.0);
    for (int i = 0; i < 200; ++i) {
        const PolicySample s = sample_action(actor, obs, rng);
        CHECK(s.log_prob ==
              doctest::Approx(gaussian_log_prob(s.pre_clamp, s.mean, s.std)).epsilon(1e-12));
        CHECK(std::abs(s.action[0]) <= 1.0);
    }
}

TEST_CASE("returns: discounted tail without bootstrap") {
    Rollout rollout;
    for (double r : {0.0, 0.0, 1.0}) {
        Transition tr;
        tr.reward = r;
        tr.done = r == 1.0;
        rollout.steps.push_back(tr);
    }
    std::vector<double> values(3, 0.0), returns, adv;
    compute_returns_and_advantages(rollout, values, 0.5, returns, adv);
    CHECK(returns == std::vector<double>{0.25, 0.5, 1.0});
}

TEST_CASE("returns: pure bootstrap when every reward is zero") {
    Rollout rollout;
    rollout.steps.resize(5);
    rollout.bootstrap_value = 0.37;
    std::vector<double> values(5, 0.1), returns, adv;
    compute_returns_and_advantages(rollout, values, 1.0, returns, adv);
    for (double g : returns) CHECK(g == doctest::Approx(0.37).epsilon(1e-15));
    for (double a : adv) CHECK(a == doctest::Approx(0.27).epsilon(1e-12));
}

TEST_CASE("returns: terminal-only reward propagates undiscounted with gamma = 1") {
    Rollout rollout;
    rollout.steps.resize(6);
    rollout.steps.back().reward = 1.68;
    rollout.steps.back().done = true;
    std::vector<double> values(6, 0.0), returns, adv;
    compute_returns_and_advantages(rollout, values, 1.0, returns, adv);
    for (double a : adv) CHECK(a == doctest::Approx(1.68).epsilon(1e-15));
}

TEST_CASE("entropy is monotone in log_std") {
    nn::MlpParams actor({2, 4, 3, true, true});
    const double h0 = policy_entropy(actor);
    actor.log_std()[1] = 0.5;
    const double h1 = policy_entropy(actor);
    actor.log_std()[1] = 1.0;
    const double h2 = policy_entropy(actor);
    CHECK(h1 > h0);
    CHECK(h2 > h1);
    CHECK(h1 - h0 == doctest::Approx(0.5).epsilon(1e-12));  // dH/dlog_std = 1
}

TEST_CASE("zero advantages leave both networks untouched") {
    ZeroEnv env;
    A2cConfig cfg = bandit_config();
    Learner learner(env, cfg, 7);
    learner.critic().zero();  // V = 0 everywhere; rewards 0 -> advantages 0

    const std::vector<double> actor_before = learner.actor().flat();
    const std::vector<double> critic_before = learner.critic().flat();
    const Learner::RolloutStats stats = learner.collect_and_update();
    CHECK(stats.loss.policy_loss == 0.0);
    CHECK(stats.loss.value_loss == 0.0);
    CHECK(learner.actor().flat() == actor_before);
    CHECK(learner.critic().flat() == critic_before);
}

TEST_CASE("bandit: the policy mean converges to the optimum") {
    int converged = 0;
    for (std::uint64_t seed : {11u, 22u, 33u}) {
        BanditEnv env;
        Learner learner(env, bandit_config(), seed);
        while (learner.global_step() < 20000) learner.collect_and_update();
        const std::vector<double> action = mean_action(learner.actor(), {0.0});
        if (std::abs(action[0] - 0.5) <= 0.05) ++converged;
    }
    CHECK(converged == 3);
}

TEST_CASE("update direction tracks the advantage sign on the bandit") {
    // actions above the optimum get pushed down and vice versa; net effect:
    // the mean moves towards 0.5 from both sides early in training
    BanditEnv env;
    Learner learner(env, bandit_config(), 5);
    const double initial_gap = std::abs(mean_action(learner.actor(), {0.0})[0] - 0.5);
    while (learner.global_step() < 4000) learner.collect_and_update();
    const double later_gap = std::abs(mean_action(learner.actor(), {0.0})[0] - 0.5);
    CHECK(later_gap < initial_gap);
}

TEST_CASE("learning is deterministic given the seed") {
    const auto run = [](std::uint64_t seed) {
        BanditEnv env;
        Learner learner(env, bandit_config(), seed);
        for (int i = 0; i < 50; ++i) learner.collect_and_update();
        return learner.actor().flat();
    };
    CHECK(run(123) == run(123));
    CHECK(run(123) != run(124));
}
