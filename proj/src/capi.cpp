#include "periraise.h"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <random>
#include <string>

#include "a2c.hpp"
#include "checkpoint.hpp"
#include "config.hpp"
#include "env.hpp"
#include "errors.hpp"
#include "harness.hpp"
#include "trajectory.hpp"

using namespace periraise;

extern "C" {

struct pr_env {
    env::SatelliteEnv impl;
    env::StepOutcome last_outcome;
    bool has_outcome = false;

    explicit pr_env(env::EpisodeConfig cfg) : impl(std::move(cfg)) {}
};

struct pr_policy {
    checkpoint::Checkpoint ckpt;

    explicit pr_policy(checkpoint::Checkpoint c) : ckpt(std::move(c)) {}
};

}  // extern "C"

namespace {

thread_local std::string g_last_error;

int fail(int code, const char* what) {
    g_last_error = what;
    return code;
}

// UsageError/ParseError -> usage code; everything else -> runtime.
template <typename Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const UsageError& e) {
        return fail(PR_ERR_USAGE, e.what());
    } catch (const ParseError& e) {
        return fail(PR_ERR_USAGE, e.what());
    } catch (const std::exception& e) {
        return fail(PR_ERR_RUNTIME, e.what());
    } catch (...) {
        return fail(PR_ERR_RUNTIME, "unknown error");
    }
}

config::ProjectConfig resolve_config(const char* config_json) {
    if (config_json == nullptr || std::strlen(config_json) == 0)
        return config::default_config();
    return config::parse_config(config_json);
}

double anomaly_from_seed(std::uint64_t seed) {
    Rng rng = make_rng(seed, 0);
    std::uniform_real_distribution<double> uniform(0.0, 2.0 * 3.141592653589793);
    return uniform(rng);
}

}  // namespace

extern "C" {

const char* pr_version(void) { return "0.1.0"; }

const char* pr_last_error(void) { return g_last_error.c_str(); }

int pr_env_create(const char* config_json, int use_eval_profile, pr_env** out_env) {
    return guarded([&]() -> int {
        if (out_env == nullptr) return fail(PR_ERR_USAGE, "pr_env_create: null output pointer");
        const config::ProjectConfig cfg = resolve_config(config_json);
        env::EpisodeConfig episode =
            use_eval_profile ? config::make_eval_episode(cfg) : config::make_train_episode(cfg);
        *out_env = new pr_env(std::move(episode));
        return PR_OK;
    });
}

void pr_env_destroy(pr_env* env) { delete env; }

int pr_env_observation_dim(const pr_env* env) { return env ? env->impl.observation_dim() : 0; }

int pr_env_action_dim(const pr_env* env) { return env ? env->impl.action_dim() : 0; }

int pr_env_reset(pr_env* env, uint64_t seed, double* obs_out) {
    return guarded([&]() -> int {
        if (env == nullptr || obs_out == nullptr)
            return fail(PR_ERR_USAGE, "pr_env_reset: null pointer");
        const env::Observation obs = env->impl.reset_episode(seed);
        std::copy(obs.begin(), obs.end(), obs_out);
        env->has_outcome = false;
        return PR_OK;
    });
}

int pr_env_step(pr_env* env, const double* action, double* obs_out, double* reward_out,
                int* done_out) {
    return guarded([&]() -> int {
        if (env == nullptr || action == nullptr)
            return fail(PR_ERR_USAGE, "pr_env_step: null pointer");
        const env::StepOutcome outcome =
            env->impl.step_episode({action[0], action[1], action[2]});
        env->last_outcome = outcome;
        env->has_outcome = true;
        if (obs_out != nullptr)
            std::copy(outcome.observation.begin(), outcome.observation.end(), obs_out);
        if (reward_out != nullptr) *reward_out = outcome.reward;
        if (done_out != nullptr) *done_out = outcome.done ? 1 : 0;
        return PR_OK;
    });
}

int pr_env_info(const pr_env* env, double* ra_km, double* rp_km, double* mass_kg) {
    return guarded([&]() -> int {
        if (env == nullptr) return fail(PR_ERR_USAGE, "pr_env_info: null env");
        double ra, rp;
        if (env->has_outcome) {
            ra = env->last_outcome.info.apocenter_radius;
            rp = env->last_outcome.info.pericenter_radius;
        } else {
            ra = env->impl.initial_apocenter();
            rp = env->impl.initial_pericenter();
        }
        if (ra_km != nullptr) *ra_km = ra;
        if (rp_km != nullptr) *rp_km = rp;
        if (mass_kg != nullptr) *mass_kg = env->impl.state().mass;
        return PR_OK;
    });
}

int pr_env_state(const pr_env* env, double* t_s, double* position_km, double* velocity_kms,
                 double* mass_kg) {
    return guarded([&]() -> int {
        if (env == nullptr) return fail(PR_ERR_USAGE, "pr_env_state: null env");
        const astro::StateVector& s = env->impl.state();
        if (t_s != nullptr) *t_s = s.epoch.seconds_since_t0;
        if (position_km != nullptr) {
            position_km[0] = s.position.x;
            position_km[1] = s.position.y;
            position_km[2] = s.position.z;
        }
        if (velocity_kms != nullptr) {
            velocity_kms[0] = s.velocity.x;
            velocity_kms[1] = s.velocity.y;
            velocity_kms[2] = s.velocity.z;
        }
        if (mass_kg != nullptr) *mass_kg = s.mass;
        return PR_OK;
    });
}

int pr_policy_load(const char* checkpoint_path, pr_policy** out_policy) {
    return guarded([&]() -> int {
        if (checkpoint_path == nullptr || out_policy == nullptr)
            return fail(PR_ERR_USAGE, "pr_policy_load: null pointer");
        *out_policy = new pr_policy(checkpoint::load(checkpoint_path));
        return PR_OK;
    });
}

void pr_policy_destroy(pr_policy* policy) { delete policy; }

int pr_policy_mean_action(const pr_policy* policy, const double* obs, double* action_out) {
    return guarded([&]() -> int {
        if (policy == nullptr || obs == nullptr || action_out == nullptr)
            return fail(PR_ERR_USAGE, "pr_policy_mean_action: null pointer");
        const int in = policy->ckpt.actor.shape().in;
        const std::vector<double> obs_vec(obs, obs + in);
        const std::vector<double> action = a2c::mean_action(policy->ckpt.actor, obs_vec);
        std::copy(action.begin(), action.end(), action_out);
        return PR_OK;
    });
}

int pr_train(const char* config_json, const char* out_dir, int n_seeds, long long total_steps,
             long long base_seed, pr_train_summary* summary_out) {
    return guarded([&]() -> int {
        if (out_dir == nullptr || std::strlen(out_dir) == 0)
            return fail(PR_ERR_USAGE, "pr_train: out_dir required");
        config::ProjectConfig cfg = resolve_config(config_json);
        if (n_seeds > 0) cfg.n_seeds = n_seeds;
        if (total_steps > 0) cfg.total_steps = total_steps;
        if (base_seed >= 0) cfg.base_seed = static_cast<std::uint64_t>(base_seed);

        const harness::RunSummary summary =
            harness::train_run(config::make_run_config(cfg, out_dir));

        int failed = 0;
        for (const auto& s : summary.seeds) failed += s.failed ? 1 : 0;
        if (summary_out != nullptr) {
            summary_out->n_seeds = static_cast<int>(summary.seeds.size());
            summary_out->n_failed = failed;
            summary_out->best_eval_reward = summary.best_reward();
        }
        if (failed == static_cast<int>(summary.seeds.size()))
            return fail(PR_ERR_RUNTIME, "pr_train: every seed failed");
        if (failed > 0) return fail(PR_ERR_PARTIAL, "pr_train: some seeds failed");
        return PR_OK;
    });
}

namespace {

int run_trajectory(const char* config_json, const char* checkpoint_path, const char* out_csv,
                   bool eval_profile, uint64_t noise_seed, const uint64_t* anomaly_seed,
                   double* reward_out) {
    if (checkpoint_path == nullptr || out_csv == nullptr)
        return fail(PR_ERR_USAGE, "trajectory: null path");
    const config::ProjectConfig cfg = resolve_config(config_json);
    const checkpoint::Checkpoint ckpt = checkpoint::load(checkpoint_path);

    std::optional<double> anomaly;
    if (anomaly_seed != nullptr) anomaly = anomaly_from_seed(*anomaly_seed);

    const env::EpisodeConfig episode =
        eval_profile ? config::make_eval_episode(cfg) : config::make_train_episode(cfg);
    const trajectory::Trajectory traj =
        eval_profile ? harness::fly_trajectory(ckpt, episode, noise_seed, anomaly)
                     : harness::plan_trajectory(ckpt, episode, anomaly);
    trajectory::write_csv(out_csv, traj);
    if (reward_out != nullptr) *reward_out = traj.reward;
    return PR_OK;
}

}  // namespace

int pr_plan(const char* config_json, const char* checkpoint_path, const char* out_csv,
            const uint64_t* anomaly_seed, double* reward_out) {
    return guarded([&]() -> int {
        return run_trajectory(config_json, checkpoint_path, out_csv, false, 0, anomaly_seed,
                              reward_out);
    });
}

int pr_fly(const char* config_json, const char* checkpoint_path, const char* out_csv,
           uint64_t noise_seed, const uint64_t* anomaly_seed, double* reward_out) {
    return guarded([&]() -> int {
        return run_trajectory(config_json, checkpoint_path, out_csv, true, noise_seed,
                              anomaly_seed, reward_out);
    });
}

int pr_plot_data(const char* in_csv, const char* what, const char* out_path) {
    return guarded([&]() -> int {
        if (in_csv == nullptr || what == nullptr || out_path == nullptr)
            return fail(PR_ERR_USAGE, "pr_plot_data: null pointer");
        const std::string series = what;
        if (series != "ra" && series != "rp" && series != "mass" && series != "actions")
            return fail(PR_ERR_USAGE,
                        "pr_plot_data: unknown series (valid: ra, rp, mass, actions)");

        const trajectory::Trajectory traj = trajectory::read_csv(in_csv);
        std::ofstream out(out_path);
        if (!out) return fail(PR_ERR_RUNTIME, "pr_plot_data: cannot open output");

        const auto fmt = [](double v) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.17g", v);
            return std::string(buf);
        };
        if (series == "actions") {
            out << "t_min,ax_cmd,ay_cmd,az_cmd\n";
            for (const auto& p : traj.points)
                out << fmt(p.t_s / 60.0) << ',' << fmt(p.action.x) << ',' << fmt(p.action.y)
                    << ',' << fmt(p.action.z) << "\n";
        } else {
            out << "t_min," << (series == "ra" ? "ra_km" : series == "rp" ? "rp_km" : "mass_kg")
                << "\n";
            for (const auto& p : traj.points) {
                const double v =
                    series == "ra" ? p.ra_km : series == "rp" ? p.rp_km : p.mass_kg;
                out << fmt(p.t_s / 60.0) << ',' << fmt(v) << "\n";
            }
        }
        return PR_OK;
    });
}

}  // extern "C"
