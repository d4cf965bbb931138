#include "harness.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <thread>

#include <json.hpp>

#include "errors.hpp"

namespace periraise::harness {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

trajectory::Trajectory record_episode(const checkpoint::Checkpoint& ckpt,
                                      const env::EpisodeConfig& episode_config,
                                      double mean_anomaly, std::uint64_t noise_seed) {
    env::SatelliteEnv env(episode_config);
    env::Observation obs = env.reset_with_mean_anomaly(mean_anomaly, noise_seed);

    trajectory::Trajectory traj;
    traj.initial_mean_anomaly = env.initial_mean_anomaly();
    traj.points.reserve(episode_config.n_steps + 1);

    const auto push_point = [&](int step, const astro::StateVector& s, double ra, double rp,
                                const Vec3& action) {
        trajectory::Point p;
        p.step = step;
        p.t_s = s.epoch.seconds_since_t0;
        p.position = s.position;
        p.velocity = s.velocity;
        p.mass_kg = s.mass;
        p.ra_km = ra;
        p.rp_km = rp;
        p.action = action;
        traj.points.push_back(p);
    };

    std::vector<double> obs_vec(obs.begin(), obs.end());
    const std::vector<double> first_action = a2c::mean_action(ckpt.actor, obs_vec);
    push_point(0, env.state(), env.initial_apocenter(), env.initial_pericenter(),
               {first_action[0], first_action[1], first_action[2]});

    std::vector<double> action = first_action;
    for (int step = 1; step <= episode_config.n_steps; ++step) {
        const env::StepOutcome outcome = env.step_episode({action[0], action[1], action[2]});
        Vec3 next_action{0.0, 0.0, 0.0};
        if (!outcome.done) {
            obs_vec.assign(outcome.observation.begin(), outcome.observation.end());
            action = a2c::mean_action(ckpt.actor, obs_vec);
            next_action = {action[0], action[1], action[2]};
        }
        push_point(step, outcome.info.state, outcome.info.apocenter_radius,
                   outcome.info.pericenter_radius, next_action);
        if (outcome.done) {
            traj.reward = outcome.reward;
            break;
        }
    }
    return traj;
}

void write_jsonl(std::ofstream& out, const json& j) { out << j.dump() << "\n"; }

SeedResult train_seed(const RunConfig& config, std::uint64_t seed) {
    SeedResult result;
    result.seed = seed;

    const fs::path seed_dir = fs::path(config.out_dir) / std::to_string(seed);
    fs::create_directories(seed_dir);

    std::ofstream train_log(seed_dir / "train.jsonl");
    std::ofstream eval_log(seed_dir / "eval.jsonl");
    if (!train_log || !eval_log) throw Error("train_run: cannot open log files");

    env::SatelliteEnv train_env(config.episode);
    env::SatelliteEnv eval_env(config.episode);
    a2c::Learner learner(train_env, config.agent, seed);
    Rng eval_rng = make_rng(seed, 4);

    long long episodes_done = 0;
    long long episodes_at_last_eval = 0;
    long long updates = 0;
    double best_reward = -std::numeric_limits<double>::infinity();

    const auto snapshot = [&](bool with_adam) {
        checkpoint::Checkpoint ckpt(learner.actor(), learner.critic());
        if (with_adam) {
            checkpoint::AdamSnapshot adam;
            adam.actor = learner.actor_adam();
            adam.critic = learner.critic_adam();
            ckpt.adam = std::move(adam);
        }
        ckpt.meta.seed = seed;
        ckpt.meta.training_step = learner.global_step();
        return ckpt;
    };

    checkpoint::Meta last_eval_meta;
    try {
        while (learner.global_step() < config.total_steps) {
            const a2c::Learner::RolloutStats stats = learner.collect_and_update();
            ++updates;
            if (config.train_log_every_updates > 0 &&
                updates % config.train_log_every_updates == 0) {
                write_jsonl(train_log, json{{"kind", "update"},
                                            {"global_step", learner.global_step()},
                                            {"policy_loss", stats.loss.policy_loss},
                                            {"value_loss", stats.loss.value_loss},
                                            {"entropy", stats.loss.entropy}});
            }
            for (const double ep_reward : stats.finished_episode_rewards) {
                ++episodes_done;
                write_jsonl(train_log, json{{"kind", "episode"},
                                            {"episode", episodes_done},
                                            {"global_step", learner.global_step()},
                                            {"reward", ep_reward}});
            }

            if (episodes_done - episodes_at_last_eval >= config.eval_every_episodes) {
                episodes_at_last_eval = episodes_done;
                const EvalOutcome eval = run_deterministic_episode(eval_env, learner.actor(),
                                                                   std::nullopt, eval_rng());
                EvalRecord record{seed,           learner.global_step(), eval.reward,
                                  eval.delta_rp,  eval.delta_ra,         eval.delta_m,
                                  eval.mean_anomaly};
                result.evals.push_back(record);
                write_jsonl(eval_log, json{{"seed", record.seed},
                                           {"training_step", record.training_step},
                                           {"eval_reward", record.eval_reward},
                                           {"delta_rp_km", record.delta_rp_km},
                                           {"delta_ra_km", record.delta_ra_km},
                                           {"delta_m_kg", record.delta_m_kg},
                                           {"mean_anomaly", record.mean_anomaly}});

                if (eval.reward > best_reward) {
                    best_reward = eval.reward;
                    checkpoint::Checkpoint best = snapshot(false);
                    best.meta.eval_reward = eval.reward;
                    best.meta.eval_mean_anomaly = eval.mean_anomaly;
                    best.meta.has_eval = true;
                    last_eval_meta = best.meta;
                    checkpoint::save((seed_dir / "checkpoint_best").string(), best);
                }
            }
        }
    } catch (const DivergenceError& e) {
        result.failed = true;
        result.error = e.what();
    }

    checkpoint::Checkpoint final_ckpt = snapshot(true);
    if (last_eval_meta.has_eval) {
        final_ckpt.meta.eval_reward = last_eval_meta.eval_reward;
        final_ckpt.meta.eval_mean_anomaly = last_eval_meta.eval_mean_anomaly;
        final_ckpt.meta.has_eval = true;
    }
    checkpoint::save((seed_dir / "checkpoint_final").string(), final_ckpt);

    // planned trajectory of the strongest agent this seed produced
    const fs::path best_path = seed_dir / "checkpoint_best";
    const checkpoint::Checkpoint for_plan =
        fs::exists(best_path) ? checkpoint::load(best_path.string()) : final_ckpt;
    trajectory::write_csv((seed_dir / "trajectory.csv").string(),
                          plan_trajectory(for_plan, config.episode));

    result.best_eval_reward = best_reward;
    result.steps_done = learner.global_step();
    return result;
}

}  // namespace

bool RunSummary::any_failed() const {
    return std::any_of(seeds.begin(), seeds.end(), [](const SeedResult& s) { return s.failed; });
}

double RunSummary::best_reward() const {
    double best = -std::numeric_limits<double>::infinity();
    for (const SeedResult& s : seeds) best = std::max(best, s.best_eval_reward);
    return best;
}

EvalOutcome run_deterministic_episode(env::SatelliteEnv& env, const nn::MlpParams& actor,
                                      std::optional<double> mean_anomaly, std::uint64_t seed) {
    env::Observation obs = mean_anomaly ? env.reset_with_mean_anomaly(*mean_anomaly, seed)
                                        : env.reset_episode(seed);

    EvalOutcome outcome;
    outcome.mean_anomaly = env.initial_mean_anomaly();
    const double ra0 = env.initial_apocenter();
    const double rp0 = env.initial_pericenter();
    const double m0 = env.config().m0;

    std::vector<double> obs_vec(obs.begin(), obs.end());
    while (true) {
        const std::vector<double> action = a2c::mean_action(actor, obs_vec);
        const env::StepOutcome step = env.step_episode({action[0], action[1], action[2]});
        if (step.done) {
            outcome.reward = step.reward;
            outcome.delta_rp = step.info.pericenter_radius - rp0;
            outcome.delta_ra = step.info.apocenter_radius - ra0;
            outcome.delta_m = step.info.mass - m0;
            return outcome;
        }
        obs_vec.assign(step.observation.begin(), step.observation.end());
    }
}

RunSummary train_run(const RunConfig& config) {
    if (config.n_seeds <= 0) throw UsageError("train_run: n_seeds must be positive");
    if (config.out_dir.empty()) throw UsageError("train_run: out_dir required");
    fs::create_directories(config.out_dir);

    RunSummary summary;
    summary.seeds.resize(config.n_seeds);

    unsigned int workers = config.max_parallel > 0
                               ? static_cast<unsigned int>(config.max_parallel)
                               : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned int>(workers, config.n_seeds);

    std::atomic<int> next{0};
    const auto worker = [&]() {
        while (true) {
            const int idx = next.fetch_add(1);
            if (idx >= config.n_seeds) return;
            const std::uint64_t seed = config.base_seed + static_cast<std::uint64_t>(idx);
            try {
                summary.seeds[idx] = train_seed(config, seed);
            } catch (const std::exception& e) {
                summary.seeds[idx].seed = seed;
                summary.seeds[idx].failed = true;
                summary.seeds[idx].error = e.what();
            }
        }
    };

    std::vector<std::thread> threads;
    for (unsigned int i = 0; i < workers; ++i) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();

    json manifest;
    manifest["n_seeds"] = config.n_seeds;
    manifest["base_seed"] = config.base_seed;
    manifest["total_steps"] = config.total_steps;
    manifest["eval_every_episodes"] = config.eval_every_episodes;
    if (!config.resolved_config_json.empty()) {
        manifest["config"] = json::parse(config.resolved_config_json);
    }
    json per_seed = json::array();
    for (const SeedResult& s : summary.seeds) {
        per_seed.push_back(json{{"seed", s.seed},
                                {"failed", s.failed},
                                {"error", s.error},
                                {"best_eval_reward", s.best_eval_reward},
                                {"steps_done", s.steps_done}});
    }
    manifest["seeds"] = per_seed;
    std::ofstream manifest_out(fs::path(config.out_dir) / "manifest.json");
    manifest_out << manifest.dump(1) << "\n";

    return summary;
}

trajectory::Trajectory plan_trajectory(const checkpoint::Checkpoint& ckpt,
                                       const env::EpisodeConfig& episode,
                                       std::optional<double> mean_anomaly) {
    double m0 = 0.0;
    if (mean_anomaly) {
        m0 = *mean_anomaly;
    } else if (ckpt.meta.has_eval) {
        m0 = ckpt.meta.eval_mean_anomaly;
    }
    return record_episode(ckpt, episode, m0, 0);
}

trajectory::Trajectory fly_trajectory(const checkpoint::Checkpoint& ckpt,
                                      const env::EpisodeConfig& episode, std::uint64_t noise_seed,
                                      std::optional<double> mean_anomaly) {
    double m0 = 0.0;
    if (mean_anomaly) {
        m0 = *mean_anomaly;
    } else if (ckpt.meta.has_eval) {
        m0 = ckpt.meta.eval_mean_anomaly;
    }
    return record_episode(ckpt, episode, m0, noise_seed);
}

}  // namespace periraise::harness
