#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "a2c.hpp"
#include "checkpoint.hpp"
#include "env.hpp"
#include "trajectory.hpp"

namespace periraise::harness {

struct RunConfig {
    int n_seeds = 14;
    std::uint64_t base_seed = 0;
    long long total_steps = 500000;
    int eval_every_episodes = 5;
    std::string out_dir;
    env::EpisodeConfig episode;  // training profile
    a2c::A2cConfig agent;
    int max_parallel = 0;                // 0 = hardware concurrency
    std::string resolved_config_json;    // echoed into the run manifest
    long long train_log_every_updates = 1;
};

struct EvalRecord {
    std::uint64_t seed = 0;
    long long training_step = 0;
    double eval_reward = 0.0;
    double delta_rp_km = 0.0;
    double delta_ra_km = 0.0;
    double delta_m_kg = 0.0;
    double mean_anomaly = 0.0;
};

struct SeedResult {
    std::uint64_t seed = 0;
    bool failed = false;
    std::string error;
    double best_eval_reward = -std::numeric_limits<double>::infinity();
    long long steps_done = 0;
    std::vector<EvalRecord> evals;
};

struct RunSummary {
    std::vector<SeedResult> seeds;

    bool any_failed() const;
    double best_reward() const;
};

// Per-seed outputs under <out_dir>/<seed>/: checkpoint_best, checkpoint_final,
// eval.jsonl, train.jsonl. A failed seed is recorded without aborting the
// rest. The run manifest lands in <out_dir>/manifest.json.
RunSummary train_run(const RunConfig& config);

struct EvalOutcome {
    double reward = 0.0;
    double delta_rp = 0.0;
    double delta_ra = 0.0;
    double delta_m = 0.0;
    double mean_anomaly = 0.0;
};

// One episode under the deterministic policy (network mean).
EvalOutcome run_deterministic_episode(env::SatelliteEnv& env, const nn::MlpParams& actor,
                                      std::optional<double> mean_anomaly, std::uint64_t seed);

// One deterministic episode recorded step by step. When no mean anomaly is
// given, the checkpoint's recorded evaluation anomaly (when present) pins the
// episode so the stored eval reward reproduces.
trajectory::Trajectory plan_trajectory(const checkpoint::Checkpoint& ckpt,
                                       const env::EpisodeConfig& episode,
                                       std::optional<double> mean_anomaly = std::nullopt);

// Closed loop in the perturbed profile; noise_seed drives the thruster-error
// stream only.
trajectory::Trajectory fly_trajectory(const checkpoint::Checkpoint& ckpt,
                                      const env::EpisodeConfig& episode, std::uint64_t noise_seed,
                                      std::optional<double> mean_anomaly = std::nullopt);

}  // namespace periraise::harness
