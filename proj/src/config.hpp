#pragma once

#include <string>

#include "a2c.hpp"
#include "env.hpp"
#include "harness.hpp"

namespace periraise::config {

// Resolved run configuration. Defaults reproduce the reference scenario:
// 9000x11000 km orbit, 10 mN thrusters, 166 x 5 min episodes, A2C with a
// 200-node hidden layer.
struct ProjectConfig {
    env::EpisodeConfig episode;           // training profile installed
    forces::DynamicsProfile eval_profile; // 16x16 field, Sun/Moon, SRP, 10% noise
    a2c::A2cConfig agent;

    int n_seeds = 14;
    std::uint64_t base_seed = 0;
    long long total_steps = 500000;
    int eval_every_episodes = 5;
    int max_parallel = 0;
    long long train_log_every_updates = 1;

    std::string gravity_file;  // empty: bundled 16x16 field
};

ProjectConfig default_config();

// Strict parse: unknown keys are rejected by name, every key optional with
// the defaults above.
ProjectConfig parse_config(const std::string& json_text);
ProjectConfig load_config_file(const std::string& path);

// Full resolved configuration (for run manifests).
std::string to_json(const ProjectConfig& config);

env::EpisodeConfig make_train_episode(const ProjectConfig& config);
// Loads the gravity coefficients (configured file or the bundled field).
env::EpisodeConfig make_eval_episode(const ProjectConfig& config);

harness::RunConfig make_run_config(const ProjectConfig& config, const std::string& out_dir);

}  // namespace periraise::config
