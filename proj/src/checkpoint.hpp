#pragma once

#include <optional>
#include <string>

#include "nn.hpp"

namespace periraise::checkpoint {

struct AdamSnapshot {
    nn::AdamState actor;
    nn::AdamState critic;

    AdamSnapshot() : actor(0), critic(0) {}
};

struct Meta {
    long long training_step = 0;
    std::uint64_t seed = 0;
    double eval_reward = 0.0;
    double eval_mean_anomaly = 0.0;  // replaying this M0 reproduces eval_reward
    bool has_eval = false;
};

struct Checkpoint {
    nn::MlpParams actor;
    nn::MlpParams critic;
    std::optional<AdamSnapshot> adam;
    Meta meta;

    Checkpoint(nn::MlpParams actor_, nn::MlpParams critic_)
        : actor(std::move(actor_)), critic(std::move(critic_)) {}
};

// Self-describing JSON: format version, layer shapes, row-major weights,
// log_std, optional Adam moments. Doubles round-trip bit-exactly.
void save(const std::string& path, const Checkpoint& ckpt);
Checkpoint load(const std::string& path);

}  // namespace periraise::checkpoint
