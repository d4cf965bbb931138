#include "env.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "errors.hpp"

namespace periraise::env {

double terminal_reward(const EpisodeConfig& config, double delta_rp, double delta_ra,
                       double delta_m) {
    return config.w_rp * delta_rp - config.w_ra * std::abs(delta_ra) + config.w_m * delta_m;
}

Observation normalize_observation(const astro::StateVector& state, const EpisodeConfig& config) {
    const double duration = config.dt * config.n_steps;
    Observation obs;
    obs[0] = 2.0 * (state.epoch.seconds_since_t0 / duration) - 1.0;
    obs[1] = state.position.x / config.d_char;
    obs[2] = state.position.y / config.d_char;
    obs[3] = state.position.z / config.d_char;
    obs[4] = state.velocity.x / config.v_char;
    obs[5] = state.velocity.y / config.v_char;
    obs[6] = state.velocity.z / config.v_char;
    obs[7] = 2.0 * (state.mass / config.m0) - 1.0;
    for (double& v : obs) v = std::clamp(v, -1.0, 1.0);
    return obs;
}

SatelliteEnv::SatelliteEnv(EpisodeConfig config) : config_(std::move(config)) {}

Observation SatelliteEnv::start_episode(double mean_anomaly, std::uint64_t noise_seed) {
    astro::OrbitalElements el;
    el.a = config_.initial_a();
    el.e = config_.initial_e();
    el.i = config_.i0;
    el.raan = config_.raan0;
    el.argp = config_.argp0;
    el.mean_anomaly = astro::wrap_two_pi(mean_anomaly);

    state_ = astro::StateVector{};
    state_.epoch.seconds_since_t0 = 0.0;
    astro::elements_to_cartesian(el, config_.dynamics.constants.mu_earth, state_.position,
                                 state_.velocity);
    state_.mass = config_.m0;

    // osculating baseline for the terminal reward
    const astro::OrbitalElements osc = astro::cartesian_to_elements(
        state_.position, state_.velocity, config_.dynamics.constants.mu_earth);
    initial_ra_ = osc.apocenter_radius();
    initial_rp_ = osc.pericenter_radius();

    initial_mean_anomaly_ = el.mean_anomaly;
    noise_rng_ = make_rng(noise_seed, 1);
    steps_taken_ = 0;
    done_ = false;
    return normalize_observation(state_, config_);
}

Observation SatelliteEnv::reset_episode(std::uint64_t seed) {
    Rng rng = make_rng(seed, 0);
    std::uniform_real_distribution<double> uniform(0.0, 2.0 * std::numbers::pi);
    return start_episode(uniform(rng), seed);
}

Observation SatelliteEnv::reset_with_mean_anomaly(double mean_anomaly, std::uint64_t noise_seed) {
    return start_episode(mean_anomaly, noise_seed);
}

StepOutcome SatelliteEnv::step_episode(const Vec3& action) {
    if (done_) throw UsageError("SatelliteEnv::step called on a finished episode");
    if (!std::isfinite(action.x) || !std::isfinite(action.y) || !std::isfinite(action.z))
        throw UsageError("SatelliteEnv::step: non-finite action");

    const forces::ThrustCommand cmd = forces::ThrustCommand::clamped(action);

    bool exhausted = false;
    try {
        state_ = propagate::propagate_step(state_, cmd, config_.dynamics, config_.integrator,
                                           config_.dt, noise_rng_);
    } catch (const propagate::PropellantExhaustedError& e) {
        state_ = e.last_state;
        exhausted = true;
    }
    ++steps_taken_;

    const astro::OrbitalElements osc = astro::cartesian_to_elements(
        state_.position, state_.velocity, config_.dynamics.constants.mu_earth);

    StepOutcome out;
    out.info.apocenter_radius = osc.apocenter_radius();
    out.info.pericenter_radius = osc.pericenter_radius();
    out.info.mass = state_.mass;
    out.info.state = state_;
    out.done = exhausted || steps_taken_ >= config_.n_steps;
    if (out.done) {
        out.reward = terminal_reward(config_, out.info.pericenter_radius - initial_rp_,
                                     out.info.apocenter_radius - initial_ra_,
                                     state_.mass - config_.m0);
        done_ = true;
    }
    out.observation = normalize_observation(state_, config_);
    return out;
}

std::vector<double> SatelliteEnv::reset(std::uint64_t seed) {
    const Observation obs = reset_episode(seed);
    return std::vector<double>(obs.begin(), obs.end());
}

StepResult SatelliteEnv::step(const std::vector<double>& action) {
    if (action.size() != 3) throw UsageError("SatelliteEnv::step: action must have 3 components");
    const StepOutcome outcome = step_episode({action[0], action[1], action[2]});
    StepResult result;
    result.observation.assign(outcome.observation.begin(), outcome.observation.end());
    result.reward = outcome.reward;
    result.done = outcome.done;
    return result;
}

}  // namespace periraise::env
