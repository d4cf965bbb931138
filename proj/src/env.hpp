#pragma once

#include <array>
#include <cstdint>
#include <numbers>
#include <vector>

#include "astro.hpp"
#include "propagate.hpp"
#include "rng.hpp"

namespace periraise::env {

// Minimal episodic API (reset/step) so agents can drive any environment,
// including the test doubles.
struct StepResult {
    std::vector<double> observation;
    double reward = 0.0;
    bool done = false;
};

class EnvInterface {
  public:
    virtual ~EnvInterface() = default;
    virtual int observation_dim() const = 0;
    virtual int action_dim() const = 0;
    virtual std::vector<double> reset(std::uint64_t seed) = 0;
    virtual StepResult step(const std::vector<double>& action) = 0;
};

struct EpisodeConfig {
    double dt = 300.0;  // s
    int n_steps = 166;

    // reward weights; the pericenter/apocenter terms are per km, the mass
    // penalty per kg
    double w_rp = 0.1;
    double w_ra = 0.1;
    double w_m = 20.0;

    // initial orbit (mean anomaly drawn per episode)
    double ra0 = 11000.0;  // km
    double rp0 = 9000.0;   // km
    double i0 = std::numbers::pi / 3.0;
    double raan0 = 2.0 * std::numbers::pi / 3.0;
    double argp0 = 4.0 * std::numbers::pi / 3.0;
    double m0 = 100.0;  // kg

    // characteristic magnitudes for observation normalization
    double d_char = 22000.0;  // km, 2 * ra0
    double v_char = 8.0;      // km/s

    forces::Dynamics dynamics;
    propagate::IntegratorConfig integrator;

    double initial_a() const { return 0.5 * (ra0 + rp0); }
    double initial_e() const { return (ra0 - rp0) / (ra0 + rp0); }
};

using Observation = std::array<double, 8>;

struct StepInfo {
    double apocenter_radius = 0.0;  // km, osculating
    double pericenter_radius = 0.0;
    double mass = 0.0;
    astro::StateVector state;
};

struct StepOutcome {
    Observation observation{};
    double reward = 0.0;
    bool done = false;
    StepInfo info;
};

// Terminal reward on the deltas between the final and initial osculating
// state: w_rp * d_rp - w_ra * |d_ra| + w_m * d_m (d_m <= 0).
double terminal_reward(const EpisodeConfig& config, double delta_rp, double delta_ra,
                       double delta_m);

// [time, position/d_char, velocity/v_char, mass], every component clamped to
// [-1, 1]; time and mass are affine so both endpoints are hit.
Observation normalize_observation(const astro::StateVector& state, const EpisodeConfig& config);

class SatelliteEnv final : public EnvInterface {
  public:
    explicit SatelliteEnv(EpisodeConfig config);

    // M0 ~ U(0, 2*pi) from the seed; the same seed also derives the thruster
    // noise stream.
    Observation reset_episode(std::uint64_t seed);
    // Pins the initial mean anomaly (trajectory replay); noise_seed drives
    // only the thruster-error stream.
    Observation reset_with_mean_anomaly(double mean_anomaly, std::uint64_t noise_seed);

    StepOutcome step_episode(const Vec3& action);

    // EnvInterface
    int observation_dim() const override { return 8; }
    int action_dim() const override { return 3; }
    std::vector<double> reset(std::uint64_t seed) override;
    StepResult step(const std::vector<double>& action) override;

    const EpisodeConfig& config() const { return config_; }
    const astro::StateVector& state() const { return state_; }
    double initial_mean_anomaly() const { return initial_mean_anomaly_; }
    double initial_apocenter() const { return initial_ra_; }
    double initial_pericenter() const { return initial_rp_; }
    int steps_taken() const { return steps_taken_; }
    bool done() const { return done_; }

  private:
    Observation start_episode(double mean_anomaly, std::uint64_t noise_seed);

    EpisodeConfig config_;
    astro::StateVector state_;
    Rng noise_rng_;
    double initial_mean_anomaly_ = 0.0;
    double initial_ra_ = 0.0;
    double initial_rp_ = 0.0;
    int steps_taken_ = 0;
    bool done_ = true;  // must reset first
};

}  // namespace periraise::env
