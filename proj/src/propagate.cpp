#include "propagate.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "dop853.hpp"

namespace periraise::propagate {

namespace {

using State7 = ode::State<7>;

State7 pack(const astro::StateVector& s) {
    return {s.position.x, s.position.y, s.position.z,
            s.velocity.x, s.velocity.y, s.velocity.z, s.mass};
}

astro::StateVector unpack(double seconds_since_t0, const State7& y) {
    astro::StateVector s;
    s.epoch.seconds_since_t0 = seconds_since_t0;
    s.position = {y[0], y[1], y[2]};
    s.velocity = {y[3], y[4], y[5]};
    s.mass = y[6];
    return s;
}

Vec3 draw_noise(const forces::DynamicsProfile& profile, Rng& rng) {
    if (profile.thruster_noise_stddev <= 0.0) return {0.0, 0.0, 0.0};
    std::normal_distribution<double> dist(0.0, profile.thruster_noise_stddev);
    const double x = dist(rng);
    const double y = dist(rng);
    const double z = dist(rng);
    return {x, y, z};
}

}  // namespace

astro::StateVector propagate_with_noise(const astro::StateVector& state,
                                        const forces::ThrustCommand& cmd,
                                        const forces::Dynamics& dynamics,
                                        const IntegratorConfig& config, double duration,
                                        const Vec3& thruster_noise) {
    if (!(duration > 0.0)) throw UsageError("propagate: duration must be positive");
    if (!(state.mass > 0.0)) throw UsageError("propagate: non-positive mass");

    const forces::ThrustCommand clamped = forces::ThrustCommand::clamped(cmd.normalized_force);

    const auto rhs = [&](double t_abs, const State7& y, State7& dydt) {
        const astro::StateVector s = unpack(t_abs, y);
        const forces::AccelResult res =
            forces::total_accel(s, clamped, dynamics.profile, dynamics.satellite,
                                dynamics.gravity.get(), dynamics.constants, thruster_noise);
        dydt[0] = y[3];
        dydt[1] = y[4];
        dydt[2] = y[5];
        dydt[3] = res.accel.x;
        dydt[4] = res.accel.y;
        dydt[5] = res.accel.z;
        dydt[6] = res.mdot;
    };

    ode::Tolerances<7> tol;
    tol.abs_tol = {config.abs_tol_position, config.abs_tol_position, config.abs_tol_position,
                   config.abs_tol_velocity, config.abs_tol_velocity, config.abs_tol_velocity,
                   config.abs_tol_mass};
    tol.rel_tol = config.rel_tol;

    ode::StepControl ctl;
    ctl.min_step = config.min_step;
    ctl.max_step = config.max_step;
    ctl.initial_step = config.initial_step;

    // The flow rate is constant across the step (zero-order hold, no mass in
    // the expression), so the burn-out time is known up front. Stop well
    // short of empty rather than integrating towards the F/m pole; the 10%
    // floor stands in for the unmodeled dry mass.
    const double mdot =
        forces::thrust_accel_and_mdot(clamped, dynamics.satellite, state.mass, thruster_noise,
                                      dynamics.constants.g0)
            .mdot;
    if (mdot < 0.0) {
        const double burn_time = (state.mass * 0.9) / (-mdot);
        if (burn_time < duration) {
            const State7 y_dry = ode::integrate<7>(rhs, state.epoch.seconds_since_t0, pack(state),
                                                   burn_time, tol, ctl, [](double, const State7&) {});
            throw PropellantExhaustedError(
                unpack(state.epoch.seconds_since_t0 + burn_time, y_dry));
        }
    }

    const State7 y_end = ode::integrate<7>(rhs, state.epoch.seconds_since_t0, pack(state),
                                           duration, tol, ctl, [](double, const State7&) {});
    return unpack(state.epoch.seconds_since_t0 + duration, y_end);
}

astro::StateVector propagate_step(const astro::StateVector& state, const forces::ThrustCommand& cmd,
                                  const forces::Dynamics& dynamics, const IntegratorConfig& config,
                                  double duration, Rng& rng) {
    return propagate_with_noise(state, cmd, dynamics, config, duration,
                                draw_noise(dynamics.profile, rng));
}

std::vector<astro::StateVector> dense_sample(const astro::StateVector& state,
                                             const forces::ThrustCommand& cmd,
                                             const forces::Dynamics& dynamics,
                                             const IntegratorConfig& config, double duration,
                                             int n_samples, Rng& rng) {
    if (n_samples < 2) throw UsageError("dense_sample: need at least 2 samples");
    const Vec3 noise = draw_noise(dynamics.profile, rng);

    std::vector<astro::StateVector> out;
    out.reserve(n_samples);
    out.push_back(state);
    for (int i = 1; i < n_samples; ++i) {
        // equally spaced absolute targets; each segment re-derives its own span
        const double t_target = duration * static_cast<double>(i) / (n_samples - 1);
        const double t_prev = duration * static_cast<double>(i - 1) / (n_samples - 1);
        out.push_back(
            propagate_with_noise(out.back(), cmd, dynamics, config, t_target - t_prev, noise));
    }
    return out;
}

}  // namespace periraise::propagate
