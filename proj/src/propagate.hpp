#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "astro.hpp"
#include "errors.hpp"
#include "forces.hpp"
#include "gravity.hpp"
#include "rng.hpp"

namespace periraise::forces {

// Everything the right-hand side needs besides the state itself.
struct Dynamics {
    DynamicsProfile profile;
    SatelliteParams satellite;
    std::shared_ptr<const gravity::GravityCoefficients> gravity;  // null when degree 0
    astro::Constants constants;
};

}  // namespace periraise::forces

namespace periraise::propagate {

// Default tolerances keep the accumulated position error over a whole
// 5-orbit episode below the 1 m budget (the local estimate per step must sit
// well under it for that).
struct IntegratorConfig {
    double min_step = 1.0;     // s
    double max_step = 1000.0;  // s
    double initial_step = 100.0;
    double abs_tol_position = 1e-8;   // km
    double abs_tol_velocity = 1e-11;  // km/s
    double abs_tol_mass = 1e-12;      // kg
    double rel_tol = 1e-12;
};

struct PropellantExhaustedError : PropagationError {
    astro::StateVector last_state;  // last accepted state with positive mass

    explicit PropellantExhaustedError(const astro::StateVector& state)
        : PropagationError("propellant exhausted"), last_state(state) {}
};

// Integrates (position, velocity, mass) over `duration` seconds under the
// active dynamics with the command held constant (zero-order hold). When the
// profile carries thruster noise, one multiplicative error triple is drawn
// from `rng` at entry and frozen for the whole step.
astro::StateVector propagate_step(const astro::StateVector& state,
                                  const forces::ThrustCommand& cmd,
                                  const forces::Dynamics& dynamics, const IntegratorConfig& config,
                                  double duration, Rng& rng);

// Same dynamics and frozen noise over the whole span; returns n_samples
// states at equally spaced epochs, both endpoints included.
std::vector<astro::StateVector> dense_sample(const astro::StateVector& state,
                                             const forces::ThrustCommand& cmd,
                                             const forces::Dynamics& dynamics,
                                             const IntegratorConfig& config, double duration,
                                             int n_samples, Rng& rng);

// Deterministic core used by both entry points: noise supplied explicitly.
astro::StateVector propagate_with_noise(const astro::StateVector& state,
                                        const forces::ThrustCommand& cmd,
                                        const forces::Dynamics& dynamics,
                                        const IntegratorConfig& config, double duration,
                                        const Vec3& thruster_noise);

}  // namespace periraise::propagate
