#include "forces.hpp"

#include <algorithm>
#include <cmath>

#include "ephemeris.hpp"
#include "errors.hpp"

namespace periraise::forces {

ThrustCommand ThrustCommand::clamped(const Vec3& raw) {
    return ThrustCommand{Vec3{std::clamp(raw.x, -1.0, 1.0), std::clamp(raw.y, -1.0, 1.0),
                              std::clamp(raw.z, -1.0, 1.0)}};
}

Vec3 point_mass_accel(const Vec3& position, double mu) {
    const double r = position.norm();
    if (!(r > 0.0)) throw UsageError("point_mass_accel: zero position");
    return position * (-mu / (r * r * r));
}

Vec3 third_body_accel(const Vec3& position, const Vec3& body_position, double mu_body) {
    const Vec3 d = body_position - position;
    const double d3 = std::pow(d.norm(), 3);
    const double b3 = std::pow(body_position.norm(), 3);
    return d * (mu_body / d3) - body_position * (mu_body / b3);
}

Vec3 srp_accel(const Vec3& position, const Vec3& sun_position, const SatelliteParams& params,
               double mass, double earth_radius) {
    if (!(mass > 0.0)) throw UsageError("srp_accel: non-positive mass");

    // cylindrical umbra behind the Earth
    const Vec3 sun_hat = sun_position.normalized();
    const double along = position.dot(sun_hat);
    if (along < 0.0) {
        const Vec3 transverse = position - sun_hat * along;
        if (transverse.norm() < earth_radius) return {0.0, 0.0, 0.0};
    }

    const Vec3 d = position - sun_position;  // Sun -> satellite
    const double dist = d.norm();
    const double au_ratio = kAstronomicalUnit / dist;
    // N/m^2 * m^2 / kg = m/s^2; convert to km/s^2
    const double mag =
        kSolarPressure * params.reflection_coeff * params.area_m2 / mass * au_ratio * au_ratio *
        1e-3;
    return d * (mag / dist);
}

ThrustResult thrust_accel_and_mdot(const ThrustCommand& cmd, const SatelliteParams& params,
                                   double mass, const Vec3& noise, double g0) {
    if (!(mass > 0.0)) throw UsageError("thrust_accel_and_mdot: non-positive mass");

    const double f_max_newton = params.f_max_mn * 1e-3;
    const Vec3 force{cmd.normalized_force.x * f_max_newton * (1.0 + noise.x),
                     cmd.normalized_force.y * f_max_newton * (1.0 + noise.y),
                     cmd.normalized_force.z * f_max_newton * (1.0 + noise.z)};  // N

    const double throughput = std::abs(force.x) + std::abs(force.y) + std::abs(force.z);
    ThrustResult out;
    out.accel = force * (1e-3 / mass);  // N/kg = m/s^2 -> km/s^2
    out.mdot = -throughput / (params.isp_s * g0);
    return out;
}

AccelResult total_accel(const astro::StateVector& state, const ThrustCommand& cmd,
                        const DynamicsProfile& profile, const SatelliteParams& params,
                        const gravity::GravityCoefficients* coeffs,
                        const astro::Constants& constants, const Vec3& thruster_noise) {
    Vec3 accel;
    if (profile.harmonics_degree > 0) {
        if (coeffs == nullptr)
            throw UsageError("total_accel: harmonics requested without coefficients");
        accel = gravity::harmonics_accel(state.position, *coeffs, profile.harmonics_degree,
                                         profile.harmonics_order, state.epoch);
    } else {
        accel = point_mass_accel(state.position, constants.mu_earth);
    }

    if (profile.third_body_sun || profile.srp) {
        const Vec3 sun = ephem::sun_position(state.epoch);
        if (profile.third_body_sun)
            accel += third_body_accel(state.position, sun, constants.mu_sun);
        if (profile.srp)
            accel += srp_accel(state.position, sun, params, state.mass, constants.earth_radius);
    }
    if (profile.third_body_moon) {
        accel += third_body_accel(state.position, ephem::moon_position(state.epoch),
                                  constants.mu_moon);
    }

    const ThrustResult thrust =
        thrust_accel_and_mdot(cmd, params, state.mass, thruster_noise, constants.g0);
    accel += thrust.accel;
    return {accel, thrust.mdot};
}

}  // namespace periraise::forces
