#pragma once

#include <memory>

#include "astro.hpp"
#include "gravity.hpp"
#include "vec3.hpp"

namespace periraise::forces {

// Which acceleration sources are active. Training runs point mass only;
// evaluation runs the full Table-style set with a 16x16 field, Sun/Moon,
// SRP and 10% thruster noise.
struct DynamicsProfile {
    int harmonics_degree = 0;  // 0 = point mass only
    int harmonics_order = 0;
    bool third_body_sun = false;
    bool third_body_moon = false;
    bool srp = false;
    double thruster_noise_stddev = 0.0;  // fraction of the commanded force
};

struct SatelliteParams {
    double f_max_mn = 10.0;         // mN, per thruster pair
    double isp_s = 4000.0;          // s
    double area_m2 = 1.0;           // m^2
    double reflection_coeff = 2.0;  // [1, 2]
};

// Normalized force per GCRF axis, each component in [-1, 1].
struct ThrustCommand {
    Vec3 normalized_force;

    static ThrustCommand clamped(const Vec3& raw);
};

inline constexpr double kSolarPressure = 4.56e-6;       // N/m^2 at 1 AU
inline constexpr double kAstronomicalUnit = 1.495978707e8;  // km

Vec3 point_mass_accel(const Vec3& position, double mu);

// Tidal (differential) form: attraction on the satellite minus attraction on
// the Earth center.
Vec3 third_body_accel(const Vec3& position, const Vec3& body_position, double mu_body);

// Cannonball SRP with a cylindrical umbra; zero inside the shadow.
Vec3 srp_accel(const Vec3& position, const Vec3& sun_position, const SatelliteParams& params,
               double mass, double earth_radius);

struct ThrustResult {
    Vec3 accel;   // km/s^2
    double mdot;  // kg/s, <= 0
};

// Realized per-axis force f_k = cmd_k * f_max * (1 + noise_k). Mass flow uses
// the sum of per-axis magnitudes (one thruster pair per axis).
ThrustResult thrust_accel_and_mdot(const ThrustCommand& cmd, const SatelliteParams& params,
                                   double mass, const Vec3& noise, double g0);

struct AccelResult {
    Vec3 accel;
    double mdot;
};

// Sum of the contributions enabled by the profile. `coeffs` may be null when
// harmonics_degree is 0. `thruster_noise` is the per-step multiplicative
// error triple, already drawn (zero in training).
AccelResult total_accel(const astro::StateVector& state, const ThrustCommand& cmd,
                        const DynamicsProfile& profile, const SatelliteParams& params,
                        const gravity::GravityCoefficients* coeffs,
                        const astro::Constants& constants, const Vec3& thruster_noise);

}  // namespace periraise::forces
