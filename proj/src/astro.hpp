#pragma once

#include "vec3.hpp"

namespace periraise::astro {

// Scenario start: 2022-06-16 00:00:00 UTC. All epochs count seconds from it.
inline constexpr double kT0JulianDate = 2459746.5;
inline constexpr double kSecondsPerDay = 86400.0;

struct Epoch {
    double seconds_since_t0 = 0.0;

    double julian_date() const { return kT0JulianDate + seconds_since_t0 / kSecondsPerDay; }
    // Julian centuries of 36525 days since J2000.0 (JD 2451545.0).
    double j2000_centuries() const { return (julian_date() - 2451545.0) / 36525.0; }
};

struct Constants {
    double mu_earth = 398600.4418;     // km^3/s^2
    double g0 = 9.80665;               // m/s^2
    double earth_radius = 6378.137;    // km
    double mu_sun = 1.32712440018e11;  // km^3/s^2
    double mu_moon = 4902.800066;      // km^3/s^2
};

struct OrbitalElements {
    double a = 0.0;             // semi-major axis, km
    double e = 0.0;             // eccentricity
    double i = 0.0;             // inclination, rad
    double raan = 0.0;          // right ascension of ascending node, rad
    double argp = 0.0;          // argument of pericenter, rad
    double mean_anomaly = 0.0;  // rad

    double apocenter_radius() const { return a * (1.0 + e); }
    double pericenter_radius() const { return a * (1.0 - e); }
};

struct StateVector {
    Epoch epoch;
    Vec3 position;      // km, GCRF
    Vec3 velocity;      // km/s, GCRF
    double mass = 0.0;  // kg
};

// Wraps an angle into [0, 2*pi).
double wrap_two_pi(double angle);

// Solves E - e*sin(E) = M for the eccentric anomaly, e in [0, 1).
// Newton iteration seeded with M + e*sin(M), bisection fallback whenever the
// Newton step leaves the bracket [M-e, M+e].
double solve_kepler(double mean_anomaly, double e);

void elements_to_cartesian(const OrbitalElements& el, double mu, Vec3& position, Vec3& velocity);

// Throws UnboundOrbitError when the specific energy is non-negative.
// Near-singular geometry (e or i below 1e-11) reports argp resp. raan as zero
// and folds the undefined angle into the next one down the chain.
OrbitalElements cartesian_to_elements(const Vec3& position, const Vec3& velocity, double mu);

double orbital_period(double a, double mu);

}  // namespace periraise::astro
