#include "astro.hpp"

#include <cmath>
#include <numbers>

#include "errors.hpp"

namespace periraise::astro {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSingularTol = 1e-11;  // e or sin(i) below this: angle chain degenerates
}  // namespace

double wrap_two_pi(double angle) {
    double a = std::fmod(angle, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    // fmod can land exactly on 2*pi after the correction when angle is a tiny negative
    if (a >= kTwoPi) a -= kTwoPi;
    return a;
}

double solve_kepler(double mean_anomaly, double e) {
    if (!(e >= 0.0 && e < 1.0)) throw UsageError("solve_kepler: eccentricity must be in [0, 1)");
    const double m = wrap_two_pi(mean_anomaly);

    // The root is unique and lies in [m - e, m + e]; f is monotone increasing.
    double lo = m - e;
    double hi = m + e;
    double ecc = m + e * std::sin(m);

    for (int it = 0; it < 100; ++it) {
        const double f = ecc - e * std::sin(ecc) - m;
        if (std::abs(f) < 1e-14) return ecc;
        if (f > 0.0) {
            hi = ecc;
        } else {
            lo = ecc;
        }
        const double fprime = 1.0 - e * std::cos(ecc);
        double next = ecc - f / fprime;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        ecc = next;
    }
    throw Error("solve_kepler: no convergence (defect)");
}

void elements_to_cartesian(const OrbitalElements& el, double mu, Vec3& position, Vec3& velocity) {
    if (!(el.a > 0.0)) throw UsageError("elements_to_cartesian: semi-major axis must be positive");
    const double ecc = solve_kepler(el.mean_anomaly, el.e);

    const double ce = std::cos(ecc);
    const double se = std::sin(ecc);
    const double beta = std::sqrt(1.0 - el.e * el.e);  // b/a
    const double r_mag = el.a * (1.0 - el.e * ce);

    // perifocal frame: P towards pericenter, Q 90 deg ahead in the orbit plane
    const double xp = el.a * (ce - el.e);
    const double yp = el.a * beta * se;
    const double vfac = std::sqrt(mu * el.a) / r_mag;
    const double vxp = -vfac * se;
    const double vyp = vfac * beta * ce;

    const double co = std::cos(el.argp), so = std::sin(el.argp);
    const double cO = std::cos(el.raan), sO = std::sin(el.raan);
    const double ci = std::cos(el.i), si = std::sin(el.i);

    const Vec3 p_hat{cO * co - sO * so * ci, sO * co + cO * so * ci, so * si};
    const Vec3 q_hat{-cO * so - sO * co * ci, -sO * so + cO * co * ci, co * si};

    position = p_hat * xp + q_hat * yp;
    velocity = p_hat * vxp + q_hat * vyp;
}

OrbitalElements cartesian_to_elements(const Vec3& position, const Vec3& velocity, double mu) {
    const double r = position.norm();
    const double v2 = velocity.norm2();
    const double energy = 0.5 * v2 - mu / r;
    if (energy >= 0.0) throw UnboundOrbitError("cartesian_to_elements: orbit is not bound (energy >= 0)");

    const Vec3 h = position.cross(velocity);
    const double h_mag = h.norm();
    const Vec3 h_hat = h / h_mag;
    const double rv = position.dot(velocity);

    const Vec3 e_vec = (position * (v2 - mu / r) - velocity * rv) / mu;
    const double e = e_vec.norm();
    const double a = -mu / (2.0 * energy);
    const double inc = std::atan2(std::hypot(h.x, h.y), h.z);

    const Vec3 node{-h.y, h.x, 0.0};  // z_hat x h
    const double n_mag = node.norm();

    double raan, argp, true_anom;
    const bool equatorial = n_mag < kSingularTol * h_mag;
    const bool circular = e < kSingularTol;

    if (equatorial) {
        // node undefined: measure in-plane angles from the x axis
        raan = 0.0;
        if (circular) {
            argp = 0.0;
            true_anom = std::atan2(h_hat.dot(Vec3{1, 0, 0}.cross(position)), position.x);
        } else {
            argp = std::atan2(h_hat.dot(Vec3{1, 0, 0}.cross(e_vec)), e_vec.x);
            true_anom = std::atan2(h_hat.dot(e_vec.cross(position)), e_vec.dot(position));
        }
    } else {
        raan = std::atan2(node.y, node.x);
        if (circular) {
            argp = 0.0;
            // argument of latitude stands in for the anomaly
            true_anom = std::atan2(h_hat.dot(node.cross(position)), node.dot(position));
        } else {
            argp = std::atan2(h_hat.dot(node.cross(e_vec)), node.dot(e_vec));
            true_anom = std::atan2(h_hat.dot(e_vec.cross(position)), e_vec.dot(position));
        }
    }

    // eccentric then mean anomaly
    const double ecc_anom =
        std::atan2(std::sqrt(1.0 - e * e) * std::sin(true_anom), e + std::cos(true_anom));
    const double mean_anom = ecc_anom - e * std::sin(ecc_anom);

    OrbitalElements el;
    el.a = a;
    el.e = e;
    el.i = inc;
    el.raan = wrap_two_pi(raan);
    el.argp = wrap_two_pi(argp);
    el.mean_anomaly = wrap_two_pi(mean_anom);
    return el;
}

double orbital_period(double a, double mu) {
    if (!(a > 0.0)) throw UsageError("orbital_period: semi-major axis must be positive");
    return kTwoPi * std::sqrt(a * a * a / mu);
}

}  // namespace periraise::astro
