#include "ephemeris.hpp"

#include <cmath>
#include <numbers>

namespace periraise::ephem {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kDegToRad = kPi / 180.0;
constexpr double kArcsecToRad = kDegToRad / 3600.0;
constexpr double kObliquity = 23.43929111 * kDegToRad;  // mean obliquity at J2000

double wrap(double angle) {
    double a = std::fmod(angle, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    return a;
}

Vec3 ecliptic_to_equatorial(const Vec3& v) {
    const double ce = std::cos(kObliquity);
    const double se = std::sin(kObliquity);
    return {v.x, ce * v.y - se * v.z, se * v.y + ce * v.z};
}

}  // namespace

Vec3 sun_position(const astro::Epoch& epoch) {
    const double t = epoch.j2000_centuries();

    const double mean_anom = wrap((357.5256 + 35999.049 * t) * kDegToRad);
    const double lon = wrap((282.9400 + 357.5256 + 35999.049 * t) * kDegToRad +
                            6892.0 * kArcsecToRad * std::sin(mean_anom) +
                            72.0 * kArcsecToRad * std::sin(2.0 * mean_anom));
    const double dist =
        (149.619 - 2.499 * std::cos(mean_anom) - 0.021 * std::cos(2.0 * mean_anom)) * 1.0e6;  // km

    const Vec3 ecliptic{dist * std::cos(lon), dist * std::sin(lon), 0.0};
    return ecliptic_to_equatorial(ecliptic);
}

Vec3 moon_position(const astro::Epoch& epoch) {
    const double t = epoch.j2000_centuries();

    const double l0 = wrap((218.31617 + 481267.88088 * t) * kDegToRad);  // mean longitude
    const double l = wrap((134.96292 + 477198.86753 * t) * kDegToRad);   // mean anomaly
    const double lp = wrap((357.52543 + 35999.04944 * t) * kDegToRad);   // Sun mean anomaly
    const double f = wrap((93.27283 + 483202.01873 * t) * kDegToRad);    // argument of latitude
    const double d = wrap((297.85027 + 445267.11135 * t) * kDegToRad);   // mean elongation

    const double dlon = 22640.0 * std::sin(l) + 769.0 * std::sin(2.0 * l) -
                        4586.0 * std::sin(l - 2.0 * d) + 2370.0 * std::sin(2.0 * d) -
                        668.0 * std::sin(lp) - 412.0 * std::sin(2.0 * f) -
                        212.0 * std::sin(2.0 * l - 2.0 * d) - 206.0 * std::sin(l + lp - 2.0 * d) +
                        192.0 * std::sin(l + 2.0 * d) - 165.0 * std::sin(lp - 2.0 * d) +
                        148.0 * std::sin(l - lp) - 125.0 * std::sin(d) - 110.0 * std::sin(l + lp) -
                        55.0 * std::sin(2.0 * f - 2.0 * d);
    const double lon = l0 + dlon * kArcsecToRad;

    const double arg_lat =
        f + (dlon + 412.0 * std::sin(2.0 * f) + 541.0 * std::sin(lp)) * kArcsecToRad;
    const double dlat = -526.0 * std::sin(f - 2.0 * d) + 44.0 * std::sin(l + f - 2.0 * d) -
                        31.0 * std::sin(-l + f - 2.0 * d) - 25.0 * std::sin(-2.0 * l + f) -
                        23.0 * std::sin(lp + f - 2.0 * d) + 21.0 * std::sin(-l + f) +
                        11.0 * std::sin(-lp + f - 2.0 * d);
    const double lat = (18520.0 * std::sin(arg_lat) + dlat) * kArcsecToRad;

    const double dist = 385000.0 - 20905.0 * std::cos(l) - 3699.0 * std::cos(2.0 * d - l) -
                        2956.0 * std::cos(2.0 * d) - 570.0 * std::cos(2.0 * l) +
                        246.0 * std::cos(2.0 * l - 2.0 * d) - 205.0 * std::cos(lp - 2.0 * d) -
                        171.0 * std::cos(l + 2.0 * d) - 152.0 * std::cos(l + lp - 2.0 * d);  // km

    const double cb = std::cos(lat);
    const Vec3 ecliptic{dist * cb * std::cos(lon), dist * cb * std::sin(lon),
                        dist * std::sin(lat)};
    return ecliptic_to_equatorial(ecliptic);
}

double gmst(const astro::Epoch& epoch) {
    const double days = epoch.julian_date() - 2451545.0;
    return wrap((280.46061837 + 360.98564736629 * days) * kDegToRad);
}

Vec3 gcrf_to_earth_fixed(const Vec3& v, const astro::Epoch& epoch) {
    const double theta = gmst(epoch);
    const double c = std::cos(theta), s = std::sin(theta);
    return {c * v.x + s * v.y, -s * v.x + c * v.y, v.z};
}

Vec3 earth_fixed_to_gcrf(const Vec3& v, const astro::Epoch& epoch) {
    const double theta = gmst(epoch);
    const double c = std::cos(theta), s = std::sin(theta);
    return {c * v.x - s * v.y, s * v.x + c * v.y, v.z};
}

}  // namespace periraise::ephem
