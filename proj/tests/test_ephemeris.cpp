#include <algorithm>
#include <cmath>
#include <numbers>

#include <doctest.h>

#include "astro.hpp"
#include "ephemeris.hpp"

using namespace periraise;
using namespace periraise::ephem;

namespace {
astro::Epoch at_days(double days) { return astro::Epoch{days * 86400.0}; }

double angle_between(const Vec3& a, const Vec3& b) {
    return std::acos(std::clamp(a.dot(b) / (a.norm() * b.norm()), -1.0, 1.0));
}
}  // namespace

TEST_CASE("sun distance stays in the annual range") {
    for (double d = 0.0; d < 730.0; d += 11.0) {
        const double dist = sun_position(at_days(d)).norm();
        CHECK(dist > 1.47e8);
        CHECK(dist < 1.53e8);
    }
}

TEST_CASE("moon distance stays in the lunar range") {
    for (double d = 0.0; d < 60.0; d += 0.7) {
        const double dist = moon_position(at_days(d)).norm();
        CHECK(dist > 3.56e5);
        CHECK(dist < 4.07e5);
    }
}

TEST_CASE("sun direction repeats after one year") {
    const Vec3 a = sun_position(at_days(3.0));
    const Vec3 b = sun_position(at_days(3.0 + 365.25));
    CHECK(angle_between(a, b) < 3.0 * std::numbers::pi / 180.0);
}

TEST_CASE("moon direction roughly repeats after a sidereal month") {
    const Vec3 a = moon_position(at_days(1.0));
    const Vec3 b = moon_position(at_days(1.0 + 27.321662));
    CHECK(angle_between(a, b) < 15.0 * std::numbers::pi / 180.0);
}

TEST_CASE("moon stays near the ecliptic (inclination about 5 deg)") {
    for (double d = 0.0; d < 30.0; d += 1.0) {
        const Vec3 m = moon_position(at_days(d));
        // equatorial latitude bounded by obliquity + lunar inclination
        const double lat = std::asin(m.z / m.norm());
        CHECK(std::abs(lat) < 30.0 * std::numbers::pi / 180.0);
    }
}

TEST_CASE("gmst advances ~0.9856 deg per solar day beyond one rotation") {
    const double g0 = gmst(at_days(10.0));
    const double g1 = gmst(at_days(11.0));
    double delta = std::fmod(g1 - g0 + 4.0 * std::numbers::pi, 2.0 * std::numbers::pi);
    CHECK(delta == doctest::Approx(0.98564736629 * std::numbers::pi / 180.0).epsilon(1e-9));
}

TEST_CASE("earth-fixed rotation round-trips and preserves z and norm") {
    const astro::Epoch epoch{12345.0};
    const Vec3 v{1234.5, -9876.0, 4321.0};
    const Vec3 ef = gcrf_to_earth_fixed(v, epoch);
    const Vec3 back = earth_fixed_to_gcrf(ef, epoch);
    CHECK((back - v).norm() < 1e-9);
    CHECK(ef.z == v.z);
    CHECK(ef.norm() == doctest::Approx(v.norm()).epsilon(1e-14));
}
