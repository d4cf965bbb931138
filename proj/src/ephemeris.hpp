#pragma once

#include "astro.hpp"
#include "vec3.hpp"

namespace periraise::ephem {

// Low-precision analytic series (truncated lunisolar theory, ~0.1-0.3 deg).
// Geocentric GCRF positions in km; good enough for tidal and SRP magnitudes,
// not for navigation.
Vec3 sun_position(const astro::Epoch& epoch);
Vec3 moon_position(const astro::Epoch& epoch);

// Greenwich mean sidereal time, rad, from the linear IAU 1982-style model.
double gmst(const astro::Epoch& epoch);

// Rotates a GCRF vector into the Earth-fixed frame (uniform spin about +z,
// no polar motion) and back.
Vec3 gcrf_to_earth_fixed(const Vec3& v, const astro::Epoch& epoch);
Vec3 earth_fixed_to_gcrf(const Vec3& v, const astro::Epoch& epoch);

}  // namespace periraise::ephem
