#pragma once

#include <string>
#include <vector>

#include "astro.hpp"
#include "vec3.hpp"

namespace periraise::gravity {

// Normalized spherical-harmonic coefficients for the geopotential, triangular
// storage. (0,0) is fixed to 1 and degree 1 to 0 (geocentric frame); files
// start at degree 2 as usual.
class GravityCoefficients {
  public:
    GravityCoefficients(int max_degree, int max_order, std::vector<double> cbar,
                        std::vector<double> sbar, double reference_radius, double gm);

    int max_degree() const { return max_degree_; }
    int max_order() const { return max_order_; }
    double reference_radius() const { return reference_radius_; }
    double gm() const { return gm_; }

    double cbar(int n, int m) const { return cbar_[index(n, m)]; }
    double sbar(int n, int m) const { return sbar_[index(n, m)]; }
    // Unnormalized counterparts used by the recursion.
    double c(int n, int m) const { return c_[index(n, m)]; }
    double s(int n, int m) const { return s_[index(n, m)]; }

  private:
    static std::size_t index(int n, int m) {
        return static_cast<std::size_t>(n) * (n + 1) / 2 + m;
    }

    int max_degree_;
    int max_order_;
    double reference_radius_;
    double gm_;
    std::vector<double> cbar_, sbar_;
    std::vector<double> c_, s_;  // denormalized at construction
};

// Parses ICGEM-style text: lines `gfc n m Cbar Sbar`, `#` comments, blank
// lines allowed. Rows above the requested truncation are dropped; within it
// the triangle must be complete (no zero-fill) and duplicate (n,m) rows are
// rejected. Errors carry the offending line number.
// truncate_degree/order < 0 keep everything present.
GravityCoefficients parse_gravity_coefficients(const std::string& text, int truncate_degree = -1,
                                               int truncate_order = -1,
                                               double reference_radius = 6378.1363,
                                               double gm = 398600.4418);

// Acceleration (km/s^2, GCRF) of the truncated field, central term included;
// degree = order = 0 is exactly the point-mass field. Earth orientation is
// the uniform-GMST spin about +z. Throws for positions inside the reference
// sphere.
Vec3 harmonics_accel(const Vec3& position_gcrf, const GravityCoefficients& coeffs, int degree,
                     int order, const astro::Epoch& epoch);

// Potential (km^2/s^2) of the same truncated field; harmonics_accel is its
// gradient. Exposed for cross-checks.
double harmonics_potential(const Vec3& position_gcrf, const GravityCoefficients& coeffs,
                           int degree, int order, const astro::Epoch& epoch);

}  // namespace periraise::gravity
