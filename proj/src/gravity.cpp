#include "gravity.hpp"

#include <cmath>
#include <cstddef>
#include <map>
#include <sstream>

#include "ephemeris.hpp"
#include "errors.hpp"

namespace periraise::gravity {

namespace {

// sqrt((2 - delta_0m) * (2n+1) * (n-m)! / (n+m)!)
double denormalization_factor(int n, int m) {
    double ratio = 1.0;  // (n+m)! / (n-m)!
    for (int k = n - m + 1; k <= n + m; ++k) ratio *= k;
    const double delta = (m == 0) ? 1.0 : 2.0;
    return std::sqrt(delta * (2 * n + 1) / ratio);
}

// Cunningham V/W recursion up to degree n_max (inclusive) in Earth-fixed
// coordinates. v and w are triangular, index n*(n+1)/2 + m.
void compute_vw(const Vec3& r_bf, double ref_radius, int n_max, std::vector<double>& v,
                std::vector<double>& w) {
    const auto idx = [](int n, int m) { return static_cast<std::size_t>(n) * (n + 1) / 2 + m; };
    const std::size_t count = static_cast<std::size_t>(n_max + 1) * (n_max + 2) / 2;
    v.assign(count, 0.0);
    w.assign(count, 0.0);

    const double r2 = r_bf.norm2();
    const double xf = r_bf.x * ref_radius / r2;
    const double yf = r_bf.y * ref_radius / r2;
    const double zf = r_bf.z * ref_radius / r2;
    const double rf = ref_radius * ref_radius / r2;

    v[idx(0, 0)] = ref_radius / std::sqrt(r2);
    w[idx(0, 0)] = 0.0;

    for (int m = 0; m <= n_max; ++m) {
        if (m > 0) {
            // diagonal
            v[idx(m, m)] = (2 * m - 1) * (xf * v[idx(m - 1, m - 1)] - yf * w[idx(m - 1, m - 1)]);
            w[idx(m, m)] = (2 * m - 1) * (xf * w[idx(m - 1, m - 1)] + yf * v[idx(m - 1, m - 1)]);
        }
        for (int n = m + 1; n <= n_max; ++n) {
            double vv = (2 * n - 1) * zf * v[idx(n - 1, m)];
            double ww = (2 * n - 1) * zf * w[idx(n - 1, m)];
            if (n - 2 >= m) {
                vv -= (n + m - 1) * rf * v[idx(n - 2, m)];
                ww -= (n + m - 1) * rf * w[idx(n - 2, m)];
            }
            v[idx(n, m)] = vv / (n - m);
            w[idx(n, m)] = ww / (n - m);
        }
    }
}

void check_truncation(const GravityCoefficients& coeffs, const Vec3& position, int& degree,
                      int& order) {
    if (degree < 0 || order < 0 || order > degree)
        throw UsageError("harmonics: invalid truncation (need degree >= order >= 0)");
    if (degree > coeffs.max_degree()) degree = coeffs.max_degree();
    if (order > coeffs.max_order()) order = coeffs.max_order();
    if (position.norm2() <= coeffs.reference_radius() * coeffs.reference_radius())
        throw UsageError("harmonics: position inside the reference sphere");
}

}  // namespace

GravityCoefficients::GravityCoefficients(int max_degree, int max_order, std::vector<double> cbar,
                                         std::vector<double> sbar, double reference_radius,
                                         double gm)
    : max_degree_(max_degree),
      max_order_(max_order),
      reference_radius_(reference_radius),
      gm_(gm),
      cbar_(std::move(cbar)),
      sbar_(std::move(sbar)) {
    const std::size_t count = static_cast<std::size_t>(max_degree_ + 1) * (max_degree_ + 2) / 2;
    if (cbar_.size() != count || sbar_.size() != count)
        throw UsageError("GravityCoefficients: triangular array size mismatch");
    c_.resize(count);
    s_.resize(count);
    for (int n = 0; n <= max_degree_; ++n) {
        for (int m = 0; m <= n; ++m) {
            const double f = denormalization_factor(n, m);
            c_[index(n, m)] = f * cbar_[index(n, m)];
            s_[index(n, m)] = f * sbar_[index(n, m)];
        }
    }
}

GravityCoefficients parse_gravity_coefficients(const std::string& text, int truncate_degree,
                                               int truncate_order, double reference_radius,
                                               double gm) {
    std::map<std::pair<int, int>, std::pair<double, double>> rows;
    std::istringstream stream(text);
    std::string line;
    int line_no = 0;
    int seen_degree = -1, seen_order = -1;

    while (std::getline(stream, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::string tag;
        if (!(fields >> tag)) continue;  // blank
        if (tag != "gfc")
            throw ParseError("gravity line " + std::to_string(line_no) + ": expected 'gfc' tag");
        int n, m;
        double cb, sb;
        if (!(fields >> n >> m >> cb >> sb))
            throw ParseError("gravity line " + std::to_string(line_no) + ": malformed fields");
        std::string extra;
        if (fields >> extra)
            throw ParseError("gravity line " + std::to_string(line_no) + ": trailing fields");
        if (n < 0 || m < 0 || m > n)
            throw ParseError("gravity line " + std::to_string(line_no) + ": bad (n, m)");
        if (truncate_degree >= 0 && n > truncate_degree) continue;
        if (truncate_order >= 0 && m > truncate_order) continue;
        if (!rows.emplace(std::make_pair(n, m), std::make_pair(cb, sb)).second)
            throw ParseError("gravity line " + std::to_string(line_no) + ": duplicate (n, m)");
        seen_degree = std::max(seen_degree, n);
        seen_order = std::max(seen_order, m);
    }
    if (seen_degree < 2) throw ParseError("gravity file: no coefficients of degree >= 2");

    const int max_degree = seen_degree;
    const int max_order = seen_order;
    const std::size_t count = static_cast<std::size_t>(max_degree + 1) * (max_degree + 2) / 2;
    std::vector<double> cbar(count, 0.0), sbar(count, 0.0);
    cbar[0] = 1.0;  // central term; degree 1 identically zero

    for (int n = 2; n <= max_degree; ++n) {
        for (int m = 0; m <= std::min(n, max_order); ++m) {
            const auto it = rows.find({n, m});
            if (it == rows.end())
                throw ParseError("gravity file: missing coefficient (" + std::to_string(n) + ", " +
                                 std::to_string(m) + ")");
            const std::size_t i = static_cast<std::size_t>(n) * (n + 1) / 2 + m;
            cbar[i] = it->second.first;
            sbar[i] = it->second.second;
        }
    }
    // explicit (0,0)/(1,m) rows, if present, must agree with the fixed values
    if (auto it = rows.find({0, 0}); it != rows.end() && it->second.first != 1.0)
        throw ParseError("gravity file: C(0,0) must be 1");

    return GravityCoefficients(max_degree, max_order, std::move(cbar), std::move(sbar),
                               reference_radius, gm);
}

Vec3 harmonics_accel(const Vec3& position_gcrf, const GravityCoefficients& coeffs, int degree,
                     int order, const astro::Epoch& epoch) {
    check_truncation(coeffs, position_gcrf, degree, order);
    if (degree == 0) {
        const double r = position_gcrf.norm();
        return position_gcrf * (-coeffs.gm() / (r * r * r));
    }

    const auto idx = [](int n, int m) { return static_cast<std::size_t>(n) * (n + 1) / 2 + m; };
    const Vec3 r_bf = ephem::gcrf_to_earth_fixed(position_gcrf, epoch);

    std::vector<double> v, w;
    compute_vw(r_bf, coeffs.reference_radius(), degree + 1, v, w);

    double ax = 0.0, ay = 0.0, az = 0.0;
    for (int n = 0; n <= degree; ++n) {
        if (n == 1) continue;  // degree-1 terms are zero
        for (int m = 0; m <= std::min(n, order); ++m) {
            const double cnm = coeffs.c(n, m);
            const double snm = coeffs.s(n, m);
            if (cnm == 0.0 && snm == 0.0) continue;
            if (m == 0) {
                ax += -cnm * v[idx(n + 1, 1)];
                ay += -cnm * w[idx(n + 1, 1)];
            } else {
                const double fac = (n - m + 2.0) * (n - m + 1.0);
                ax += 0.5 * (-cnm * v[idx(n + 1, m + 1)] - snm * w[idx(n + 1, m + 1)] +
                             fac * (cnm * v[idx(n + 1, m - 1)] + snm * w[idx(n + 1, m - 1)]));
                ay += 0.5 * (-cnm * w[idx(n + 1, m + 1)] + snm * v[idx(n + 1, m + 1)] +
                             fac * (-cnm * w[idx(n + 1, m - 1)] + snm * v[idx(n + 1, m - 1)]));
            }
            az += (n - m + 1.0) * (-cnm * v[idx(n + 1, m)] - snm * w[idx(n + 1, m)]);
        }
    }

    const double scale = coeffs.gm() / (coeffs.reference_radius() * coeffs.reference_radius());
    const Vec3 accel_bf{scale * ax, scale * ay, scale * az};
    return ephem::earth_fixed_to_gcrf(accel_bf, epoch);
}

double harmonics_potential(const Vec3& position_gcrf, const GravityCoefficients& coeffs,
                           int degree, int order, const astro::Epoch& epoch) {
    check_truncation(coeffs, position_gcrf, degree, order);
    if (degree == 0) return coeffs.gm() / position_gcrf.norm();

    const auto idx = [](int n, int m) { return static_cast<std::size_t>(n) * (n + 1) / 2 + m; };
    const Vec3 r_bf = ephem::gcrf_to_earth_fixed(position_gcrf, epoch);

    std::vector<double> v, w;
    compute_vw(r_bf, coeffs.reference_radius(), degree, v, w);

    double sum = 0.0;
    for (int n = 0; n <= degree; ++n) {
        if (n == 1) continue;
        for (int m = 0; m <= std::min(n, order); ++m) {
            sum += coeffs.c(n, m) * v[idx(n, m)] + coeffs.s(n, m) * w[idx(n, m)];
        }
    }
    return coeffs.gm() / coeffs.reference_radius() * sum;
}

}  // namespace periraise::gravity
