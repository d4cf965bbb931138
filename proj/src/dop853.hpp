#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>

#include "dop853_tableau.hpp"
#include "errors.hpp"

namespace periraise::ode {

template <std::size_t N>
using State = std::array<double, N>;

template <std::size_t N>
struct Tolerances {
    State<N> abs_tol{};
    double rel_tol = 1e-12;
};

struct StepControl {
    double min_step = 1.0;
    double max_step = 1000.0;
    double initial_step = 100.0;
    double safety = 0.9;
    double min_factor = 0.2;
    double max_factor = 10.0;
};

// Adaptive Dormand-Prince 8(5,3). The 12-stage 8th-order solution is
// propagated; step control combines the embedded 5th- and 3rd-order error
// estimates the way Hairer's dop853 does. `on_accept(t, y)` fires after every
// accepted step (it may throw to abort). The final step is truncated to land
// on t_start + duration exactly.
template <std::size_t N, typename Rhs, typename OnAccept>
State<N> integrate(Rhs&& rhs, double t_start, State<N> y, double duration,
                   const Tolerances<N>& tol, const StepControl& ctl, OnAccept&& on_accept) {
    constexpr int stages = dop853::kStages;
    constexpr double error_exponent = -1.0 / 8.0;

    std::array<State<N>, stages + 1> k;
    State<N> y_stage, y_new;

    double t = 0.0;  // elapsed within [0, duration]
    double h = std::clamp(ctl.initial_step, ctl.min_step, std::min(ctl.max_step, duration));
    int rejects_in_a_row = 0;

    while (t < duration) {
        const double remaining = duration - t;
        const bool last = h >= remaining;
        if (last) h = remaining;

        rhs(t_start + t, y, k[0]);
        for (int i = 1; i < stages; ++i) {
            y_stage = y;
            for (int j = 0; j < i; ++j) {
                const double a = dop853::kA[i][j];
                if (a == 0.0) continue;
                for (std::size_t n = 0; n < N; ++n) y_stage[n] += h * a * k[j][n];
            }
            rhs(t_start + t + dop853::kC[i] * h, y_stage, k[i]);
        }
        y_new = y;
        for (int j = 0; j < stages; ++j) {
            const double b = dop853::kB[j];
            if (b == 0.0) continue;
            for (std::size_t n = 0; n < N; ++n) y_new[n] += h * b * k[j][n];
        }
        rhs(t_start + t + h, y_new, k[stages]);

        double err5 = 0.0, err3 = 0.0;
        for (std::size_t n = 0; n < N; ++n) {
            const double scale =
                tol.abs_tol[n] + tol.rel_tol * std::max(std::abs(y[n]), std::abs(y_new[n]));
            double e5 = 0.0, e3 = 0.0;
            for (int j = 0; j <= stages; ++j) {
                e5 += dop853::kE5[j] * k[j][n];
                e3 += dop853::kE3[j] * k[j][n];
            }
            err5 += (e5 / scale) * (e5 / scale);
            err3 += (e3 / scale) * (e3 / scale);
        }
        double error_norm = 0.0;
        if (err5 > 0.0 || err3 > 0.0) {
            const double denom = err5 + 0.01 * err3;
            error_norm = std::abs(h) * err5 / std::sqrt(denom * static_cast<double>(N));
        }
        if (!std::isfinite(error_norm)) error_norm = std::numeric_limits<double>::infinity();

        if (error_norm <= 1.0) {
            t = last ? duration : t + h;
            y = y_new;
            on_accept(t_start + t, y);

            double factor = ctl.max_factor;
            if (error_norm > 0.0)
                factor = std::min(ctl.max_factor,
                                  ctl.safety * std::pow(error_norm, error_exponent));
            if (rejects_in_a_row > 0) factor = std::min(1.0, factor);
            h = std::clamp(h * factor, ctl.min_step, ctl.max_step);
            rejects_in_a_row = 0;
        } else {
            if (h <= ctl.min_step)
                throw PropagationError("dop853: step-size underflow at " + std::to_string(h) +
                                       " s with failing error estimate");
            double factor = ctl.min_factor;
            if (std::isfinite(error_norm))
                factor = std::max(ctl.min_factor,
                                  ctl.safety * std::pow(error_norm, error_exponent));
            h = std::max(h * factor, ctl.min_step);
            if (++rejects_in_a_row > 200)
                throw PropagationError("dop853: too many consecutive step rejections");
        }
    }
    return y;
}

}  // namespace periraise::ode
