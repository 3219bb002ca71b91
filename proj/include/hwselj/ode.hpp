#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>

#include "hwselj/errors.hpp"

namespace hwselj {

/// Classical fixed-step RK4 for a scalar IVP y' = f(x, y), integrating from
/// x0 to x1 in n equal steps. Returns y(x1).
template <typename F>
double integrate_rk4(F&& f, double x0, double x1, double y0, std::int64_t n) {
    const double h = (x1 - x0) / static_cast<double>(n);
    double x = x0;
    double y = y0;
    for (std::int64_t i = 0; i < n; ++i) {
        const double k1 = f(x, y);
        const double k2 = f(x + 0.5 * h, y + 0.5 * h * k1);
        const double k3 = f(x + 0.5 * h, y + 0.5 * h * k2);
        const double k4 = f(x + h, y + h * k3);
        y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        x = x0 + (i + 1) * h;
    }
    return y;
}

/// Embedded Cash-Karp 4(5) integrator with proportional step control.
/// Scalar IVP, per-step error kept below rel_tol * max(|y|, abs_scale).
template <typename F>
double integrate_rk45(F&& f, double x0, double x1, double y0, double rel_tol,
                      double abs_scale) {
    static constexpr double a2 = 1.0 / 5.0, a3 = 3.0 / 10.0, a4 = 3.0 / 5.0,
                            a5 = 1.0, a6 = 7.0 / 8.0;
    static constexpr double b21 = 1.0 / 5.0;
    static constexpr double b31 = 3.0 / 40.0, b32 = 9.0 / 40.0;
    static constexpr double b41 = 3.0 / 10.0, b42 = -9.0 / 10.0, b43 = 6.0 / 5.0;
    static constexpr double b51 = -11.0 / 54.0, b52 = 5.0 / 2.0,
                            b53 = -70.0 / 27.0, b54 = 35.0 / 27.0;
    static constexpr double b61 = 1631.0 / 55296.0, b62 = 175.0 / 512.0,
                            b63 = 575.0 / 13824.0, b64 = 44275.0 / 110592.0,
                            b65 = 253.0 / 4096.0;
    static constexpr double c1 = 37.0 / 378.0, c3 = 250.0 / 621.0,
                            c4 = 125.0 / 594.0, c6 = 512.0 / 1771.0;
    static constexpr double d1 = c1 - 2825.0 / 27648.0, d3 = c3 - 18575.0 / 48384.0,
                            d4 = c4 - 13525.0 / 55296.0, d5 = -277.0 / 14336.0,
                            d6 = c6 - 1.0 / 4.0;

    const double span = x1 - x0;
    if (span == 0.0) return y0;

    double x = x0;
    double y = y0;
    double h = span / 16.0;
    const double h_min = std::abs(span) * 1e-14;
    std::int64_t steps = 0;
    const std::int64_t max_steps = 100'000'000;

    while (x < x1) {
        if (x + h > x1) h = x1 - x;
        const double k1 = f(x, y);
        const double k2 = f(x + a2 * h, y + h * b21 * k1);
        const double k3 = f(x + a3 * h, y + h * (b31 * k1 + b32 * k2));
        const double k4 = f(x + a4 * h, y + h * (b41 * k1 + b42 * k2 + b43 * k3));
        const double k5 =
            f(x + a5 * h, y + h * (b51 * k1 + b52 * k2 + b53 * k3 + b54 * k4));
        const double k6 = f(x + a6 * h, y + h * (b61 * k1 + b62 * k2 + b63 * k3 +
                                                 b64 * k4 + b65 * k5));
        const double y5 = y + h * (c1 * k1 + c3 * k3 + c4 * k4 + c6 * k6);
        const double err =
            std::abs(h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6));
        const double scale = rel_tol * std::max(std::abs(y5), abs_scale);

        if (err <= scale || h <= h_min) {
            x += h;
            y = y5;
        }
        const double ratio = (err > 0.0) ? scale / err : 10.0;
        h *= std::clamp(0.9 * std::pow(ratio, 0.2), 0.2, 5.0);
        h = std::max(h, h_min);
        if (++steps > max_steps) {
            throw NonConvergenceError("adaptive integration exceeded step budget",
                                      err / std::max(std::abs(y), abs_scale));
        }
    }
    return y;
}

/// Richardson step-halving on fixed-step RK4: doubles the step count until two
/// successive refinements agree within rel_tol. Returns {value, achieved
/// relative difference}; throws NonConvergenceError when the refinement stalls.
template <typename F>
std::pair<double, double> integrate_rk4_refined(F&& f, double x0, double x1,
                                                double y0, double rel_tol,
                                                double abs_scale) {
    std::int64_t n = 64;
    double prev = integrate_rk4(f, x0, x1, y0, n);
    double achieved = std::numeric_limits<double>::infinity();
    const std::int64_t n_max = 1 << 22;
    while (n < n_max) {
        n *= 2;
        const double cur = integrate_rk4(f, x0, x1, y0, n);
        achieved = std::abs(cur - prev) / std::max(std::abs(cur), abs_scale);
        if (achieved <= rel_tol) return {cur, achieved};
        prev = cur;
    }
    throw NonConvergenceError("fixed-step refinement stalled at n=" +
                                  std::to_string(n) + " steps",
                              achieved);
}

}  // namespace hwselj
