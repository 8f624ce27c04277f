#pragma once

// Dormand-Prince 5(4) embedded Runge-Kutta pair with an elementary step-size
// controller (safety 0.9, growth clamped to [0.2, 5]).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

#include "seihrd/errors.hpp"

namespace seihrd {

struct Tolerances {
    double abs_tol = 1e-8;
    double rel_tol = 1e-6;
    /// Smallest admissible step (days) before the solve is declared failed.
    double min_step = 1e-12;

    /// abs_tol = 1e-8 * population, rel_tol = 1e-6.
    static Tolerances for_population(double population) { return {1e-8 * population, 1e-6, 1e-12}; }

    bool operator==(const Tolerances&) const = default;
};

namespace dopri {

template <std::size_t Dim>
using Vec = std::array<double, Dim>;

inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                        b6 = 11.0 / 84;
// 5th-order weights minus the embedded 4th-order weights.
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

template <std::size_t Dim>
struct StepResult {
    Vec<Dim> y;      // 5th-order solution
    Vec<Dim> error;  // difference to the embedded 4th-order solution
    Vec<Dim> k7;     // f(t + h, y), reusable as the next k1 (FSAL)
};

/// One step of size h from (t, y) given k1 = f(t, y).
template <std::size_t Dim, class F>
StepResult<Dim> step(F&& f, double t, const Vec<Dim>& y, const Vec<Dim>& k1, double h) {
    Vec<Dim> tmp;
    auto stage = [&](auto&& combine) {
        for (std::size_t i = 0; i < Dim; ++i) tmp[i] = y[i] + h * combine(i);
    };
    stage([&](std::size_t i) { return a21 * k1[i]; });
    const Vec<Dim> k2 = f(t + c2 * h, tmp);
    stage([&](std::size_t i) { return a31 * k1[i] + a32 * k2[i]; });
    const Vec<Dim> k3 = f(t + c3 * h, tmp);
    stage([&](std::size_t i) { return a41 * k1[i] + a42 * k2[i] + a43 * k3[i]; });
    const Vec<Dim> k4 = f(t + c4 * h, tmp);
    stage([&](std::size_t i) { return a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]; });
    const Vec<Dim> k5 = f(t + c5 * h, tmp);
    stage([&](std::size_t i) {
        return a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i];
    });
    const Vec<Dim> k6 = f(t + h, tmp);

    StepResult<Dim> out;
    for (std::size_t i = 0; i < Dim; ++i) {
        out.y[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    }
    out.k7 = f(t + h, out.y);
    for (std::size_t i = 0; i < Dim; ++i) {
        out.error[i] =
            h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * out.k7[i]);
    }
    return out;
}

/// RMS of the error scaled by abs_tol + rel_tol * max(|y|, |y_new|).
template <std::size_t Dim>
double error_norm(const Vec<Dim>& y, const StepResult<Dim>& s, const Tolerances& tol) {
    double acc = 0.0;
    for (std::size_t i = 0; i < Dim; ++i) {
        const double scale = tol.abs_tol + tol.rel_tol * std::max(std::abs(y[i]), std::abs(s.y[i]));
        const double r = s.error[i] / scale;
        acc += r * r;
    }
    return std::sqrt(acc / static_cast<double>(Dim));
}

/// Advances y from t to exactly t_end with adaptive steps that never pass t_end.
/// `h` carries the step-size proposal in and out. Throws IntegrationError on
/// step-size underflow or a non-finite state.
template <std::size_t Dim, class F>
void advance(F&& f, double& t, Vec<Dim>& y, double t_end, double& h, const Tolerances& tol) {
    constexpr double safety = 0.9, min_factor = 0.2, max_factor = 5.0;
    Vec<Dim> k1 = f(t, y);
    while (t < t_end) {
        const double remaining = t_end - t;
        const bool last = h >= remaining * (1.0 - 1e-12);
        const double h_try = last ? remaining : h;
        if (h_try < tol.min_step && !last) {
            throw IntegrationError("step size underflow", t);
        }
        const StepResult<Dim> s = step<Dim>(f, t, y, k1, h_try);
        const double err = error_norm<Dim>(y, s, tol);
        if (!std::isfinite(err)) {
            throw IntegrationError("non-finite state", t);
        }
        if (err <= 1.0) {
            t = last ? t_end : t + h_try;
            y = s.y;
            k1 = s.k7;
            const double factor = err == 0.0 ? max_factor : safety * std::pow(err, -0.2);
            // A short final step says nothing about the preferred step size.
            if (!last || h_try >= h) h = h_try * std::clamp(factor, min_factor, max_factor);
        } else {
            h = h_try * std::clamp(safety * std::pow(err, -0.2), min_factor, 1.0);
            if (h < tol.min_step) throw IntegrationError("step size underflow", t);
        }
    }
}

}  // namespace dopri
}  // namespace seihrd
