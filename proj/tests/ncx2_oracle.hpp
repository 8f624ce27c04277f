#pragma once

// Test-only reference for the non-central chi-squared law: Poisson mixture of
// central chi-squared CDFs,
//   F(x; d, lambda) = sum_j Pois(j; lambda/2) * P(d/2 + j, x/2).

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

namespace seihrd::testing {

inline double ncx2_cdf(double x, double d, double lambda) {
    if (x <= 0.0) return 0.0;
    const double half = 0.5 * lambda;
    const int j_max = static_cast<int>(half + 40.0 * std::sqrt(half + 1.0) + 40.0);
    double acc = 0.0;
    for (int j = 0; j <= j_max; ++j) {
        const double log_w = half > 0.0 ? -half + j * std::log(half) - std::lgamma(j + 1.0) : (j == 0 ? 0.0 : -INFINITY);
        const double w = std::exp(log_w);
        if (w == 0.0) continue;
        acc += w * boost::math::gamma_p(0.5 * d + j, 0.5 * x);
    }
    return std::min(acc, 1.0);
}

/// Kolmogorov-Smirnov statistic of `samples` against `cdf`.
template <class Cdf>
double ks_statistic(std::vector<double> samples, Cdf&& cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
    }
    return d;
}

/// Asymptotic 1% critical value of the one-sample KS statistic.
inline double ks_critical_1pct(std::size_t n) { return 1.6276 / std::sqrt(static_cast<double>(n)); }

struct Moments {
    double mean, variance, mean_se, variance_se;
};

/// Sample mean/variance with their standard errors (variance SE from the
/// fourth central moment).
inline Moments moments(const std::vector<double>& x) {
    const double n = static_cast<double>(x.size());
    double m = 0.0;
    for (double v : x) m += v;
    m /= n;
    double m2 = 0.0, m4 = 0.0;
    for (double v : x) {
        const double d2 = (v - m) * (v - m);
        m2 += d2;
        m4 += d2 * d2;
    }
    const double var = m2 / (n - 1.0);
    m4 /= n;
    return {m, var, std::sqrt(var / n), std::sqrt(std::max(m4 - var * var, 0.0) / n)};
}

}  // namespace seihrd::testing
