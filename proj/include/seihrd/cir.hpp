#pragma once

#include <vector>

#include "seihrd/grid.hpp"
#include "seihrd/rng.hpp"

namespace seihrd {

/// Square-root diffusion  d beta = nu (mu - beta) dt + sigma sqrt(beta) dW.
struct CirParameters {
    double nu = 1.0;
    double mu = 0.0;
    double sigma = 0.0;
    double beta0 = 0.0;

    void validate() const;
    /// 4 nu mu / sigma^2; infinite when sigma == 0.
    double feller_ratio() const;

    bool operator==(const CirParameters&) const = default;
};

/// Contact-rate values on the nodes of a uniform grid.
struct RatePath {
    TimeGrid grid;
    std::vector<double> values;
};

/// Scale c and degrees of freedom d of the exact transition law
///   beta(s + delta) | beta(s)  ~  c * chi2(d, exp(-nu delta) beta(s) / c).
struct TransitionConstants {
    double c;
    double d;
};

/// Throws ParameterError when sigma <= 0 or delta <= 0.
TransitionConstants transition_constants(double delta, const CirParameters& p);

/// Analytic conditional mean and variance of beta(s + delta) given beta(s) = from.
double cir_conditional_mean(double from, double delta, const CirParameters& p);
double cir_conditional_variance(double from, double delta, const CirParameters& p);

/// One draw from the non-central chi-squared law chi2(d, lambda).
/// Throws ParameterError for d <= 0 or lambda < 0.
double sample_noncentral_chisq(double d, double lambda, Rng& rng);

/// Exact simulation on `grid`. For sigma == 0 the deterministic
/// mean-reversion curve is returned and `rng` is untouched.
RatePath sample_path(const TimeGrid& grid, const CirParameters& p, Rng& rng);

/// Full-truncation Euler-Maruyama path; a cross-check for sample_path.
RatePath euler_maruyama_path(const TimeGrid& grid, const CirParameters& p, Rng& rng);

/// beta(t) = mu + (beta0 - mu) exp(-nu t) on the grid.
RatePath deterministic_path(const TimeGrid& grid, const CirParameters& p);

RatePath constant_path(const TimeGrid& grid, double value);

}  // namespace seihrd
