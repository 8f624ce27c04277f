#include "seihrd/cir.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "seihrd/errors.hpp"

namespace seihrd {

void CirParameters::validate() const {
    if (!(nu > 0.0)) throw ParameterError("cir.nu: mean-reversion speed must be > 0");
    if (!(mu > 0.0)) throw ParameterError("cir.mu: long-term mean must be > 0");
    if (!(sigma >= 0.0)) throw ParameterError("cir.sigma: volatility must be >= 0");
    if (!(beta0 >= 0.0)) throw ParameterError("cir.beta0: initial value must be >= 0");
}

double CirParameters::feller_ratio() const {
    if (sigma == 0.0) return INFINITY;
    return 4.0 * nu * mu / (sigma * sigma);
}

TransitionConstants transition_constants(double delta, const CirParameters& p) {
    if (!(p.sigma > 0.0)) throw ParameterError("transition constants need sigma > 0");
    if (!(delta > 0.0)) throw ParameterError("transition constants need delta > 0");
    const double c = p.sigma * p.sigma * -std::expm1(-p.nu * delta) / (4.0 * p.nu);
    return {c, p.feller_ratio()};
}

double cir_conditional_mean(double from, double delta, const CirParameters& p) {
    const double decay = std::exp(-p.nu * delta);
    return from * decay + p.mu * (1.0 - decay);
}

double cir_conditional_variance(double from, double delta, const CirParameters& p) {
    const double decay = std::exp(-p.nu * delta);
    const double s2 = p.sigma * p.sigma;
    return from * s2 * decay * (1.0 - decay) / p.nu +
           p.mu * s2 * (1.0 - decay) * (1.0 - decay) / (2.0 * p.nu);
}

double sample_noncentral_chisq(double d, double lambda, Rng& rng) {
    if (!(d > 0.0) || !std::isfinite(d)) {
        throw ParameterError("non-central chi-squared: degrees of freedom must be > 0, got " +
                             std::to_string(d));
    }
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw ParameterError("non-central chi-squared: non-centrality must be >= 0, got " +
                             std::to_string(lambda));
    }
    if (d > 1.0) {
        std::chi_squared_distribution<double> central(d - 1.0);
        std::normal_distribution<double> normal;
        const double z = normal(rng) + std::sqrt(lambda);
        return central(rng) + z * z;
    }
    long k = 0;
    if (lambda > 0.0) {
        std::poisson_distribution<long> poisson(0.5 * lambda);
        k = poisson(rng);
    }
    std::chi_squared_distribution<double> mixed(d + 2.0 * static_cast<double>(k));
    return mixed(rng);
}

RatePath deterministic_path(const TimeGrid& grid, const CirParameters& p) {
    RatePath path{grid, std::vector<double>(grid.nodes)};
    for (std::size_t i = 0; i < grid.nodes; ++i) {
        const double t = grid.time(i) - grid.t_start;
        path.values[i] = p.mu + (p.beta0 - p.mu) * std::exp(-p.nu * t);
    }
    return path;
}

RatePath constant_path(const TimeGrid& grid, double value) {
    return {grid, std::vector<double>(grid.nodes, value)};
}

RatePath sample_path(const TimeGrid& grid, const CirParameters& p, Rng& rng) {
    p.validate();
    if (p.sigma == 0.0) return deterministic_path(grid, p);

    const auto [c, d] = transition_constants(grid.dt, p);
    const double decay = std::exp(-p.nu * grid.dt);

    RatePath path{grid, std::vector<double>(grid.nodes)};
    path.values[0] = p.beta0;
    for (std::size_t i = 1; i < grid.nodes; ++i) {
        const double lambda = decay * path.values[i - 1] / c;
        path.values[i] = c * sample_noncentral_chisq(d, lambda, rng);
    }
    return path;
}

RatePath euler_maruyama_path(const TimeGrid& grid, const CirParameters& p, Rng& rng) {
    p.validate();
    std::normal_distribution<double> normal;
    const double sqrt_dt = std::sqrt(grid.dt);

    RatePath path{grid, std::vector<double>(grid.nodes)};
    path.values[0] = p.beta0;
    for (std::size_t i = 1; i < grid.nodes; ++i) {
        const double prev = std::max(path.values[i - 1], 0.0);
        double next = prev + p.nu * (p.mu - prev) * grid.dt;
        if (p.sigma > 0.0) next += p.sigma * std::sqrt(prev) * sqrt_dt * normal(rng);
        path.values[i] = std::max(next, 0.0);
    }
    return path;
}

}  // namespace seihrd
