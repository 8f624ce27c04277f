#pragma once

#include <cstddef>
#include <vector>

#include "seihrd/integrator.hpp"
#include "seihrd/model.hpp"

namespace seihrd {

/// How the convalescence delay C_o in the hospital load is measured.
///   days:       R_d is read at t - C_o days.
///   grid_nodes: R_d is read C_o grid nodes back (C_o * dt days); this is the
///               convention behind the published China hospital figures.
enum class HospitalLag { grid_nodes, days };

struct IndicatorOptions {
    HospitalLag hospital_lag = HospitalLag::grid_nodes;
    bool operator==(const IndicatorOptions&) const = default;
};

/// Output indicators of one trajectory. Node series have one entry per grid
/// node; daily series one entry per integer day 0 .. horizon.
struct IndicatorSeries {
    TimeGrid grid;
    std::vector<double> c_m, d_m, R_e, Hos, MHos, Gamma_E, Gamma_Iu, Gamma_H;
    std::vector<double> daily_reported, daily_deaths, daily_recovered;
};

/// c_m = H_R + H_D + R_d + D per node.
std::vector<double> cumulative_cases(const Trajectory& traj);

/// Trapezoidal quadrature of theta(s) gamma_I(s) I(s), the integral form of c_m.
std::vector<double> cumulative_cases_integral(const Trajectory& traj, const Model& model);

/// Effective reproduction number at grid node `node`, using the contact rate
/// realized at that node.
double effective_reproduction(const Trajectory& traj, const Model& model, std::size_t node);

/// Lag (days) subtracted from t when reading R_d for the hospital load.
double hospital_lag_days(const Model& model, const TimeGrid& grid, const IndicatorOptions& options);

/// Hos = H_D + p (H_R + R_d(t) - R_d(t - lag)), with R_d = 0 before t0.
double hospitalized_load(const Trajectory& traj, const Model& model, std::size_t node,
                         const IndicatorOptions& options = {});

/// Running maximum of Hos over nodes 0..node.
double max_hospitalized(const Trajectory& traj, const Model& model, std::size_t node,
                        const IndicatorOptions& options = {});

struct AttributionIntegrals {
    std::vector<double> Gamma_E, Gamma_Iu, Gamma_H;
};

/// Infections caused by E, I_u and H = H_R + H_D, accumulated by the trapezoid rule.
AttributionIntegrals attribution_integrals(const Trajectory& traj, const Model& model);

/// First differences of a cumulative series sampled at integer days; the day-0
/// entry is the cumulative value itself. Small negative values are clipped to 0.
std::vector<double> daily_differences(const std::vector<double>& cumulative_by_day);

struct DailySeries {
    std::vector<double> reported, deaths, recovered;
};

/// Daily reported cases (from c_m), deaths (from D) and detected recoveries (from R_d).
/// Throws ParameterError if the grid has no node at every integer day.
DailySeries daily_series(const Trajectory& traj);

IndicatorSeries compute_indicators(const Trajectory& traj, const Model& model,
                                   const IndicatorOptions& options = {});

}  // namespace seihrd
