#include "seihrd/indicators.hpp"

#include <algorithm>
#include <cmath>

#include "seihrd/errors.hpp"

namespace seihrd {

namespace {

double clip(double v) { return v < 0.0 ? 0.0 : v; }

template <class Integrand>
std::vector<double> trapezoid(const TimeGrid& grid, std::size_t n, Integrand&& f) {
    std::vector<double> out(n, 0.0);
    if (n == 0) return out;
    double prev = f(std::size_t{0});
    for (std::size_t i = 1; i < n; ++i) {
        const double cur = f(i);
        out[i] = out[i - 1] + 0.5 * grid.dt * (prev + cur);
        prev = cur;
    }
    return out;
}

// R_d at an arbitrary time, linear between nodes, zero before the grid start.
double recovered_detected_at(const Trajectory& traj, double t) {
    const TimeGrid& g = traj.grid;
    if (t < g.t_start) return 0.0;
    const double x = (t - g.t_start) / g.dt;
    const double k = std::floor(x + 1e-9);
    const auto i = std::min(static_cast<std::size_t>(k), traj.states.size() - 1);
    const double frac = std::clamp(x - static_cast<double>(i), 0.0, 1.0);
    if (frac < 1e-9 || i + 1 >= traj.states.size()) return traj.states[i][Rd];
    return (1.0 - frac) * traj.states[i][Rd] + frac * traj.states[i + 1][Rd];
}

std::vector<std::size_t> integer_day_nodes(const TimeGrid& grid) {
    std::vector<std::size_t> nodes;
    const double first = std::ceil(grid.t_start - 1e-9);
    for (double day = first; day <= grid.t_end + 1e-9; day += 1.0) {
        const auto node = grid.node_at(day);
        if (!node) throw ParameterError("daily series: grid has no node at every integer day");
        nodes.push_back(*node);
    }
    return nodes;
}

}  // namespace

std::vector<double> cumulative_cases(const Trajectory& traj) {
    std::vector<double> out;
    out.reserve(traj.states.size());
    for (const auto& y : traj.states) out.push_back(clip(y[HR] + y[HD] + y[Rd] + y[D]));
    return out;
}

std::vector<double> cumulative_cases_integral(const Trajectory& traj, const Model& model) {
    const auto& y0 = traj.states.front();
    const double c0 = y0[HR] + y0[HD] + y0[Rd] + y0[D];
    auto out = trapezoid(traj.grid, traj.states.size(), [&](std::size_t i) {
        const double t = traj.grid.time(i);
        const auto c = model.coefficients(t);
        return c.theta * c.gamma_I * traj.states[i][I];
    });
    for (double& v : out) v += c0;
    return out;
}

double effective_reproduction(const Trajectory& traj, const Model& model, std::size_t node) {
    const StateVector& y = traj.states.at(node);
    const double t = traj.grid.time(node);
    const double beta = traj.rate_path.values.at(node);
    const auto c = model.coefficients(t);

    // Contact rates with the control factor folded in.
    const double mb_e = c.m * beta * c.A_E;
    const double mb_i = c.m * beta;
    const double mb_iu = c.m * beta * c.A_Iu;
    const double mb_hr = c.m * beta * c.A_HR;
    const double mb_hd = c.m * beta * c.A_HD;

    const double g_e = c.gamma_E, g_i = c.gamma_I, g_iu = c.gamma_Iu, g_hr = c.gamma_HR,
                 g_hd = c.gamma_HD;
    const double u_e =
        (((mb_iu * (1.0 - c.theta) * g_hr + mb_hr * g_iu * (c.theta - c.omega)) * g_i +
          mb_i * g_hr * g_iu) * g_e +
         mb_e * g_i * g_hr * g_iu) * g_hd +
        mb_hd * c.omega * g_e * g_i * g_hr * g_iu;
    const double r = u_e / (g_e * g_i * g_hr * g_hd * g_iu) * clip(y[S]) / model.population();
    return clip(r);
}

double hospital_lag_days(const Model& model, const TimeGrid& grid, const IndicatorOptions& options) {
    const double c_o = model.params().C_o;
    return options.hospital_lag == HospitalLag::days ? c_o : c_o * grid.dt;
}

double hospitalized_load(const Trajectory& traj, const Model& model, std::size_t node,
                         const IndicatorOptions& options) {
    const StateVector& y = traj.states.at(node);
    const double lag = hospital_lag_days(model, traj.grid, options);
    const double delayed = recovered_detected_at(traj, traj.grid.time(node) - lag);
    return clip(y[HD] + model.params().p * (y[HR] + y[Rd] - delayed));
}

double max_hospitalized(const Trajectory& traj, const Model& model, std::size_t node,
                        const IndicatorOptions& options) {
    double best = 0.0;
    for (std::size_t i = 0; i <= node; ++i) best = std::max(best, hospitalized_load(traj, model, i, options));
    return best;
}

AttributionIntegrals attribution_integrals(const Trajectory& traj, const Model& model) {
    const std::size_t n = traj.states.size();
    std::vector<CoefficientSnapshot> coef(n);
    for (std::size_t i = 0; i < n; ++i) coef[i] = model.coefficients(traj.grid.time(i));

    auto weight = [&](std::size_t i) {
        return coef[i].m * traj.rate_path.values[i] * clip(traj.states[i][S]) / model.population();
    };
    AttributionIntegrals out;
    out.Gamma_E = trapezoid(traj.grid, n, [&](std::size_t i) {
        return weight(i) * coef[i].A_E * traj.states[i][E];
    });
    out.Gamma_Iu = trapezoid(traj.grid, n, [&](std::size_t i) {
        return weight(i) * coef[i].A_Iu * traj.states[i][Iu];
    });
    out.Gamma_H = trapezoid(traj.grid, n, [&](std::size_t i) {
        return weight(i) * (coef[i].A_HR * traj.states[i][HR] + coef[i].A_HD * traj.states[i][HD]);
    });
    return out;
}

std::vector<double> daily_differences(const std::vector<double>& cumulative_by_day) {
    std::vector<double> out(cumulative_by_day.size());
    for (std::size_t d = 0; d < cumulative_by_day.size(); ++d) {
        const double prev = d == 0 ? 0.0 : cumulative_by_day[d - 1];
        out[d] = clip(cumulative_by_day[d] - prev);
    }
    return out;
}

DailySeries daily_series(const Trajectory& traj) {
    const auto nodes = integer_day_nodes(traj.grid);
    const auto cm = cumulative_cases(traj);
    std::vector<double> cases, deaths, recovered;
    for (std::size_t node : nodes) {
        cases.push_back(cm[node]);
        deaths.push_back(clip(traj.states[node][D]));
        recovered.push_back(clip(traj.states[node][Rd]));
    }
    return {daily_differences(cases), daily_differences(deaths), daily_differences(recovered)};
}

IndicatorSeries compute_indicators(const Trajectory& traj, const Model& model,
                                   const IndicatorOptions& options) {
    const std::size_t n = traj.states.size();
    IndicatorSeries out;
    out.grid = traj.grid;
    out.c_m = cumulative_cases(traj);
    out.d_m.reserve(n);
    out.R_e.reserve(n);
    out.Hos.reserve(n);
    out.MHos.reserve(n);
    double running = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        out.d_m.push_back(clip(traj.states[i][D]));
        out.R_e.push_back(effective_reproduction(traj, model, i));
        const double hos = hospitalized_load(traj, model, i, options);
        running = std::max(running, hos);
        out.Hos.push_back(hos);
        out.MHos.push_back(running);
    }
    auto gamma = attribution_integrals(traj, model);
    out.Gamma_E = std::move(gamma.Gamma_E);
    out.Gamma_Iu = std::move(gamma.Gamma_Iu);
    out.Gamma_H = std::move(gamma.Gamma_H);

    if (traj.grid.steps_per_day()) {
        auto daily = daily_series(traj);
        out.daily_reported = std::move(daily.reported);
        out.daily_deaths = std::move(daily.deaths);
        out.daily_recovered = std::move(daily.recovered);
    }
    return out;
}

}  // namespace seihrd
