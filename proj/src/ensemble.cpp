#include "seihrd/ensemble.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "seihrd/errors.hpp"
#include "seihrd/rng.hpp"
#include "seihrd/statistics.hpp"

namespace seihrd {

namespace {

constexpr std::array<std::string_view, 22> kVariableNames = {
    "S", "E", "I", "Iu", "HR", "HD", "Rd", "Ru", "D", "beta",
    "c_m", "d_m", "R_e", "Hos", "MHos", "Gamma_E", "Gamma_Iu", "Gamma_H",
    "undetected_cumulative", "daily_reported", "daily_deaths", "daily_recovered",
};

bool is_daily(Variable v) {
    return v == Variable::daily_reported || v == Variable::daily_deaths || v == Variable::daily_recovered;
}

bool needs_indicators(Variable v) { return static_cast<int>(v) >= static_cast<int>(Variable::c_m); }

std::vector<std::size_t> report_nodes(const EnsembleConfig& config) {
    std::vector<std::size_t> nodes;
    for (double t : config.report_times) nodes.push_back(*config.grid.node_at(t));
    return nodes;
}

double clip(double v) { return v < 0.0 ? 0.0 : v; }

}  // namespace

std::string_view variable_name(Variable v) { return kVariableNames.at(static_cast<std::size_t>(v)); }

std::optional<Variable> parse_variable(std::string_view name) {
    for (std::size_t i = 0; i < kVariableNames.size(); ++i) {
        if (kVariableNames[i] == name) return static_cast<Variable>(i);
    }
    return std::nullopt;
}

std::vector<Variable> table_variables() {
    return {Variable::S,   Variable::E,   Variable::I,       Variable::Iu,       Variable::HR,
            Variable::HD,  Variable::Rd,  Variable::Ru,      Variable::D,        Variable::c_m,
            Variable::d_m, Variable::R_e, Variable::Hos,     Variable::MHos,     Variable::Gamma_E,
            Variable::Gamma_Iu, Variable::Gamma_H};
}

std::vector<Variable> curve_variables() {
    return {Variable::c_m, Variable::undetected_cumulative, Variable::Hos,
            Variable::daily_reported, Variable::daily_deaths, Variable::daily_recovered};
}

void EnsembleConfig::validate() const {
    if (n_paths < 1) throw ParameterError("ensemble: n_paths must be >= 1");
    cir.validate();
    if (grid.nodes < 2 || !(grid.dt > 0.0)) throw ParameterError("ensemble: invalid time grid");
    if (!(percentile_ws >= 0.0 && percentile_ws <= 1.0)) {
        throw ParameterError("ensemble: percentile_ws must lie in [0,1]");
    }
    if (variables.empty()) throw ParameterError("ensemble: no variables selected");
    const bool daily = std::any_of(variables.begin(), variables.end(), is_daily);
    for (double t : report_times) {
        if (!grid.node_at(t)) {
            throw ParameterError("ensemble: report time " + std::to_string(t) + " is not a grid node");
        }
        if (daily && std::abs(t - std::round(t)) > 1e-9) {
            throw ParameterError("ensemble: daily variables need integer report times");
        }
    }
    if (daily && !grid.steps_per_day()) throw ParameterError("ensemble: daily variables need 1/dt integral");
    if (threads < 0) throw ParameterError("ensemble: threads must be >= 0");
}

SampleSet::SampleSet(std::vector<double> report_times, std::vector<Variable> variables, std::size_t n_paths)
    : report_times_(std::move(report_times)),
      variables_(std::move(variables)),
      n_paths_(n_paths),
      data_(report_times_.size() * variables_.size() * n_paths_, 0.0) {}

std::span<const double> SampleSet::samples(std::size_t ti, std::size_t vi) const {
    return {data_.data() + (ti * variables_.size() + vi) * n_paths_, n_paths_};
}

std::span<const double> SampleSet::samples(std::size_t ti, Variable v) const {
    const auto it = std::find(variables_.begin(), variables_.end(), v);
    if (it == variables_.end()) throw std::out_of_range("variable not recorded: " + std::string(variable_name(v)));
    return samples(ti, static_cast<std::size_t>(it - variables_.begin()));
}

double& SampleSet::at(std::size_t ti, std::size_t vi, std::size_t path) {
    return data_[(ti * variables_.size() + vi) * n_paths_ + path];
}

Trajectory simulate_path(const EnsembleConfig& config, const Model& model, std::size_t path_index) {
    Rng rng = make_path_rng(config.master_seed, path_index);
    const RatePath rates = config.scheme == CirScheme::exact ? sample_path(config.grid, config.cir, rng)
                                                             : euler_maruyama_path(config.grid, config.cir, rng);
    return integrate(model.initial_state(), rates, model, config.tolerances);
}

double variable_value(const Trajectory& traj, const IndicatorSeries& ind, Variable v, std::size_t node) {
    const StateVector& y = traj.states.at(node);
    auto daily = [&](const std::vector<double>& series) {
        const double day = traj.grid.time(node) - std::ceil(traj.grid.t_start - 1e-9);
        return series.at(static_cast<std::size_t>(std::llround(day)));
    };
    switch (v) {
        case Variable::S: return clip(y[S]);
        case Variable::E: return clip(y[E]);
        case Variable::I: return clip(y[I]);
        case Variable::Iu: return clip(y[Iu]);
        case Variable::HR: return clip(y[HR]);
        case Variable::HD: return clip(y[HD]);
        case Variable::Rd: return clip(y[Rd]);
        case Variable::Ru: return clip(y[Ru]);
        case Variable::D: return clip(y[D]);
        case Variable::beta: return traj.rate_path.values.at(node);
        case Variable::c_m: return ind.c_m.at(node);
        case Variable::d_m: return ind.d_m.at(node);
        case Variable::R_e: return ind.R_e.at(node);
        case Variable::Hos: return ind.Hos.at(node);
        case Variable::MHos: return ind.MHos.at(node);
        case Variable::Gamma_E: return ind.Gamma_E.at(node);
        case Variable::Gamma_Iu: return ind.Gamma_Iu.at(node);
        case Variable::Gamma_H: return ind.Gamma_H.at(node);
        case Variable::undetected_cumulative: return clip(y[Iu] + y[Ru]);
        case Variable::daily_reported: return daily(ind.daily_reported);
        case Variable::daily_deaths: return daily(ind.daily_deaths);
        case Variable::daily_recovered: return daily(ind.daily_recovered);
    }
    throw std::logic_error("unhandled variable");
}

void record_path(SampleSet& out, std::size_t path, const Trajectory& traj, const Model& model,
                 const EnsembleConfig& config) {
    const auto& vars = out.variables();
    IndicatorSeries ind;
    if (std::any_of(vars.begin(), vars.end(), needs_indicators)) {
        ind = compute_indicators(traj, model, config.indicators);
    }
    const auto nodes = report_nodes(config);
    for (std::size_t ti = 0; ti < nodes.size(); ++ti) {
        for (std::size_t vi = 0; vi < vars.size(); ++vi) {
            out.at(ti, vi, path) = variable_value(traj, ind, vars[vi], nodes[ti]);
        }
    }
}

SampleSet run_ensemble_serial(const EnsembleConfig& config, const Model& model) {
    config.validate();
    SampleSet out(config.report_times, config.variables, config.n_paths);
    for (std::size_t i = 0; i < config.n_paths; ++i) {
        try {
            record_path(out, i, simulate_path(config, model, i), model, config);
        } catch (const IntegrationError& e) {
            throw IntegrationError(e.what(), e.time(), i);
        }
    }
    return out;
}

SampleSet run_ensemble(const EnsembleConfig& config, const Model& model) {
    config.validate();
    SampleSet out(config.report_times, config.variables, config.n_paths);
    const auto n = static_cast<long long>(config.n_paths);

    std::exception_ptr failure;
    long long failed_path = n;

#ifdef _OPENMP
    const int workers = config.threads > 0 ? config.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 16) num_threads(workers)
#endif
    for (long long i = 0; i < n; ++i) {
        try {
            record_path(out, static_cast<std::size_t>(i), simulate_path(config, model, static_cast<std::size_t>(i)),
                        model, config);
        } catch (const IntegrationError& e) {
#ifdef _OPENMP
#pragma omp critical(seihrd_ensemble_failure)
#endif
            if (i < failed_path) {
                failed_path = i;
                failure = std::make_exception_ptr(IntegrationError(e.what(), e.time(), static_cast<std::size_t>(i)));
            }
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical(seihrd_ensemble_failure)
#endif
            if (i < failed_path) {
                failed_path = i;
                failure = std::current_exception();
            }
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

const SummaryStat& EnsembleSummary::at(std::size_t ti, std::size_t vi) const {
    return stats.at(ti * variables.size() + vi);
}

const SummaryStat& EnsembleSummary::at(double time, Variable v) const {
    const auto t_it = std::find_if(report_times.begin(), report_times.end(),
                                   [&](double t) { return std::abs(t - time) < 1e-9; });
    const auto v_it = std::find(variables.begin(), variables.end(), v);
    if (t_it == report_times.end() || v_it == variables.end()) {
        throw std::out_of_range("summary has no entry for " + std::string(variable_name(v)) + " at t=" +
                                std::to_string(time));
    }
    return at(static_cast<std::size_t>(t_it - report_times.begin()),
              static_cast<std::size_t>(v_it - variables.begin()));
}

EnsembleSummary summarize(const SampleSet& samples, double percentile_ws) {
    EnsembleSummary s;
    s.report_times = samples.report_times();
    s.variables = samples.variables();
    s.percentile_ws = percentile_ws;
    s.sample_count = samples.n_paths();
    std::vector<double> sorted;
    for (std::size_t ti = 0; ti < s.report_times.size(); ++ti) {
        for (std::size_t vi = 0; vi < s.variables.size(); ++vi) {
            const auto x = samples.samples(ti, vi);
            sorted.assign(x.begin(), x.end());
            std::sort(sorted.begin(), sorted.end());
            SummaryStat st;
            st.mean = mean(x);
            st.stddev = standard_deviation(x);
            st.q1 = quantile_sorted(sorted, 0.25);
            st.median = quantile_sorted(sorted, 0.5);
            st.q3 = quantile_sorted(sorted, 0.75);
            st.p_ws = quantile_sorted(sorted, percentile_ws);
            s.stats.push_back(st);
        }
    }
    return s;
}

}  // namespace seihrd
