#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "seihrd/cir.hpp"
#include "seihrd/dopri.hpp"
#include "seihrd/grid.hpp"
#include "seihrd/indicators.hpp"
#include "seihrd/integrator.hpp"
#include "seihrd/model.hpp"

namespace seihrd {

/// Quantities that can be sampled across an ensemble.
enum class Variable {
    S, E, I, Iu, HR, HD, Rd, Ru, D,
    beta,
    c_m, d_m, R_e, Hos, MHos, Gamma_E, Gamma_Iu, Gamma_H,
    undetected_cumulative,  // I_u + R_u
    daily_reported, daily_deaths, daily_recovered,
};

std::string_view variable_name(Variable v);
std::optional<Variable> parse_variable(std::string_view name);

/// Compartments followed by the output indicators (the two result tables).
std::vector<Variable> table_variables();
/// Epidemic-curve quantities: cumulative/undetected/hospitalized and daily series.
std::vector<Variable> curve_variables();

enum class CirScheme { exact, euler_maruyama };

struct EnsembleConfig {
    std::size_t n_paths = 1;
    std::uint64_t master_seed = 0;
    CirParameters cir;
    TimeGrid grid;
    Tolerances tolerances;
    std::vector<double> report_times{69.0, 119.0};
    double percentile_ws = 0.95;
    std::vector<Variable> variables = table_variables();
    IndicatorOptions indicators;
    CirScheme scheme = CirScheme::exact;
    /// OpenMP worker count; 0 keeps the runtime default.
    int threads = 0;

    /// Throws ParameterError.
    void validate() const;
};

/// Report-time slices of every path: samples(t, v)[path].
class SampleSet {
public:
    SampleSet(std::vector<double> report_times, std::vector<Variable> variables, std::size_t n_paths);

    const std::vector<double>& report_times() const { return report_times_; }
    const std::vector<Variable>& variables() const { return variables_; }
    std::size_t n_paths() const { return n_paths_; }

    std::span<const double> samples(std::size_t time_index, std::size_t variable_index) const;
    /// Throws std::out_of_range if the variable was not recorded.
    std::span<const double> samples(std::size_t time_index, Variable v) const;
    double& at(std::size_t time_index, std::size_t variable_index, std::size_t path);

    bool operator==(const SampleSet&) const = default;

private:
    std::vector<double> report_times_;
    std::vector<Variable> variables_;
    std::size_t n_paths_;
    std::vector<double> data_;
};

/// Contact-rate path and trajectory of path `path_index`, seeded from
/// (master_seed, path_index).
Trajectory simulate_path(const EnsembleConfig& config, const Model& model, std::size_t path_index);

/// Value of `v` at grid node `node`. Daily variables require an integer-day node.
double variable_value(const Trajectory& traj, const IndicatorSeries& ind, Variable v, std::size_t node);

/// Writes the report-time slice of one path into `out`.
void record_path(SampleSet& out, std::size_t path, const Trajectory& traj, const Model& model,
                 const EnsembleConfig& config);

/// OpenMP map over paths. Result is bit-identical to run_ensemble_serial for
/// any worker count. An integration failure is rethrown with its path index
/// (the lowest failing index).
SampleSet run_ensemble(const EnsembleConfig& config, const Model& model);

/// Single-threaded reference implementation.
SampleSet run_ensemble_serial(const EnsembleConfig& config, const Model& model);

struct SummaryStat {
    double mean = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
    double p_ws = 0.0;
    double stddev = 0.0;
    double median = 0.0;

    bool operator==(const SummaryStat&) const = default;
};

struct EnsembleSummary {
    std::vector<double> report_times;
    std::vector<Variable> variables;
    double percentile_ws = 0.95;
    std::size_t sample_count = 0;
    std::vector<SummaryStat> stats;  // time-major

    const SummaryStat& at(std::size_t time_index, std::size_t variable_index) const;
    /// Throws std::out_of_range for unknown time or variable.
    const SummaryStat& at(double time, Variable v) const;

    bool operator==(const EnsembleSummary&) const = default;
};

EnsembleSummary summarize(const SampleSet& samples, double percentile_ws);

}  // namespace seihrd
