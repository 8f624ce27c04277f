#include "seihrd/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <optional>
#include <ostream>
#include <vector>

#include "seihrd/csv.hpp"
#include "seihrd/ensemble.hpp"
#include "seihrd/errors.hpp"
#include "seihrd/indicators.hpp"
#include "seihrd/integrator.hpp"
#include "seihrd/statistics.hpp"

namespace seihrd {

namespace {

struct Overrides {
    std::string config = "default";
    std::optional<double> sigma, nu, mu, beta0, dt, percentile, rtol, atol, time;
    std::optional<long long> paths;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    std::optional<std::size_t> bins, path_index;
    std::optional<std::string> out, scheme, hospital_lag, variable;
    std::vector<double> times;
};

void add_common_options(CLI::App& sub, Overrides& o) {
    sub.add_option("-c,--config", o.config, "INI config file, or 'default' for the bundled China set");
    sub.add_option("-o,--out", o.out, "output directory");
    sub.add_option("--sigma", o.sigma, "CIR volatility");
    sub.add_option("--nu", o.nu, "CIR mean-reversion speed");
    sub.add_option("--mu", o.mu, "CIR long-term mean");
    sub.add_option("--beta0", o.beta0, "CIR initial value");
    sub.add_option("--scheme", o.scheme, "CIR sampler: exact | euler_maruyama");
    sub.add_option("--dt", o.dt, "grid step in days");
    sub.add_option("--times", o.times, "report times (days since t0)")->delimiter(',');
    sub.add_option("--rtol", o.rtol, "relative integration tolerance");
    sub.add_option("--atol", o.atol, "absolute integration tolerance (persons)");
    sub.add_option("--hospital-lag", o.hospital_lag, "convalescence lag unit: grid_nodes | days");
}

void add_ensemble_options(CLI::App& sub, Overrides& o) {
    sub.add_option("-n,--paths", o.paths, "number of Monte Carlo paths");
    sub.add_option("-s,--seed", o.seed, "master seed");
    sub.add_option("-j,--threads", o.threads, "OpenMP workers (0 = runtime default)");
    sub.add_option("--percentile", o.percentile, "worst-case percentile");
}

RunConfig effective_config(const Overrides& o) {
    RunConfig c = o.config == "default" ? default_config() : parse_config(o.config);
    if (o.sigma) c.cir.sigma = *o.sigma;
    if (o.nu) c.cir.nu = *o.nu;
    if (o.mu) c.cir.mu = *o.mu;
    if (o.beta0) c.cir.beta0 = *o.beta0;
    if (o.scheme) {
        if (*o.scheme == "exact") c.scheme = CirScheme::exact;
        else if (*o.scheme == "euler_maruyama") c.scheme = CirScheme::euler_maruyama;
        else throw ConfigError("--scheme: expected 'exact' or 'euler_maruyama'");
    }
    if (o.dt) c.dt = *o.dt;
    if (!o.times.empty()) c.report_times = o.times;
    if (o.rtol) c.tolerances.rel_tol = *o.rtol;
    if (o.atol) c.tolerances.abs_tol = *o.atol;
    if (o.hospital_lag) {
        if (*o.hospital_lag == "grid_nodes") c.indicators.hospital_lag = HospitalLag::grid_nodes;
        else if (*o.hospital_lag == "days") c.indicators.hospital_lag = HospitalLag::days;
        else throw ConfigError("--hospital-lag: expected 'grid_nodes' or 'days'");
    }
    if (o.paths) {
        if (*o.paths < 1) throw ConfigError("--paths: must be >= 1");
        c.paths = static_cast<std::size_t>(*o.paths);
    }
    if (o.seed) c.seed = *o.seed;
    if (o.threads) c.threads = *o.threads;
    if (o.percentile) c.percentile_ws = *o.percentile;
    if (o.bins) c.histogram_bins = *o.bins;
    if (o.variable) {
        const auto v = parse_variable(*o.variable);
        if (!v) throw ConfigError("--variable: unknown variable '" + *o.variable + "'");
        c.histogram_variable = *v;
    }
    if (o.time) c.histogram_time = *o.time;
    if (o.out) c.output_dir = *o.out;
    c.validate();
    return c;
}

std::filesystem::path prepare_output(RunConfig& config) {
    const auto dir = resolve_output_dir(config);
    std::filesystem::create_directories(dir);
    write_config(config, dir / "config.ini");
    return dir;
}

bool emits(const RunConfig& c, const char* kind) { return c.emit.count(kind) > 0; }

std::string cell(double v, Variable var) {
    char buf[32];
    if (var == Variable::R_e || var == Variable::beta) std::snprintf(buf, sizeof buf, "%.4f", v);
    else std::snprintf(buf, sizeof buf, "%.0f", v);
    return buf;
}

void print_deterministic_table(std::ostream& out, const std::vector<double>& times,
                               const std::function<double(std::size_t, Variable)>& value) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%-10s", "");
    out << buf;
    for (double t : times) {
        std::snprintf(buf, sizeof buf, "%14s", ("t=" + format_value(t)).c_str());
        out << buf;
    }
    out << '\n';
    for (Variable v : table_variables()) {
        std::snprintf(buf, sizeof buf, "%-10s", std::string(variable_name(v)).c_str());
        out << buf;
        for (std::size_t ti = 0; ti < times.size(); ++ti) {
            std::snprintf(buf, sizeof buf, "%14s", cell(value(ti, v), v).c_str());
            out << buf;
        }
        out << '\n';
    }
}

void print_summary_table(std::ostream& out, const EnsembleSummary& s) {
    char buf[160];
    for (std::size_t ti = 0; ti < s.report_times.size(); ++ti) {
        out << "t = " << format_value(s.report_times[ti]) << "  (n = " << s.sample_count << ")\n";
        std::snprintf(buf, sizeof buf, "%-22s %12s %27s %12s\n", "", "Mean", "[Q1, Q3]",
                      ("WS (" + format_value(100.0 * s.percentile_ws) + "%)").c_str());
        out << buf;
        for (std::size_t vi = 0; vi < s.variables.size(); ++vi) {
            const Variable v = s.variables[vi];
            const auto& st = s.at(ti, vi);
            const std::string iqr = "[" + cell(st.q1, v) + ", " + cell(st.q3, v) + "]";
            std::snprintf(buf, sizeof buf, "%-22s %12s %27s %12s\n", std::string(variable_name(v)).c_str(),
                          cell(st.mean, v).c_str(), iqr.c_str(), cell(st.p_ws, v).c_str());
            out << buf;
        }
        out << '\n';
    }
}

int cmd_deterministic(RunConfig config, std::ostream& out) {
    const Model model(config.model);
    const auto grid = model_grid(model, config.dt);
    const Trajectory traj = integrate_deterministic(model, grid, config.tolerances);
    const IndicatorSeries ind = compute_indicators(traj, model, config.indicators);
    const auto dir = prepare_output(config);
    if (emits(config, "trajectory")) write_trajectory_csv(traj, dir / "trajectory.csv");
    if (emits(config, "indicators")) {
        write_indicators_csv(ind, dir / "indicators.csv");
        if (!ind.daily_reported.empty()) write_daily_csv(ind, dir / "daily.csv");
    }
    std::vector<std::size_t> nodes;
    for (double t : config.report_times) nodes.push_back(*grid.node_at(t));
    out << "Deterministic run (constant contact rate " << format_value(config.model.beta_I) << ")\n";
    print_deterministic_table(out, config.report_times, [&](std::size_t ti, Variable v) {
        return variable_value(traj, ind, v, nodes[ti]);
    });
    out << "Output written to " << dir.string() << '\n';
    return kExitOk;
}

int cmd_indicators(RunConfig config, std::size_t path_index, std::ostream& out) {
    const Model model(config.model);
    const EnsembleConfig ec = config.ensemble_config();
    const Trajectory traj = config.cir.sigma == 0.0 && config.cir.beta0 == config.model.beta_I &&
                                    config.cir.mu == config.model.beta_I
                                ? integrate_deterministic(model, ec.grid, config.tolerances)
                                : simulate_path(ec, model, path_index);
    const IndicatorSeries ind = compute_indicators(traj, model, config.indicators);
    const auto dir = prepare_output(config);
    if (emits(config, "indicators")) {
        write_indicators_csv(ind, dir / "indicators.csv");
        if (!ind.daily_reported.empty()) write_daily_csv(ind, dir / "daily.csv");
    }
    if (emits(config, "trajectory")) write_trajectory_csv(traj, dir / "trajectory.csv");
    out << "Indicators (sigma = " << format_value(config.cir.sigma);
    if (config.cir.sigma > 0.0) out << ", path " << path_index << ", seed " << config.seed;
    out << ")\n";
    std::vector<std::size_t> nodes;
    for (double t : config.report_times) nodes.push_back(*ec.grid.node_at(t));
    print_deterministic_table(out, config.report_times, [&](std::size_t ti, Variable v) {
        return variable_value(traj, ind, v, nodes[ti]);
    });
    out << "Output written to " << dir.string() << '\n';
    return kExitOk;
}

int cmd_ensemble(RunConfig config, std::ostream& out) {
    const Model model(config.model);
    const EnsembleConfig ec = config.ensemble_config();
    const SampleSet samples = run_ensemble(ec, model);
    const EnsembleSummary summary = summarize(samples, ec.percentile_ws);
    const auto dir = prepare_output(config);
    if (emits(config, "summary")) write_summary_csv(summary, dir / "summary.csv");
    out << "Ensemble: sigma = " << format_value(config.cir.sigma) << ", nu = " << format_value(config.cir.nu)
        << ", mu = " << format_value(config.cir.mu) << ", paths = " << config.paths << ", seed = " << config.seed
        << "\n\n";
    print_summary_table(out, summary);
    out << "Output written to " << dir.string() << '\n';
    return kExitOk;
}

int cmd_curves(RunConfig config, std::ostream& out) {
    const Model model(config.model);
    EnsembleConfig ec = config.ensemble_config();
    ec.variables = curve_variables();
    ec.report_times.clear();
    for (double day = 0.0; day <= model.horizon() + 1e-9; day += 1.0) ec.report_times.push_back(day);
    const EnsembleSummary summary = summarize(run_ensemble(ec, model), ec.percentile_ws);
    const auto dir = prepare_output(config);
    if (emits(config, "curves")) write_summary_csv(summary, dir / "curves.csv");
    out << "Epidemic curves over " << ec.report_times.size() << " days, " << config.paths << " paths\n";
    const double last = ec.report_times.back();
    for (Variable v : ec.variables) {
        const auto& st = summary.at(last, v);
        out << "  " << variable_name(v) << " at t=" << format_value(last) << ": mean " << format_value(st.mean)
            << ", [" << format_value(st.q1) << ", " << format_value(st.q3) << "], WS " << format_value(st.p_ws)
            << '\n';
    }
    out << "Output written to " << dir.string() << '\n';
    return kExitOk;
}

int cmd_histogram(RunConfig config, std::ostream& out) {
    const Model model(config.model);
    EnsembleConfig ec = config.ensemble_config();
    ec.variables = {config.histogram_variable};
    ec.report_times = {config.histogram_time};
    const SampleSet samples = run_ensemble(ec, model);
    const auto x = samples.samples(0, std::size_t{0});
    const Histogram h = histogram(x, config.histogram_bins);
    const auto dir = prepare_output(config);
    if (emits(config, "histograms")) write_histogram_csv(h, dir / "histogram.csv");
    const double m = mean(x);
    const double med = quantile(x, 0.5);
    out << "Histogram of " << variable_name(config.histogram_variable) << " at t=" << format_value(config.histogram_time)
        << " (" << config.paths << " paths, " << config.histogram_bins << " bins, range [" << format_value(h.lo)
        << ", " << format_value(h.hi) << "])\n"
        << "  mean " << format_value(m) << ", median " << format_value(med) << ", "
        << (m > med ? "right-skewed (mean > median)" : "not right-skewed") << '\n'
        << "Output written to " << dir.string() << '\n';
    return kExitOk;
}

}  // namespace

std::filesystem::path resolve_output_dir(const RunConfig& config) {
    if (!config.output_dir.empty()) return config.output_dir;
    if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
    return "seihrd_out";
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Stochastic theta-SEIHRD epidemic simulator", "seihrd"};
    app.require_subcommand(1);
    Overrides o;

    auto* det = app.add_subcommand("deterministic", "solve the model with a constant contact rate");
    add_common_options(*det, o);

    auto* ens = app.add_subcommand("ensemble", "Monte Carlo ensemble statistics at the report times");
    add_common_options(*ens, o);
    add_ensemble_options(*ens, o);

    auto* ind = app.add_subcommand("indicators", "output indicators of one trajectory");
    add_common_options(*ind, o);
    add_ensemble_options(*ind, o);
    ind->add_option("--path", o.path_index, "path index for stochastic runs");

    auto* cur = app.add_subcommand("curves", "daily epidemic curves (mean, IQR, worst case)");
    add_common_options(*cur, o);
    add_ensemble_options(*cur, o);

    auto* his = app.add_subcommand("histogram", "histogram of one variable at one time");
    add_common_options(*his, o);
    add_ensemble_options(*his, o);
    his->add_option("--variable", o.variable, "variable name, e.g. I");
    his->add_option("--time", o.time, "time (days since t0)");
    his->add_option("--bins", o.bins, "bin count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n' << app.help();
        return kExitConfig;
    }

    try {
        RunConfig config = effective_config(o);
        if (det->parsed()) return cmd_deterministic(std::move(config), out);
        if (ens->parsed()) return cmd_ensemble(std::move(config), out);
        if (ind->parsed()) return cmd_indicators(std::move(config), o.path_index.value_or(0), out);
        if (cur->parsed()) return cmd_curves(std::move(config), out);
        if (his->parsed()) return cmd_histogram(std::move(config), out);
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const ParameterError& e) {
        err << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const IntegrationError& e) {
        err << "numerical failure: " << e.what() << " at t=" << e.time();
        if (e.path_index()) err << " (path " << *e.path_index() << ")";
        err << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return kExitConfig;
}

}  // namespace seihrd
