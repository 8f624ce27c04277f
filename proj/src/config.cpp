#include "seihrd/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "seihrd/errors.hpp"

namespace seihrd {

namespace pt = boost::property_tree;

namespace {

const std::set<std::string> kEmitKinds{"trajectory", "summary", "indicators", "histograms", "curves"};

// Section -> accepted keys.
const std::map<std::string, std::set<std::string>> kSchema{
    {"model",
     {"N", "t0", "lambda1", "lambda2", "T", "theta_low", "theta_high", "alpha_H", "d_E", "d_I", "d_Iu",
      "d_g", "delta_R", "C_o", "p", "beta_I", "C_E", "C_u", "delta_omega", "omega_low", "kappa1"}},
    {"cir", {"nu", "mu", "sigma", "beta0", "scheme"}},
    {"ensemble", {"paths", "seed", "dt", "report_times", "percentile_ws", "rel_tol", "abs_tol", "threads"}},
    {"indicators", {"hospital_lag", "histogram_bins", "histogram_variable", "histogram_time"}},
    {"output", {"dir", "emit"}},
};

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto comma = s.find(',', start);
        const auto item = trim(s.substr(start, comma == std::string_view::npos ? s.npos : comma - start));
        if (!item.empty()) out.push_back(item);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

double to_double(const std::string& field, const std::string& text) {
    const std::string s = trim(text);
    // "a/b" is accepted so steps like 1/6 can be written exactly.
    if (const auto slash = s.find('/'); slash != std::string::npos) {
        const double num = to_double(field, s.substr(0, slash));
        const double den = to_double(field, s.substr(slash + 1));
        if (den == 0.0) throw ConfigError(field + ": division by zero in '" + s + "'");
        return num / den;
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
        throw ConfigError(field + ": expected a number, got '" + s + "'");
    }
    return v;
}

template <class Int>
Int to_integer(const std::string& field, const std::string& text) {
    const std::string s = trim(text);
    Int v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
        throw ConfigError(field + ": expected a non-negative integer, got '" + s + "'");
    }
    return v;
}

std::string shortest(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

class Reader {
public:
    explicit Reader(const pt::ptree& tree) : tree_(tree) {}

    std::optional<std::string> get(const std::string& key) const {
        if (auto v = tree_.get_optional<std::string>(pt::ptree::path_type(key, '.'))) return trim(*v);
        return std::nullopt;
    }
    std::string require(const std::string& key) const {
        auto v = get(key);
        if (!v) throw ConfigError(key + ": missing required field");
        return *v;
    }
    double number(const std::string& key) const { return to_double(key, require(key)); }

    template <class T, class F>
    void optional(const std::string& key, T& target, F&& convert) const {
        if (auto v = get(key)) target = convert(key, *v);
    }

private:
    const pt::ptree& tree_;
};

Date to_date(const std::string& field, const std::string& text) {
    try {
        return parse_date(text);
    } catch (const ParameterError& e) {
        throw ConfigError(field + ": " + e.what());
    }
}

}  // namespace

std::string_view scheme_name(CirScheme s) { return s == CirScheme::exact ? "exact" : "euler_maruyama"; }

std::string_view hospital_lag_name(HospitalLag lag) { return lag == HospitalLag::days ? "days" : "grid_nodes"; }

void RunConfig::validate() const {
    try {
        model.validate();
        cir.validate();
    } catch (const ParameterError& e) {
        throw ConfigError(e.what());
    }
    if (paths < 1) throw ConfigError("ensemble.paths: must be >= 1");
    if (!(dt > 0.0)) throw ConfigError("ensemble.dt: must be > 0");
    if (report_times.empty()) throw ConfigError("ensemble.report_times: at least one time required");
    if (!(percentile_ws >= 0.0 && percentile_ws <= 1.0)) throw ConfigError("ensemble.percentile_ws: must lie in [0,1]");
    if (!(tolerances.rel_tol > 0.0)) throw ConfigError("ensemble.rel_tol: must be > 0");
    if (!(tolerances.abs_tol > 0.0)) throw ConfigError("ensemble.abs_tol: must be > 0");
    if (threads < 0) throw ConfigError("ensemble.threads: must be >= 0");
    if (histogram_bins < 1) throw ConfigError("indicators.histogram_bins: must be >= 1");
    for (const auto& e : emit) {
        if (!kEmitKinds.count(e)) throw ConfigError("output.emit: unknown output kind '" + e + "'");
    }
    try {
        const auto grid = ensemble_config().grid;
        for (double t : report_times) {
            if (!grid.node_at(t)) {
                throw ConfigError("ensemble.report_times: " + shortest(t) + " is not a node of the time grid");
            }
        }
        if (!grid.node_at(histogram_time)) {
            throw ConfigError("indicators.histogram_time: " + shortest(histogram_time) + " is not a grid node");
        }
    } catch (const ParameterError& e) {
        throw ConfigError(std::string("ensemble.dt: ") + e.what());
    }
}

EnsembleConfig RunConfig::ensemble_config() const {
    const Model m(model);
    EnsembleConfig c;
    c.n_paths = paths;
    c.master_seed = seed;
    c.cir = cir;
    c.grid = model_grid(m, dt);
    c.tolerances = tolerances;
    c.report_times = report_times;
    c.percentile_ws = percentile_ws;
    c.indicators = indicators;
    c.scheme = scheme;
    c.threads = threads;
    return c;
}

RunConfig default_config() { return RunConfig{}; }

RunConfig parse_config_text(std::string_view text) {
    pt::ptree tree;
    try {
        std::istringstream in{std::string(text)};
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("config syntax: ") + e.what());
    }
    for (const auto& [section, body] : tree) {
        const auto schema = kSchema.find(section);
        if (schema == kSchema.end()) throw ConfigError("unknown config section [" + section + "]");
        for (const auto& [key, value] : body) {
            if (!schema->second.count(key)) throw ConfigError(section + "." + key + ": unknown key");
        }
    }

    const Reader r(tree);
    RunConfig c;
    ModelParameters& m = c.model;
    m.N = r.number("model.N");
    m.t0 = to_date("model.t0", r.require("model.t0"));
    m.lambda1 = to_date("model.lambda1", r.require("model.lambda1"));
    m.lambda2 = to_date("model.lambda2", r.require("model.lambda2"));
    m.T = to_date("model.T", r.require("model.T"));
    m.theta_low = r.number("model.theta_low");
    m.theta_high = r.number("model.theta_high");
    m.alpha_H = r.number("model.alpha_H");
    m.d_E = r.number("model.d_E");
    m.d_I = r.number("model.d_I");
    m.d_Iu = r.number("model.d_Iu");
    m.d_g = r.number("model.d_g");
    m.delta_R = r.number("model.delta_R");
    m.C_o = r.number("model.C_o");
    m.p = r.number("model.p");
    m.beta_I = r.number("model.beta_I");
    m.C_E = r.number("model.C_E");
    m.C_u = r.number("model.C_u");
    m.delta_omega = r.number("model.delta_omega");
    m.omega_low = r.number("model.omega_low");
    m.kappa1 = r.number("model.kappa1");

    c.cir.mu = m.beta_I;
    r.optional("cir.nu", c.cir.nu, to_double);
    r.optional("cir.mu", c.cir.mu, to_double);
    c.cir.beta0 = c.cir.mu;
    r.optional("cir.sigma", c.cir.sigma, to_double);
    r.optional("cir.beta0", c.cir.beta0, to_double);
    r.optional("cir.scheme", c.scheme, [](const std::string& field, const std::string& v) {
        if (v == "exact") return CirScheme::exact;
        if (v == "euler_maruyama") return CirScheme::euler_maruyama;
        throw ConfigError(field + ": expected 'exact' or 'euler_maruyama', got '" + v + "'");
    });

    r.optional("ensemble.paths", c.paths, to_integer<std::size_t>);
    r.optional("ensemble.seed", c.seed, to_integer<std::uint64_t>);
    r.optional("ensemble.dt", c.dt, to_double);
    r.optional("ensemble.report_times", c.report_times, [](const std::string& field, const std::string& v) {
        std::vector<double> times;
        for (const auto& item : split_list(v)) times.push_back(to_double(field, item));
        return times;
    });
    r.optional("ensemble.percentile_ws", c.percentile_ws, to_double);
    c.tolerances = Tolerances::for_population(m.N);
    r.optional("ensemble.rel_tol", c.tolerances.rel_tol, to_double);
    r.optional("ensemble.abs_tol", c.tolerances.abs_tol, to_double);
    r.optional("ensemble.threads", c.threads, to_integer<int>);

    r.optional("indicators.hospital_lag", c.indicators.hospital_lag,
               [](const std::string& field, const std::string& v) {
                   if (v == "grid_nodes") return HospitalLag::grid_nodes;
                   if (v == "days") return HospitalLag::days;
                   throw ConfigError(field + ": expected 'grid_nodes' or 'days', got '" + v + "'");
               });
    r.optional("indicators.histogram_bins", c.histogram_bins, to_integer<std::size_t>);
    r.optional("indicators.histogram_variable", c.histogram_variable,
               [](const std::string& field, const std::string& v) {
                   if (auto var = parse_variable(v)) return *var;
                   throw ConfigError(field + ": unknown variable '" + v + "'");
               });
    r.optional("indicators.histogram_time", c.histogram_time, to_double);

    r.optional("output.dir", c.output_dir, [](const std::string&, const std::string& v) { return v; });
    r.optional("output.emit", c.emit, [](const std::string&, const std::string& v) {
        const auto items = split_list(v);
        return std::set<std::string>(items.begin(), items.end());
    });

    c.validate();
    return c;
}

RunConfig parse_config(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot open config file " + file.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config_text(text.str());
}

std::string format_config(const RunConfig& c) {
    const ModelParameters& m = c.model;
    std::ostringstream o;
    o << "[model]\n"
      << "N = " << shortest(m.N) << "\n"
      << "t0 = " << format_date(m.t0) << "\n"
      << "lambda1 = " << format_date(m.lambda1) << "\n"
      << "lambda2 = " << format_date(m.lambda2) << "\n"
      << "T = " << format_date(m.T) << "\n"
      << "theta_low = " << shortest(m.theta_low) << "\n"
      << "theta_high = " << shortest(m.theta_high) << "\n"
      << "alpha_H = " << shortest(m.alpha_H) << "\n"
      << "d_E = " << shortest(m.d_E) << "\n"
      << "d_I = " << shortest(m.d_I) << "\n"
      << "d_Iu = " << shortest(m.d_Iu) << "\n"
      << "d_g = " << shortest(m.d_g) << "\n"
      << "delta_R = " << shortest(m.delta_R) << "\n"
      << "C_o = " << shortest(m.C_o) << "\n"
      << "p = " << shortest(m.p) << "\n"
      << "beta_I = " << shortest(m.beta_I) << "\n"
      << "C_E = " << shortest(m.C_E) << "\n"
      << "C_u = " << shortest(m.C_u) << "\n"
      << "delta_omega = " << shortest(m.delta_omega) << "\n"
      << "omega_low = " << shortest(m.omega_low) << "\n"
      << "kappa1 = " << shortest(m.kappa1) << "\n\n";
    o << "[cir]\n"
      << "nu = " << shortest(c.cir.nu) << "\n"
      << "mu = " << shortest(c.cir.mu) << "\n"
      << "sigma = " << shortest(c.cir.sigma) << "\n"
      << "beta0 = " << shortest(c.cir.beta0) << "\n"
      << "scheme = " << scheme_name(c.scheme) << "\n\n";
    o << "[ensemble]\n"
      << "paths = " << c.paths << "\n"
      << "seed = " << c.seed << "\n"
      << "dt = " << shortest(c.dt) << "\n"
      << "report_times = ";
    for (std::size_t i = 0; i < c.report_times.size(); ++i) o << (i ? ", " : "") << shortest(c.report_times[i]);
    o << "\n"
      << "percentile_ws = " << shortest(c.percentile_ws) << "\n"
      << "rel_tol = " << shortest(c.tolerances.rel_tol) << "\n"
      << "abs_tol = " << shortest(c.tolerances.abs_tol) << "\n"
      << "threads = " << c.threads << "\n\n";
    o << "[indicators]\n"
      << "hospital_lag = " << hospital_lag_name(c.indicators.hospital_lag) << "\n"
      << "histogram_bins = " << c.histogram_bins << "\n"
      << "histogram_variable = " << variable_name(c.histogram_variable) << "\n"
      << "histogram_time = " << shortest(c.histogram_time) << "\n\n";
    o << "[output]\n";
    if (!c.output_dir.empty()) o << "dir = " << c.output_dir << "\n";
    o << "emit = ";
    bool first = true;
    for (const auto& e : c.emit) {
        o << (first ? "" : ", ") << e;
        first = false;
    }
    o << "\n";
    return o.str();
}

void write_config(const RunConfig& config, const std::filesystem::path& file) {
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    out << format_config(config);
    if (!out) throw std::runtime_error("write failed: " + file.string());
}

}  // namespace seihrd
