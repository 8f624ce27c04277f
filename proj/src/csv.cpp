#include "seihrd/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace seihrd {

namespace {

class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& file, const std::vector<std::string>& header)
        : path_(file), out_(file) {
        if (!out_) throw std::runtime_error("cannot open " + file.string() + " for writing");
        row(header);
    }

    template <class Range>
    void row(const Range& cells) {
        bool first = true;
        for (const auto& c : cells) {
            if (!first) out_ << ',';
            out_ << c;
            first = false;
        }
        out_ << '\n';
    }

    void finish() {
        out_.flush();
        if (!out_) throw std::runtime_error("write failed: " + path_.string());
    }

private:
    std::filesystem::path path_;
    std::ofstream out_;
};

}  // namespace

std::string format_value(double v) {
    char buf[64];
    if (std::isfinite(v) && std::abs(v) >= 1e6) {
        std::snprintf(buf, sizeof buf, "%.0f", v);
    } else {
        std::snprintf(buf, sizeof buf, "%.6g", v);
    }
    std::string s(buf);
    if (s == "-0") s = "0";
    return s;
}

void write_trajectory_csv(const Trajectory& traj, const std::filesystem::path& file) {
    CsvWriter w(file, {"t", "S", "E", "I", "Iu", "HR", "HD", "Rd", "Ru", "D", "beta"});
    std::vector<std::string> cells;
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        cells.clear();
        cells.push_back(format_value(traj.grid.time(i)));
        for (double v : traj.states[i].values) cells.push_back(format_value(v < 0.0 ? 0.0 : v));
        cells.push_back(format_value(traj.rate_path.values.at(i)));
        w.row(cells);
    }
    w.finish();
}

void write_summary_csv(const EnsembleSummary& summary, const std::filesystem::path& file) {
    CsvWriter w(file, {"variable", "t", "mean", "q1", "q3", "p95"});
    for (std::size_t vi = 0; vi < summary.variables.size(); ++vi) {
        for (std::size_t ti = 0; ti < summary.report_times.size(); ++ti) {
            const auto& s = summary.at(ti, vi);
            w.row(std::vector<std::string>{std::string(variable_name(summary.variables[vi])),
                                           format_value(summary.report_times[ti]), format_value(s.mean),
                                           format_value(s.q1), format_value(s.q3), format_value(s.p_ws)});
        }
    }
    w.finish();
}

void write_indicators_csv(const IndicatorSeries& s, const std::filesystem::path& file) {
    CsvWriter w(file, {"t", "c_m", "d_m", "R_e", "Hos", "MHos", "Gamma_E", "Gamma_Iu", "Gamma_H"});
    for (std::size_t i = 0; i < s.c_m.size(); ++i) {
        w.row(std::vector<std::string>{format_value(s.grid.time(i)), format_value(s.c_m[i]), format_value(s.d_m[i]),
                                       format_value(s.R_e[i]), format_value(s.Hos[i]), format_value(s.MHos[i]),
                                       format_value(s.Gamma_E[i]), format_value(s.Gamma_Iu[i]),
                                       format_value(s.Gamma_H[i])});
    }
    w.finish();
}

void write_daily_csv(const IndicatorSeries& s, const std::filesystem::path& file) {
    CsvWriter w(file, {"day", "daily_reported", "daily_deaths", "daily_recovered"});
    const double first_day = std::ceil(s.grid.t_start - 1e-9);
    for (std::size_t d = 0; d < s.daily_reported.size(); ++d) {
        w.row(std::vector<std::string>{format_value(first_day + static_cast<double>(d)),
                                       format_value(s.daily_reported[d]), format_value(s.daily_deaths[d]),
                                       format_value(s.daily_recovered[d])});
    }
    w.finish();
}

void write_histogram_csv(const Histogram& h, const std::filesystem::path& file) {
    CsvWriter w(file, {"bin_lower", "bin_upper", "count"});
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
        w.row(std::vector<std::string>{format_value(h.bin_lower(i)), format_value(h.bin_upper(i)),
                                       std::to_string(h.counts[i])});
    }
    w.finish();
}

std::size_t CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    throw std::out_of_range("no CSV column '" + name + "'");
}

std::vector<double> CsvTable::numbers(const std::string& name) const {
    const std::size_t c = column(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(std::stod(r.at(c)));
    return out;
}

CsvTable read_csv(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open " + file.string());
    auto split = [](const std::string& line) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        return cells;
    };
    CsvTable t;
    std::string line;
    if (std::getline(in, line)) t.header = split(line);
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        t.rows.push_back(split(line));
    }
    return t;
}

}  // namespace seihrd
