#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "seihrd/ensemble.hpp"
#include "seihrd/indicators.hpp"
#include "seihrd/integrator.hpp"
#include "seihrd/statistics.hpp"

namespace seihrd {

/// Six significant digits; magnitudes >= 1e6 are written as rounded integers
/// so population-sized counts never switch to exponent notation.
std::string format_value(double v);

// Writers throw std::runtime_error naming the path on I/O failure.

/// t,S,E,I,Iu,HR,HD,Rd,Ru,D,beta
void write_trajectory_csv(const Trajectory& traj, const std::filesystem::path& file);
/// variable,t,mean,q1,q3,p95
void write_summary_csv(const EnsembleSummary& summary, const std::filesystem::path& file);
/// t,c_m,d_m,R_e,Hos,MHos,Gamma_E,Gamma_Iu,Gamma_H
void write_indicators_csv(const IndicatorSeries& series, const std::filesystem::path& file);
/// day,daily_reported,daily_deaths,daily_recovered
void write_daily_csv(const IndicatorSeries& series, const std::filesystem::path& file);
/// bin_lower,bin_upper,count
void write_histogram_csv(const Histogram& h, const std::filesystem::path& file);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Index of a header column; throws std::out_of_range.
    std::size_t column(const std::string& name) const;
    /// Column parsed as doubles.
    std::vector<double> numbers(const std::string& name) const;
};

/// Reads a comma-separated file with a header row (no quoting).
CsvTable read_csv(const std::filesystem::path& file);

}  // namespace seihrd
