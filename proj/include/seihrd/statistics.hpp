#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace seihrd {

/// Quantile with linear interpolation between order statistics at rank
/// h = (n - 1) p (0-based); p = 0 gives the minimum, p = 1 the maximum.
/// Throws std::invalid_argument for empty input or p outside [0,1].
double quantile(std::span<const double> samples, double p);

/// Same rule on data that is already sorted ascending.
double quantile_sorted(std::span<const double> sorted, double p);

double mean(std::span<const double> samples);
/// Unbiased sample standard deviation (0 for fewer than two samples).
double standard_deviation(std::span<const double> samples);

/// Equal-width bins over [lo, hi] = [min, max] of the samples. The last bin is
/// closed on the right. Degenerate data (min == max) lands in the first bin.
struct Histogram {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<std::size_t> counts;

    double bin_width() const { return counts.empty() ? 0.0 : (hi - lo) / static_cast<double>(counts.size()); }
    double bin_lower(std::size_t i) const { return lo + bin_width() * static_cast<double>(i); }
    double bin_upper(std::size_t i) const { return i + 1 == counts.size() ? hi : bin_lower(i + 1); }
};

/// Throws std::invalid_argument if bin_count == 0.
Histogram histogram(std::span<const double> samples, std::size_t bin_count);

}  // namespace seihrd
