#include "seihrd/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace seihrd {

double quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw std::invalid_argument("quantile of an empty sample");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("quantile probability outside [0,1]");
    const double h = static_cast<double>(sorted.size() - 1) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= sorted.size()) return sorted.back();
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double quantile(std::span<const double> samples, double p) {
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    return quantile_sorted(sorted, p);
}

double mean(std::span<const double> samples) {
    if (samples.empty()) return 0.0;
    double s = 0.0;
    for (double v : samples) s += v;
    return s / static_cast<double>(samples.size());
}

double standard_deviation(std::span<const double> samples) {
    if (samples.size() < 2) return 0.0;
    const double m = mean(samples);
    double ss = 0.0;
    for (double v : samples) ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(samples.size() - 1));
}

Histogram histogram(std::span<const double> samples, std::size_t bin_count) {
    if (bin_count == 0) throw std::invalid_argument("histogram needs at least one bin");
    Histogram h;
    h.counts.assign(bin_count, 0);
    if (samples.empty()) return h;
    const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
    h.lo = *lo;
    h.hi = *hi;
    const double width = h.hi - h.lo;
    for (double v : samples) {
        std::size_t bin = 0;
        if (width > 0.0) {
            bin = static_cast<std::size_t>((v - h.lo) / width * static_cast<double>(bin_count));
            bin = std::min(bin, bin_count - 1);
        }
        ++h.counts[bin];
    }
    return h;
}

}  // namespace seihrd
