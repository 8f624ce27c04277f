#pragma once

#include <cstddef>
#include <optional>

namespace seihrd {

/// Uniform time grid t_i = t_start + i * dt, i = 0 .. nodes-1 (days).
struct TimeGrid {
    double t_start = 0.0;
    double t_end = 0.0;
    double dt = 0.0;
    std::size_t nodes = 0;

    /// Throws ParameterError unless dt > 0 and the span holds at least one step.
    static TimeGrid uniform(double t_start, double t_end, double dt);

    double time(std::size_t i) const { return t_start + static_cast<double>(i) * dt; }

    /// Index of the node at time t (within 1e-9 * dt), if any.
    std::optional<std::size_t> node_at(double t) const;

    /// Number of grid steps per day when 1/dt is an integer, otherwise nullopt.
    std::optional<std::size_t> steps_per_day() const;

    bool operator==(const TimeGrid&) const = default;
};

}  // namespace seihrd
