#include "seihrd/grid.hpp"

#include <cmath>

#include "seihrd/errors.hpp"

namespace seihrd {

TimeGrid TimeGrid::uniform(double t_start, double t_end, double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ParameterError("time grid: dt must be > 0");
    if (!(t_end > t_start)) throw ParameterError("time grid: t_end must be after t_start");
    const double steps = std::round((t_end - t_start) / dt);
    if (std::abs(steps * dt - (t_end - t_start)) > 1e-9 * dt * std::max(1.0, steps)) {
        throw ParameterError("time grid: span is not a whole number of steps of dt");
    }
    return {t_start, t_end, dt, static_cast<std::size_t>(steps) + 1};
}

std::optional<std::size_t> TimeGrid::node_at(double t) const {
    const double k = std::round((t - t_start) / dt);
    if (k < 0.0 || k >= static_cast<double>(nodes)) return std::nullopt;
    if (std::abs(time(static_cast<std::size_t>(k)) - t) > 1e-9 * dt) return std::nullopt;
    return static_cast<std::size_t>(k);
}

std::optional<std::size_t> TimeGrid::steps_per_day() const {
    const double k = std::round(1.0 / dt);
    if (k < 1.0 || std::abs(k * dt - 1.0) > 1e-9) return std::nullopt;
    return static_cast<std::size_t>(k);
}

}  // namespace seihrd
