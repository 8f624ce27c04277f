#include "seihrd/integrator.hpp"

#include <cmath>

#include "seihrd/errors.hpp"

namespace seihrd {

Trajectory integrate(const StateVector& initial, const RatePath& rate_path, const Model& model,
                     const Tolerances& tol) {
    const TimeGrid& grid = rate_path.grid;
    if (rate_path.values.size() != grid.nodes) {
        throw ParameterError("integrate: rate path length does not match its grid");
    }

    Trajectory traj{grid, {}, rate_path};
    traj.states.reserve(grid.nodes);
    traj.states.push_back(initial);

    dopri::Vec<kCompartments> y = initial.values;
    double t = grid.t_start;
    double h = grid.dt;
    for (std::size_t i = 0; i + 1 < grid.nodes; ++i) {
        const double beta = rate_path.values[i];
        auto rhs = [&](double s, const dopri::Vec<kCompartments>& v) {
            return model.vector_field(StateVector{v}, s, beta).values;
        };
        const double t_next = grid.time(i + 1);
        dopri::advance<kCompartments>(rhs, t, y, t_next, h, tol);
        t = t_next;
        traj.states.push_back(StateVector{y});
    }
    return traj;
}

Trajectory integrate_deterministic(const Model& model, const TimeGrid& grid, const Tolerances& tol) {
    return integrate(model.initial_state(), constant_path(grid, model.params().beta_I), model, tol);
}

TimeGrid model_grid(const Model& model, double dt) { return TimeGrid::uniform(0.0, model.horizon(), dt); }

}  // namespace seihrd
