#pragma once

#include <vector>

#include "seihrd/cir.hpp"
#include "seihrd/dopri.hpp"
#include "seihrd/grid.hpp"
#include "seihrd/model.hpp"

namespace seihrd {

/// One realization of the model on a uniform grid together with the contact
/// rate path that drove it. states[i] is the state at grid.time(i).
struct Trajectory {
    TimeGrid grid;
    std::vector<StateVector> states;
    RatePath rate_path;
};

/// Solves the compartment system along `rate_path`, holding the contact rate at
/// rate_path.values[i] on [t_i, t_{i+1}). Adaptive steps never cross a grid node.
Trajectory integrate(const StateVector& initial, const RatePath& rate_path, const Model& model,
                     const Tolerances& tol);

/// Constant contact rate beta_I from the standard initial state.
Trajectory integrate_deterministic(const Model& model, const TimeGrid& grid, const Tolerances& tol);

/// Grid covering [0, horizon] of the model.
TimeGrid model_grid(const Model& model, double dt);

}  // namespace seihrd
