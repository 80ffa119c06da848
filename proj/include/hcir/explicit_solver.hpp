#pragma once

#include <span>

#include "hcir/cost_terms.hpp"
#include "hcir/douglas.hpp"
#include "hcir/model.hpp"

namespace hcir {

/// Parabolic CFL heuristic: dt <= 0.4 / max over nodes of
/// (V S^2/dS^2 + sigma^2 V/dV^2 + eta^2 R/dR^2), capped at the grid's own
/// time step (degenerate all-zero diffusion would otherwise be unbounded).
double stable_dt_estimate(const Grid3D& grid, const ModelParams& params);

/// One forward-Euler step C_next = C_prev + dt (A C_prev + phi) on the same
/// stencils as the ADI scheme, Dirichlet planes re-imposed. Identical to a
/// Douglas step with theta1 = 0. Throws NonFiniteError (with step_index) on
/// blow-up.
PriceField explicit_step(const PriceField& prev, const Grid3D& grid, const ModelParams& params,
                         const CostSourceField* phi, double dt, int step_index = 1);

/// Reference solve at the stability-limited step: runs ceil(T / stable_dt)
/// explicit steps. The reported diagnostics have one entry per step.
SolveReport solve_explicit(const ModelParams& params, const OptionSpec& option,
                           const CostParams& costs, const GridSpec& spec,
                           std::span<const QueryPoint> queries);

}  // namespace hcir
