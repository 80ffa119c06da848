#pragma once

#include <span>
#include <vector>

#include "hcir/cost_terms.hpp"
#include "hcir/model.hpp"
#include "hcir/operators.hpp"

namespace hcir {

/// Douglas splitting parameters. theta1 = 2/3 gives the unconditionally
/// stable variant; theta1 = 0 degenerates a step to its explicit predictor.
struct DouglasConfig {
    double theta1 = 2.0 / 3.0;
    bool clamp_negative = false;
    double pivot_tol = 1e-14;  // relative pivot floor for the line solver
};

struct StepDiagnostics {
    double min_value = 0.0;
    double max_value = 0.0;
    long clamp_count = 0;
    double wall_ms = 0.0;
};

struct SolveReport {
    Grid3D grid;
    PriceField field;                          // final tau = T level
    std::vector<StepDiagnostics> steps;        // one entry per time step
    std::vector<double> prices;                // one entry per query point
    long cost_clamp_count = 0;                 // radicand clamps over all steps
    double wall_ms = 0.0;
};

/// One Douglas time step,
///   G0 = C_prev + dt (A C_prev + phi),            A = A_SV + A_S + A_V + A_R
///   (I - theta1 dt A_d) G_d = G_{d-1} - theta1 dt A_d C_prev,  d = S, V, R
///   C_next = G_3 with Dirichlet planes re-imposed,
/// with phi evaluated on the previous level. The S_max ghost row's affine
/// constant cancels between A_d G_d and A_d C_prev, so the corrections are
/// purely linear tridiagonal solves. Reusable across steps: holds the work
/// field and line scratch.
class DouglasStepper {
public:
    DouglasStepper(const Grid3D& grid, const ModelParams& params, const DouglasConfig& cfg);

    /// Advances field (C_prev on entry) by one step in place. phi may be null
    /// for the cost-free pure-linear path. step_index is used in diagnostics
    /// and NonFinite errors only.
    StepDiagnostics step(PriceField& field, const CostSourceField* phi, int step_index = 1);

private:
    void correct(const DirectionalOperator& op, const PriceField& prev);

    const Grid3D* grid_;
    ModelParams params_;
    DouglasConfig cfg_;
    DirectionalOperator op_s_, op_v_, op_r_;
    PriceField work_;
    std::vector<double> lower_, diag_, upper_, sub_, main_, sup_, rhs_, sol_, scratch_;
};

/// Single-step convenience wrapper (used by the dense micro-oracle tests).
PriceField douglas_step(const PriceField& prev, const Grid3D& grid, const ModelParams& params,
                        const DouglasConfig& cfg, const CostSourceField* phi = nullptr);

/// Full solve: payoff slice advanced n times, then queries sampled from the
/// final field. Costs with delta_t = 0 rebalance once per time step; the
/// bond's time to maturity inside F3 is floored at one step. Zero costs take
/// a pure-linear path in which no phi buffer exists at all.
SolveReport solve(const ModelParams& params, const OptionSpec& option, const CostParams& costs,
                  const GridSpec& spec, const DouglasConfig& cfg,
                  std::span<const QueryPoint> queries);

}  // namespace hcir
