#pragma once

#include "hcir/model.hpp"

namespace hcir {

/// Explicit nonlinear source phi = -(F1 + F2 + F3) of the reversed-time PDE,
/// evaluated on the previous time level, plus clamp diagnostics. The radicands
/// of F1/F2 are analytically nonnegative for |rho| <= 1; the clamp exists for
/// round-off only, and the diagnostics record how often and how hard it fired
/// relative to the leading radicand terms.
struct CostSourceField {
    PriceField phi;
    long clamp_count = 0;
    double max_clamp_rel = 0.0;
};

/// F1 = k0 S sqrt(2/(pi dt)) sqrt(V S^2 C_SS^2 + sigma^2 V C_SV^2
///      + 2 rho V sigma S C_SS C_SV), radicand clamped at 0.
/// Second derivatives use the same central stencils as the linear operators:
/// the S_max row uses the dC/dS = 1 ghost, the mixed stencil is zero outside
/// 1<=i<=M-1, 1<=j<=J-1. Requires costs.delta_t > 0.
PriceField eval_f1(const PriceField& field, const Grid3D& grid, const ModelParams& params,
                   const CostParams& costs);

/// F2 = k1 V sqrt(2/(pi dt)) sqrt(sigma^2 V C_VV^2 + V S^2 C_SV^2
///      + 2 rho V sigma S C_VV C_SV), radicand clamped at 0.
PriceField eval_f2(const PriceField& field, const Grid3D& grid, const ModelParams& params,
                   const CostParams& costs);

/// F3 = k2 sqrt(R) sqrt(2/(pi dt)) (Z/|theta|) eta |C_RR| with Z, theta from
/// the bond closed form at time to maturity tau_b (the solver floors tau_b at
/// one time step so theta != 0). Throws DegenerateThetaError when |theta|
/// falls below 1e-12 anyway.
PriceField eval_f3(const PriceField& field, const Grid3D& grid, const ModelParams& params,
                   const CostParams& costs, double tau_b);

/// phi = -(F1 + F2 + F3) in one pass; identically zero when k0=k1=k2=0.
CostSourceField assemble_phi(const PriceField& field, const Grid3D& grid,
                             const ModelParams& params, const CostParams& costs,
                             double tau_b);

}  // namespace hcir
