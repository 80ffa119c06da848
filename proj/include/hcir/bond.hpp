#pragma once

#include <span>

#include "hcir/model.hpp"

namespace hcir {

/// Affine coefficients of the zero-coupon bond under the square-root rate:
/// ln Z(R, t; T) = log_a - b * R, with gamma = sqrt(alpha^2 + 2 eta^2).
/// b >= 0 and log_a <= 0 for tau = T - t >= 0; both vanish at tau = 0.
struct BondCoefficients {
    double gamma = 0.0;
    double log_a = 0.0;
    double b = 0.0;
};

/// Coefficients at time to maturity tau = T - t >= 0.
BondCoefficients bond_coeffs(const ModelParams& params, double tau);

/// Z(R, t; T) = exp(log_a - b R); Z(R, T, T) = 1 exactly.
double bond_price(const ModelParams& params, double r, double t, double maturity);

/// theta = dZ/dR = -b * Z, analytic.
double bond_dzdr(const ModelParams& params, double r, double t, double maturity);

/// Plugs the closed form into the central-difference discretization of the
/// bond PDE  Z_t + 1/2 eta^2 R Z_RR + alpha (beta - R) Z_R - R Z = 0
/// (lambda = 0) and returns the max |residual| over interior nodes of the
/// r_grid x t_grid mesh. Maturity is the last t node. Both grids must be
/// uniform with at least 3 nodes.
double bond_pde_residual(const ModelParams& params, std::span<const double> r_grid,
                         std::span<const double> t_grid);

}  // namespace hcir
