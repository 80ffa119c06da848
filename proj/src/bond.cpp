#include "hcir/bond.hpp"

#include <cmath>

namespace hcir {

BondCoefficients bond_coeffs(const ModelParams& params, double tau) {
    BondCoefficients c;
    c.gamma = std::sqrt(params.alpha * params.alpha + 2.0 * params.eta * params.eta);
    if (tau <= 0.0) return c;  // log_a = b = 0 at maturity
    const double em1 = std::expm1(c.gamma * tau);
    const double denom = (params.alpha + c.gamma) * em1 + 2.0 * c.gamma;
    c.b = 2.0 * em1 / denom;
    c.log_a = (2.0 * params.alpha * params.beta / (params.eta * params.eta)) *
              (std::log(2.0 * c.gamma) + 0.5 * (c.gamma + params.alpha) * tau -
               std::log(denom));
    return c;
}

double bond_price(const ModelParams& params, double r, double t, double maturity) {
    const BondCoefficients c = bond_coeffs(params, maturity - t);
    return std::exp(c.log_a - c.b * r);
}

double bond_dzdr(const ModelParams& params, double r, double t, double maturity) {
    const BondCoefficients c = bond_coeffs(params, maturity - t);
    return -c.b * std::exp(c.log_a - c.b * r);
}

double bond_pde_residual(const ModelParams& params, std::span<const double> r_grid,
                         std::span<const double> t_grid) {
    const std::size_t nr = r_grid.size();
    const std::size_t nt = t_grid.size();
    const double maturity = t_grid.back();
    const double dr = r_grid[1] - r_grid[0];
    const double dt = t_grid[1] - t_grid[0];

    double worst = 0.0;
    for (std::size_t m = 1; m + 1 < nt; ++m) {
        const double t = t_grid[m];
        for (std::size_t k = 1; k + 1 < nr; ++k) {
            const double r = r_grid[k];
            const double z = bond_price(params, r, t, maturity);
            const double z_t = (bond_price(params, r, t_grid[m + 1], maturity) -
                                bond_price(params, r, t_grid[m - 1], maturity)) /
                               (2.0 * dt);
            const double z_r = (bond_price(params, r_grid[k + 1], t, maturity) -
                                bond_price(params, r_grid[k - 1], t, maturity)) /
                               (2.0 * dr);
            const double z_rr = (bond_price(params, r_grid[k + 1], t, maturity) -
                                 2.0 * z +
                                 bond_price(params, r_grid[k - 1], t, maturity)) /
                                (dr * dr);
            const double residual = z_t + 0.5 * params.eta * params.eta * r * z_rr +
                                    params.alpha * (params.beta - r) * z_r - r * z;
            worst = std::max(worst, std::abs(residual));
        }
    }
    return worst;
}

}  // namespace hcir
