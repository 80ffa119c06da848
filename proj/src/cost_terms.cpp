#include "hcir/cost_terms.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "hcir/bond.hpp"

namespace hcir {

namespace {

struct ClampStats {
    long count = 0;
    double max_rel = 0.0;

    // Clamps a radicand at zero; a negative value can only be round-off since
    // the quadratic form is PSD for |rho| <= 1.
    double clamp(double radicand, double leading) {
        if (radicand >= 0.0) return radicand;
        ++count;
        if (leading > 0.0) max_rel = std::max(max_rel, -radicand / leading);
        return 0.0;
    }
};

// Central second derivatives matching the linear operators' stencils.
// C_SS at i=M folds in the dC/dS = 1 ghost C_{M+1} = C_{M-1} + 2 dS; C_RR at
// the ends folds in the homogeneous Neumann ghosts. C_SS at the S=0 Dirichlet
// plane and C_VV on the V boundary planes are taken as zero: every use below
// multiplies them by a factor that vanishes there anyway (S, V, or the
// re-imposed linear plane data).
struct Derivatives {
    double css(const PriceField& f, const Grid3D& g, int i, int j, int k) const {
        const int m = f.ni - 1;
        if (i == 0) return 0.0;
        if (i == m)
            return 2.0 * (f.at(m - 1, j, k) - f.at(m, j, k) + g.ds) / (g.ds * g.ds);
        return (f.at(i + 1, j, k) - 2.0 * f.at(i, j, k) + f.at(i - 1, j, k)) /
               (g.ds * g.ds);
    }

    double cvv(const PriceField& f, const Grid3D& g, int i, int j, int k) const {
        if (j == 0 || j == f.nj - 1) return 0.0;
        return (f.at(i, j + 1, k) - 2.0 * f.at(i, j, k) + f.at(i, j - 1, k)) /
               (g.dv * g.dv);
    }

    double csv(const PriceField& f, const Grid3D& g, int i, int j, int k) const {
        if (i == 0 || i == f.ni - 1 || j == 0 || j == f.nj - 1) return 0.0;
        return (f.at(i + 1, j + 1, k) - f.at(i + 1, j - 1, k) - f.at(i - 1, j + 1, k) +
                f.at(i - 1, j - 1, k)) /
               (4.0 * g.ds * g.dv);
    }

    double crr(const PriceField& f, const Grid3D& g, int i, int j, int k) const {
        const int m = f.nk - 1;
        if (k == 0) return 2.0 * (f.at(i, j, 1) - f.at(i, j, 0)) / (g.dr * g.dr);
        if (k == m)
            return 2.0 * (f.at(i, j, m - 1) - f.at(i, j, m)) / (g.dr * g.dr);
        return (f.at(i, j, k + 1) - 2.0 * f.at(i, j, k) + f.at(i, j, k - 1)) /
               (g.dr * g.dr);
    }
};

double rebalance_factor(const CostParams& costs) {
    if (!(costs.delta_t > 0.0)) {
        throw ValidationError("NonPositiveParameter", "delta_t",
                              "cost evaluation needs delta_t > 0");
    }
    return std::sqrt(2.0 / (std::numbers::pi * costs.delta_t));
}

double f1_at(const PriceField& f, const Grid3D& g, const ModelParams& p, double k0,
             double q, const Derivatives& d, ClampStats& stats, int i, int j, int k) {
    const double s = g.s[i], v = g.v[j];
    const double css = d.css(f, g, i, j, k);
    const double csv = d.csv(f, g, i, j, k);
    const double t1 = v * s * s * css * css;
    const double t2 = p.sigma * p.sigma * v * csv * csv;
    const double cross = 2.0 * p.rho * v * p.sigma * s * css * csv;
    const double rad = stats.clamp(t1 + t2 + cross, t1 + t2 + std::abs(cross));
    return k0 * s * q * std::sqrt(rad);
}

double f2_at(const PriceField& f, const Grid3D& g, const ModelParams& p, double k1,
             double q, const Derivatives& d, ClampStats& stats, int i, int j, int k) {
    const double s = g.s[i], v = g.v[j];
    const double cvv = d.cvv(f, g, i, j, k);
    const double csv = d.csv(f, g, i, j, k);
    const double t1 = p.sigma * p.sigma * v * cvv * cvv;
    const double t2 = v * s * s * csv * csv;
    const double cross = 2.0 * p.rho * v * p.sigma * s * cvv * csv;
    const double rad = stats.clamp(t1 + t2 + cross, t1 + t2 + std::abs(cross));
    return k1 * v * q * std::sqrt(rad);
}

// Z/|theta| per R node; theta = -B Z is guarded at 1e-12.
std::vector<double> bond_ratio(const Grid3D& g, const ModelParams& p, double tau_b) {
    const BondCoefficients c = bond_coeffs(p, tau_b);
    std::vector<double> ratio(g.nk());
    for (int k = 0; k < g.nk(); ++k) {
        const double z = std::exp(c.log_a - c.b * g.r[k]);
        const double theta = -c.b * z;
        if (std::abs(theta) < 1e-12) {
            throw DegenerateThetaError("dZ/dR = " + std::to_string(theta) +
                                       " at R = " + std::to_string(g.r[k]) +
                                       ", tau = " + std::to_string(tau_b));
        }
        ratio[k] = z / std::abs(theta);
    }
    return ratio;
}

double f3_at(const PriceField& f, const Grid3D& g, const ModelParams& p, double k2,
             double q, const std::vector<double>& ratio, const Derivatives& d, int i,
             int j, int k) {
    const double crr = d.crr(f, g, i, j, k);
    return k2 * std::sqrt(g.r[k]) * q * ratio[k] * p.eta * std::abs(crr);
}

}  // namespace

PriceField eval_f1(const PriceField& field, const Grid3D& grid, const ModelParams& params,
                   const CostParams& costs) {
    const double q = rebalance_factor(costs);
    Derivatives d;
    ClampStats stats;
    PriceField out(field.ni, field.nj, field.nk);
    for (int i = 0; i < field.ni; ++i)
        for (int j = 0; j < field.nj; ++j)
            for (int k = 0; k < field.nk; ++k)
                out.at(i, j, k) = f1_at(field, grid, params, costs.k0, q, d, stats, i, j, k);
    return out;
}

PriceField eval_f2(const PriceField& field, const Grid3D& grid, const ModelParams& params,
                   const CostParams& costs) {
    const double q = rebalance_factor(costs);
    Derivatives d;
    ClampStats stats;
    PriceField out(field.ni, field.nj, field.nk);
    for (int i = 0; i < field.ni; ++i)
        for (int j = 0; j < field.nj; ++j)
            for (int k = 0; k < field.nk; ++k)
                out.at(i, j, k) = f2_at(field, grid, params, costs.k1, q, d, stats, i, j, k);
    return out;
}

PriceField eval_f3(const PriceField& field, const Grid3D& grid, const ModelParams& params,
                   const CostParams& costs, double tau_b) {
    const double q = rebalance_factor(costs);
    Derivatives d;
    const std::vector<double> ratio = bond_ratio(grid, params, tau_b);
    PriceField out(field.ni, field.nj, field.nk);
    for (int i = 0; i < field.ni; ++i)
        for (int j = 0; j < field.nj; ++j)
            for (int k = 0; k < field.nk; ++k)
                out.at(i, j, k) = f3_at(field, grid, params, costs.k2, q, ratio, d, i, j, k);
    return out;
}

CostSourceField assemble_phi(const PriceField& field, const Grid3D& grid,
                             const ModelParams& params, const CostParams& costs,
                             double tau_b) {
    const double q = rebalance_factor(costs);
    Derivatives d;
    ClampStats stats;
    CostSourceField out;
    out.phi = PriceField(field.ni, field.nj, field.nk);
    out.phi.tau = field.tau;

    // F3's bond ratio only matters when k2 > 0; skip the theta guard otherwise.
    std::vector<double> ratio;
    if (costs.k2 > 0.0) ratio = bond_ratio(grid, params, tau_b);

    for (int i = 0; i < field.ni; ++i) {
        for (int j = 0; j < field.nj; ++j) {
            for (int k = 0; k < field.nk; ++k) {
                double sum = f1_at(field, grid, params, costs.k0, q, d, stats, i, j, k) +
                             f2_at(field, grid, params, costs.k1, q, d, stats, i, j, k);
                if (costs.k2 > 0.0)
                    sum += f3_at(field, grid, params, costs.k2, q, ratio, d, i, j, k);
                out.phi.at(i, j, k) = -sum;
            }
        }
    }
    out.clamp_count = stats.count;
    out.max_clamp_rel = stats.max_rel;
    return out;
}

}  // namespace hcir
