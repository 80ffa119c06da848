#pragma once

#include <cstddef>
#include <vector>

#include "hcir/errors.hpp"

namespace hcir {

/// Model constants of the three-factor dynamics: asset with stochastic variance V
/// and stochastic short rate R, both square-root processes. alpha/beta drive the
/// rate drift used by the PDE and the bond closed form; a/b/k/zeta parameterize
/// the SDE-side drifts used only by the Monte Carlo oracle's sde_paper mode.
struct ModelParams {
    double sigma = 0.05;  // vol of variance, per sqrt(year)
    double eta = 0.2;     // vol of rate, per sqrt(year)
    double rho = 0.8;     // asset-variance correlation
    double alpha = 0.5;   // rate mean-reversion speed, 1/year
    double beta = 0.1;    // rate mean-reversion level, 1/year
    double a = 0.5;       // SDE-side rate speed (MC oracle only)
    double b = 0.05;      // SDE-side rate level (MC oracle only)
    double k = 0.0;       // SDE-side variance speed (MC oracle only)
    double zeta = 0.0;    // SDE-side variance level (MC oracle only)
    double lambda = 0.0;  // market price of rate risk, kept at 0
};

/// Throws ValidationError unless sigma, eta, alpha, beta > 0, |rho| <= 1 and
/// a, b, k, zeta >= 0. Idempotent: valid params pass unchanged.
void validate(const ModelParams& params);

/// European call contract.
struct OptionSpec {
    double strike = 100.0;
    double maturity = 1.0;  // years
};

/// strike > 0, maturity >= 0. Zero maturity is accepted here so the CLI can
/// answer expiry queries with the payoff; the solvers require maturity > 0.
void validate(const OptionSpec& option);

/// Proportional transaction-cost rates. delta_t is the hedge rebalancing
/// interval in the sqrt(2/(pi*delta_t)) factor; 0 means "one rebalance per
/// solver time step", resolved to the actual step before evaluation.
struct CostParams {
    double k0 = 0.0;  // asset cost rate
    double k1 = 0.0;  // variance-instrument cost rate
    double k2 = 0.0;  // bond cost rate
    double delta_t = 0.0;
};

void validate(const CostParams& costs);
bool zero_costs(const CostParams& costs);

/// Uniform box [0,s_max]x[0,v_max]x[0,r_max] with m/j/k spatial intervals per
/// direction and n time steps.
struct GridSpec {
    double s_max = 500.0;
    double v_max = 1.0;
    double r_max = 1.0;
    int m = 200;
    int j = 20;
    int k = 20;
    int n = 10;
};

void validate(const GridSpec& spec);

/// Node coordinates and spacings of a built grid. Coordinates are strictly
/// increasing with constant spacing; s[0] = v[0] = r[0] = 0.
struct Grid3D {
    std::vector<double> s;  // m+1 nodes
    std::vector<double> v;  // j+1 nodes
    std::vector<double> r;  // k+1 nodes
    double ds = 0.0;
    double dv = 0.0;
    double dr = 0.0;
    double dt = 0.0;  // maturity / n
    int n = 0;        // time step count

    int ni() const { return static_cast<int>(s.size()); }
    int nj() const { return static_cast<int>(v.size()); }
    int nk() const { return static_cast<int>(r.size()); }
    std::size_t nodes() const { return s.size() * v.size() * r.size(); }
};

/// One time level of the solution, C[i][j][k] flattened with k fastest.
/// tau is time since expiry in the reversed-time variable.
struct PriceField {
    int ni = 0;
    int nj = 0;
    int nk = 0;
    double tau = 0.0;
    std::vector<double> values;

    PriceField() = default;
    PriceField(int ni_, int nj_, int nk_)
        : ni(ni_), nj(nj_), nk(nk_), values(static_cast<std::size_t>(ni_) * nj_ * nk_, 0.0) {}

    std::size_t idx(int i, int j, int k) const {
        return (static_cast<std::size_t>(i) * nj + j) * nk + k;
    }
    double& at(int i, int j, int k) { return values[idx(i, j, k)]; }
    double at(int i, int j, int k) const { return values[idx(i, j, k)]; }
};

/// A point where a price is requested.
struct QueryPoint {
    double s = 0.0;
    double v = 0.0;
    double r = 0.0;
};

/// Call payoff max(S - E, 0).
double payoff(double s, const OptionSpec& option);

/// Grid plus the terminal (tau = 0) field, which is the payoff replicated
/// over the V and R directions.
struct GridSetup {
    Grid3D grid;
    PriceField terminal;
};

/// Validates spec and option; requires maturity > 0 (dt = T/n must be positive).
GridSetup build_grid(const GridSpec& spec, const OptionSpec& option);

/// Trilinear interpolation, exact at nodes. Throws OutOfDomainError when the
/// query leaves the box by more than a relative 1e-12 slack.
double sample_field(const PriceField& field, const Grid3D& grid, double s, double v, double r);

}  // namespace hcir
