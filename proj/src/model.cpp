#include "hcir/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hcir {

namespace {

void require_positive(double value, const char* field) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw ValidationError("NonPositiveParameter", field,
                              std::string(field) + " = " + std::to_string(value) +
                                  " must be > 0");
    }
}

void require_nonnegative(double value, const char* field) {
    if (!(value >= 0.0) || !std::isfinite(value)) {
        throw ValidationError("NegativeParameter", field,
                              std::string(field) + " = " + std::to_string(value) +
                                  " must be >= 0");
    }
}

}  // namespace

void validate(const ModelParams& params) {
    require_positive(params.sigma, "sigma");
    require_positive(params.eta, "eta");
    require_positive(params.alpha, "alpha");
    require_positive(params.beta, "beta");
    if (!(params.rho >= -1.0 && params.rho <= 1.0)) {
        throw ValidationError("RhoOutOfRange", "rho",
                              "rho = " + std::to_string(params.rho) + " outside [-1, 1]");
    }
    require_nonnegative(params.a, "a");
    require_nonnegative(params.b, "b");
    require_nonnegative(params.k, "k");
    require_nonnegative(params.zeta, "zeta");
    if (!std::isfinite(params.lambda)) {
        throw ValidationError("NonFiniteParameter", "lambda", "lambda must be finite");
    }
}

void validate(const OptionSpec& option) {
    require_positive(option.strike, "strike");
    require_nonnegative(option.maturity, "maturity");
}

void validate(const CostParams& costs) {
    require_nonnegative(costs.k0, "k0");
    require_nonnegative(costs.k1, "k1");
    require_nonnegative(costs.k2, "k2");
    require_nonnegative(costs.delta_t, "delta_t");
}

bool zero_costs(const CostParams& costs) {
    return costs.k0 == 0.0 && costs.k1 == 0.0 && costs.k2 == 0.0;
}

void validate(const GridSpec& spec) {
    require_positive(spec.s_max, "s_max");
    require_positive(spec.v_max, "v_max");
    require_positive(spec.r_max, "r_max");
    if (spec.m < 2 || spec.j < 2 || spec.k < 2) {
        throw ValidationError("GridTooCoarse", "m/j/k",
                              "spatial step counts must be >= 2");
    }
    if (spec.n < 1) {
        throw ValidationError("GridTooCoarse", "n", "time step count must be >= 1");
    }
}

double payoff(double s, const OptionSpec& option) {
    return std::max(s - option.strike, 0.0);
}

GridSetup build_grid(const GridSpec& spec, const OptionSpec& option) {
    validate(spec);
    validate(option);
    if (!(option.maturity > 0.0)) {
        throw ValidationError("NonPositiveMaturity", "maturity",
                              "solvers require maturity > 0");
    }

    GridSetup setup;
    Grid3D& g = setup.grid;
    g.s.resize(spec.m + 1);
    g.v.resize(spec.j + 1);
    g.r.resize(spec.k + 1);
    for (int i = 0; i <= spec.m; ++i) g.s[i] = spec.s_max * i / spec.m;
    for (int j = 0; j <= spec.j; ++j) g.v[j] = spec.v_max * j / spec.j;
    for (int k = 0; k <= spec.k; ++k) g.r[k] = spec.r_max * k / spec.k;
    g.ds = spec.s_max / spec.m;
    g.dv = spec.v_max / spec.j;
    g.dr = spec.r_max / spec.k;
    g.n = spec.n;
    g.dt = option.maturity / spec.n;

    PriceField& f = setup.terminal;
    f = PriceField(g.ni(), g.nj(), g.nk());
    f.tau = 0.0;
    for (int i = 0; i < f.ni; ++i) {
        const double p = payoff(g.s[i], option);
        for (int j = 0; j < f.nj; ++j)
            for (int k = 0; k < f.nk; ++k) f.at(i, j, k) = p;
    }
    return setup;
}

namespace {

// Locates the cell and linear weight along one axis; exact 0/1 weight at nodes.
void locate(double x, double dx, int count, const char* axis, int& i0, double& w) {
    const double hi = dx * (count - 1);
    const double slack = 1e-12 * std::max(1.0, hi);
    if (!(x >= -slack) || !(x <= hi + slack)) {
        throw OutOfDomainError(std::string(axis) + " = " + std::to_string(x) +
                               " outside [0, " + std::to_string(hi) + "]");
    }
    const double pos = std::clamp(x / dx, 0.0, static_cast<double>(count - 1));
    i0 = std::min(static_cast<int>(pos), count - 2);
    w = pos - i0;
}

}  // namespace

double sample_field(const PriceField& field, const Grid3D& grid, double s, double v, double r) {
    int i0, j0, k0;
    double ws, wv, wr;
    locate(s, grid.ds, field.ni, "S", i0, ws);
    locate(v, grid.dv, field.nj, "V", j0, wv);
    locate(r, grid.dr, field.nk, "R", k0, wr);

    double value = 0.0;
    for (int di = 0; di <= 1; ++di) {
        const double cs = di ? ws : 1.0 - ws;
        if (cs == 0.0) continue;
        for (int dj = 0; dj <= 1; ++dj) {
            const double cv = dj ? wv : 1.0 - wv;
            if (cv == 0.0) continue;
            for (int dk = 0; dk <= 1; ++dk) {
                const double cr = dk ? wr : 1.0 - wr;
                if (cr == 0.0) continue;
                value += cs * cv * cr * field.at(i0 + di, j0 + dj, k0 + dk);
            }
        }
    }
    return value;
}

}  // namespace hcir
