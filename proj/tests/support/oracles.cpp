#include "oracles.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "hcir/operators.hpp"

namespace hcir::testing {

std::vector<double> gauss_solve(std::vector<double> a, std::vector<double> b) {
    const std::size_t n = b.size();
    if (a.size() != n * n) throw std::invalid_argument("gauss_solve: shape");
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = std::abs(a[col * n + col]);
        for (std::size_t row = col + 1; row < n; ++row) {
            const double cand = std::abs(a[row * n + col]);
            if (cand > best) {
                best = cand;
                piv = row;
            }
        }
        if (best == 0.0) throw std::runtime_error("gauss_solve: singular matrix");
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a[piv * n + c], a[col * n + c]);
            std::swap(b[piv], b[col]);
        }
        const double d = a[col * n + col];
        for (std::size_t row = col + 1; row < n; ++row) {
            const double f = a[row * n + col] / d;
            if (f == 0.0) continue;
            a[row * n + col] = 0.0;
            for (std::size_t c = col + 1; c < n; ++c) a[row * n + c] -= f * a[col * n + c];
            b[row] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t row = n; row-- > 0;) {
        double acc = b[row];
        for (std::size_t c = row + 1; c < n; ++c) acc -= a[row * n + c] * x[c];
        x[row] = acc / a[row * n + row];
    }
    return x;
}

namespace {

struct DenseOp {
    std::vector<double> mat;     // row-major nodes x nodes
    std::vector<double> affine;  // per-row constant
};

DenseOp assemble(const DirectionalOperator& op, std::size_t nodes) {
    DenseOp out;
    out.mat.assign(nodes * nodes, 0.0);
    out.affine.assign(nodes, 0.0);
    const int len = op.line_length();
    const std::size_t stride = op.line_stride();
    std::vector<double> lower(len), diag(len), upper(len);
    for (int t1 = 0; t1 < op.t1_count(); ++t1) {
        for (int t2 = 0; t2 < op.t2_count(); ++t2) {
            const double affine = op.fill_line(t1, t2, lower, diag, upper);
            const std::size_t base = op.line_base(t1, t2);
            for (int m = 0; m < len; ++m) {
                const std::size_t row = base + m * stride;
                out.mat[row * nodes + row] += diag[m];
                if (m > 0) out.mat[row * nodes + (row - stride)] += lower[m];
                if (m + 1 < len) out.mat[row * nodes + (row + stride)] += upper[m];
            }
            out.affine[base + (len - 1) * stride] += affine;
        }
    }
    return out;
}

DenseOp assemble_mixed(const Grid3D& grid, const ModelParams& params, std::size_t nodes) {
    DenseOp out;
    out.mat.assign(nodes * nodes, 0.0);
    out.affine.assign(nodes, 0.0);
    PriceField unit(grid.ni(), grid.nj(), grid.nk());
    PriceField col(grid.ni(), grid.nj(), grid.nk());
    for (std::size_t g = 0; g < nodes; ++g) {
        std::fill(unit.values.begin(), unit.values.end(), 0.0);
        unit.values[g] = 1.0;
        std::fill(col.values.begin(), col.values.end(), 0.0);
        apply_mixed_add(grid, params, unit, 1.0, col);
        for (std::size_t row = 0; row < nodes; ++row) out.mat[row * nodes + g] = col.values[row];
    }
    return out;
}

std::vector<double> matvec(const std::vector<double>& a, const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<double> y(n, 0.0);
    for (std::size_t row = 0; row < n; ++row) {
        double acc = 0.0;
        for (std::size_t c = 0; c < n; ++c) acc += a[row * n + c] * x[c];
        y[row] = acc;
    }
    return y;
}

}  // namespace

PriceField dense_douglas_step(const PriceField& prev, const Grid3D& grid,
                              const ModelParams& params, const DouglasConfig& cfg,
                              const CostSourceField* phi) {
    const std::size_t nodes = grid.nodes();
    const double dt = grid.dt;
    const double tdt = cfg.theta1 * dt;

    const DenseOp as = assemble(build_op_s(grid, params), nodes);
    const DenseOp av = assemble(build_op_v(grid, params), nodes);
    const DenseOp ar = assemble(build_op_r(grid, params), nodes);
    const DenseOp am = assemble_mixed(grid, params, nodes);

    const std::vector<double>& c = prev.values;
    const std::vector<double> asc = matvec(as.mat, c);
    const std::vector<double> avc = matvec(av.mat, c);
    const std::vector<double> arc = matvec(ar.mat, c);
    const std::vector<double> amc = matvec(am.mat, c);

    std::vector<double> g(nodes);
    for (std::size_t ix = 0; ix < nodes; ++ix) {
        g[ix] = c[ix] + dt * (asc[ix] + avc[ix] + arc[ix] + amc[ix] + as.affine[ix]);
        if (phi) g[ix] += dt * phi->phi.values[ix];
    }

    if (cfg.theta1 != 0.0) {
        for (const DenseOp* dir : {&as, &av, &ar}) {
            const std::vector<double> ac = matvec(dir->mat, c);
            std::vector<double> lhs(nodes * nodes, 0.0);
            std::vector<double> rhs(nodes);
            for (std::size_t row = 0; row < nodes; ++row) {
                for (std::size_t col = 0; col < nodes; ++col)
                    lhs[row * nodes + col] = -tdt * dir->mat[row * nodes + col];
                lhs[row * nodes + row] += 1.0;
                rhs[row] = g[row] - tdt * ac[row];
            }
            g = gauss_solve(std::move(lhs), std::move(rhs));
        }
    }

    PriceField next(grid.ni(), grid.nj(), grid.nk());
    next.values = std::move(g);
    next.tau = prev.tau + dt;
    apply_dirichlet(grid, next);
    return next;
}

std::vector<double> cn_bond_curve(const ModelParams& params, double maturity,
                                  double r_max, int n_r, int n_t) {
    const int n = n_r + 1;
    const double h = r_max / n_r;
    const double dtau = maturity / n_t;
    const double half_eta2 = 0.5 * params.eta * params.eta;

    // Spatial operator rows: interior central, boundaries one-sided.
    std::vector<double> lo(n, 0.0), di(n, 0.0), up(n, 0.0);
    for (int i = 1; i + 1 < n; ++i) {
        const double r = i * h;
        const double diff = half_eta2 * r / (h * h);
        const double conv = params.alpha * (params.beta - r) / (2.0 * h);
        lo[i] = diff - conv;
        di[i] = -2.0 * diff - r;
        up[i] = diff + conv;
    }
    // R = 0: diffusion and reaction vanish; convection alpha*beta by a
    // second-order forward difference. The third entry sits at column 2.
    const double c0 = params.alpha * params.beta / (2.0 * h);
    const double row0[3] = {-3.0 * c0, 4.0 * c0, -c0};
    // R = r_max: backward differences, extra entry at column n - 3.
    const double rn = r_max;
    const double cn = params.alpha * (params.beta - rn) / (2.0 * h);
    const double dn = half_eta2 * rn / (h * h);
    const double rown[3] = {dn - cn, -2.0 * dn + 4.0 * cn, dn - 3.0 * cn - rn};

    // Crank-Nicolson matrices A = I - dtau/2 L and B = I + dtau/2 L, with the
    // boundary extras folded away against adjacent interior rows of A.
    const double s = 0.5 * dtau;
    std::vector<double> al(n), ad(n), au(n);
    for (int i = 0; i < n; ++i) {
        al[i] = -s * lo[i];
        ad[i] = 1.0 - s * di[i];
        au[i] = -s * up[i];
    }
    ad[0] = 1.0 - s * row0[0];
    au[0] = -s * row0[1];
    double a0_extra = -s * row0[2];
    al[n - 1] = -s * rown[1];
    ad[n - 1] = 1.0 - s * rown[2];
    double an_extra = -s * rown[0];
    const double mu0 = a0_extra / au[1];
    ad[0] -= mu0 * al[1];
    au[0] -= mu0 * ad[1];
    const double mun = an_extra / al[n - 2];
    al[n - 1] -= mun * ad[n - 2];
    ad[n - 1] -= mun * au[n - 2];

    std::vector<double> z(n, 1.0), b(n), scratch(n);
    for (int stepi = 0; stepi < n_t; ++stepi) {
        for (int i = 1; i + 1 < n; ++i)
            b[i] = z[i] + s * (lo[i] * z[i - 1] + di[i] * z[i] + up[i] * z[i + 1]);
        b[0] = z[0] + s * (row0[0] * z[0] + row0[1] * z[1] + row0[2] * z[2]);
        b[n - 1] =
            z[n - 1] + s * (rown[0] * z[n - 3] + rown[1] * z[n - 2] + rown[2] * z[n - 1]);
        b[0] -= mu0 * b[1];
        b[n - 1] -= mun * b[n - 2];

        // Thomas sweep on the folded tridiagonal system.
        double d = ad[0];
        z[0] = b[0] / d;
        for (int i = 1; i < n; ++i) {
            scratch[i] = au[i - 1] / d;
            d = ad[i] - al[i] * scratch[i];
            z[i] = (b[i] - al[i] * z[i - 1]) / d;
        }
        for (int i = n - 2; i >= 0; --i) z[i] -= scratch[i + 1] * z[i + 1];
    }
    return z;
}

}  // namespace hcir::testing
