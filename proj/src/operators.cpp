#include "hcir/operators.hpp"

#include <vector>

namespace hcir {

DirectionalOperator::DirectionalOperator(Axis axis, const Grid3D& grid,
                                         const ModelParams& params)
    : axis_(axis), grid_(&grid), params_(params) {
    const int ni = grid.ni(), nj = grid.nj(), nk = grid.nk();
    switch (axis) {
        case Axis::S:
            len_ = ni;
            n1_ = nj;
            n2_ = nk;
            stride_ = static_cast<std::size_t>(nj) * nk;
            break;
        case Axis::V:
            len_ = nj;
            n1_ = ni;
            n2_ = nk;
            stride_ = nk;
            break;
        case Axis::R:
            len_ = nk;
            n1_ = ni;
            n2_ = nj;
            stride_ = 1;
            break;
    }
}

std::size_t DirectionalOperator::line_base(int t1, int t2) const {
    const int nj = grid_->nj(), nk = grid_->nk();
    switch (axis_) {
        case Axis::S:  // t1 = j, t2 = k
            return static_cast<std::size_t>(t1) * nk + t2;
        case Axis::V:  // t1 = i, t2 = k
            return (static_cast<std::size_t>(t1) * nj) * nk + t2;
        default:  // Axis::R, t1 = i, t2 = j
            return (static_cast<std::size_t>(t1) * nj + t2) * nk;
    }
}

double DirectionalOperator::fill_line(int t1, int t2, std::span<double> lower,
                                      std::span<double> diag,
                                      std::span<double> upper) const {
    const Grid3D& g = *grid_;
    double affine = 0.0;
    switch (axis_) {
        case Axis::S: {
            const double vj = g.v[t1];
            const double rk = g.r[t2];
            const double react = rk / 3.0;
            const int m = len_ - 1;
            lower[0] = diag[0] = upper[0] = 0.0;  // Dirichlet plane C=0
            for (int i = 1; i < m; ++i) {
                const double diff = 0.5 * vj * g.s[i] * g.s[i];
                const double conv = rk * g.s[i];
                lower[i] = diff / (g.ds * g.ds) - conv / (2.0 * g.ds);
                diag[i] = -2.0 * diff / (g.ds * g.ds) - react;
                upper[i] = diff / (g.ds * g.ds) + conv / (2.0 * g.ds);
            }
            // Ghost elimination of dC/dS = 1: C_{M+1} = C_{M-1} + 2 dS.
            const double diff = 0.5 * vj * g.s[m] * g.s[m];
            const double conv = rk * g.s[m];
            lower[m] = 2.0 * diff / (g.ds * g.ds);
            diag[m] = -2.0 * diff / (g.ds * g.ds) - react;
            upper[m] = 0.0;
            affine = 2.0 * diff / g.ds + conv;
            break;
        }
        case Axis::V: {
            const double rk = g.r[t2];
            const double react = rk / 3.0;
            const int m = len_ - 1;
            // V = 0: both V-proportional terms vanish, pure reaction remains.
            lower[0] = upper[0] = 0.0;
            diag[0] = -react;
            for (int j = 1; j < m; ++j) {
                const double diff = 0.5 * params_.sigma * params_.sigma * g.v[j];
                const double conv = rk * g.v[j];
                lower[j] = diff / (g.dv * g.dv) - conv / (2.0 * g.dv);
                diag[j] = -2.0 * diff / (g.dv * g.dv) - react;
                upper[j] = diff / (g.dv * g.dv) + conv / (2.0 * g.dv);
            }
            lower[m] = diag[m] = upper[m] = 0.0;  // Dirichlet plane C=S_i
            break;
        }
        case Axis::R: {
            (void)t1;
            (void)t2;
            const int m = len_ - 1;
            // Neumann ghosts: convection drops, diffusion folds onto the
            // inner neighbor.
            double diff = 0.5 * params_.eta * params_.eta * g.r[0];
            lower[0] = 0.0;
            diag[0] = -2.0 * diff / (g.dr * g.dr) - g.r[0] / 3.0;
            upper[0] = 2.0 * diff / (g.dr * g.dr);
            for (int k = 1; k < m; ++k) {
                diff = 0.5 * params_.eta * params_.eta * g.r[k];
                const double conv = params_.alpha * (params_.beta - g.r[k]);
                lower[k] = diff / (g.dr * g.dr) - conv / (2.0 * g.dr);
                diag[k] = -2.0 * diff / (g.dr * g.dr) - g.r[k] / 3.0;
                upper[k] = diff / (g.dr * g.dr) + conv / (2.0 * g.dr);
            }
            diff = 0.5 * params_.eta * params_.eta * g.r[m];
            lower[m] = 2.0 * diff / (g.dr * g.dr);
            diag[m] = -2.0 * diff / (g.dr * g.dr) - g.r[m] / 3.0;
            upper[m] = 0.0;
            break;
        }
    }
    return affine;
}

void DirectionalOperator::apply_add(const PriceField& field, double scale,
                                    PriceField& out) const {
    std::vector<double> lower(len_), diag(len_), upper(len_);
    for (int t1 = 0; t1 < n1_; ++t1) {
        for (int t2 = 0; t2 < n2_; ++t2) {
            const double affine = fill_line(t1, t2, lower, diag, upper);
            const std::size_t base = line_base(t1, t2);
            const double* in = field.values.data();
            double* acc = out.values.data();
            for (int m = 0; m < len_; ++m) {
                const std::size_t at = base + m * stride_;
                double y = diag[m] * in[at];
                if (m > 0) y += lower[m] * in[at - stride_];
                if (m + 1 < len_) y += upper[m] * in[at + stride_];
                acc[at] += scale * y;
            }
            acc[base + (len_ - 1) * stride_] += scale * affine;
        }
    }
}

DirectionalOperator build_op_s(const Grid3D& grid, const ModelParams& params) {
    return DirectionalOperator(Axis::S, grid, params);
}

DirectionalOperator build_op_v(const Grid3D& grid, const ModelParams& params) {
    return DirectionalOperator(Axis::V, grid, params);
}

DirectionalOperator build_op_r(const Grid3D& grid, const ModelParams& params) {
    return DirectionalOperator(Axis::R, grid, params);
}

void apply_mixed_add(const Grid3D& grid, const ModelParams& params, const PriceField& field,
                     double scale, PriceField& out) {
    const int ni = field.ni, nj = field.nj, nk = field.nk;
    const double pref = scale * params.rho * params.sigma / (4.0 * grid.ds * grid.dv);
    for (int i = 1; i + 1 < ni; ++i) {
        for (int j = 1; j + 1 < nj; ++j) {
            const double coef = pref * grid.v[j] * grid.s[i];
            for (int k = 0; k < nk; ++k) {
                const double cross = field.at(i + 1, j + 1, k) - field.at(i + 1, j - 1, k) -
                                     field.at(i - 1, j + 1, k) + field.at(i - 1, j - 1, k);
                out.at(i, j, k) += coef * cross;
            }
        }
    }
}

void apply_dirichlet(const Grid3D& grid, PriceField& field) {
    for (int j = 0; j < field.nj; ++j)
        for (int k = 0; k < field.nk; ++k) field.at(0, j, k) = 0.0;
    const int jtop = field.nj - 1;
    for (int i = 0; i < field.ni; ++i)
        for (int k = 0; k < field.nk; ++k) field.at(i, jtop, k) = grid.s[i];
}

}  // namespace hcir
