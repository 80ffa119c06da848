#pragma once

#include <span>

#include "hcir/model.hpp"

namespace hcir {

enum class Axis { S, V, R };

/// One directional piece of the split spatial operator,
///   A_S = 1/2 V S^2 C_SS + R S C_S - (R/3) C
///   A_V = 1/2 sigma^2 V C_VV + R V C_V - (R/3) C
///   A_R = 1/2 eta^2 R C_RR + alpha (beta - R) C_R - (R/3) C
/// discretized with central differences on one tridiagonal line per pair of
/// transverse indices. Boundary rows:
///   S: i=0 is a zero row (Dirichlet plane C=0); i=M carries the ghost
///      elimination of dC/dS = 1, which adds an affine constant to the row.
///   V: j=0 degenerates to the pure reaction -(R/3) C (V-coefficients vanish);
///      j=J is a zero row (Dirichlet plane C=S_i).
///   R: k=0 and k=K fold the homogeneous Neumann ghost C_{-1}=C_1,
///      C_{K+1}=C_{K-1} into the stencil.
/// Rows are generated per line on demand; materializing them for the largest
/// grids would cost hundreds of MB.
class DirectionalOperator {
public:
    DirectionalOperator(Axis axis, const Grid3D& grid, const ModelParams& params);

    Axis axis() const { return axis_; }
    int line_length() const { return len_; }
    int t1_count() const { return n1_; }
    int t2_count() const { return n2_; }

    /// Flat index of the line's first node and the in-field stride between
    /// consecutive nodes of the line.
    std::size_t line_base(int t1, int t2) const;
    std::size_t line_stride() const { return stride_; }

    /// Writes the row triples of line (t1, t2); returns the affine constant of
    /// the last row (nonzero only for the S direction's ghost row). Row m of
    /// the line contributes lower[m]*C[m-1] + diag[m]*C[m] + upper[m]*C[m+1],
    /// plus the affine constant at m = len-1.
    double fill_line(int t1, int t2, std::span<double> lower, std::span<double> diag,
                     std::span<double> upper) const;

    /// out += scale * (A_d field), affine ghost constant included.
    void apply_add(const PriceField& field, double scale, PriceField& out) const;

private:
    Axis axis_;
    const Grid3D* grid_;
    ModelParams params_;
    int len_;
    int n1_;
    int n2_;
    std::size_t stride_;
};

DirectionalOperator build_op_s(const Grid3D& grid, const ModelParams& params);
DirectionalOperator build_op_v(const Grid3D& grid, const ModelParams& params);
DirectionalOperator build_op_r(const Grid3D& grid, const ModelParams& params);

/// out += scale * rho sigma V S C_SV with the 4-point cross stencil
/// 1/(4 dS dV); applied at 1<=i<=M-1, 1<=j<=J-1 only, zero elsewhere.
void apply_mixed_add(const Grid3D& grid, const ModelParams& params, const PriceField& field,
                     double scale, PriceField& out);

/// Re-imposes the Dirichlet planes: C[0][.][.] = 0 and C[.][J][.] = S_i.
/// The V_max assignment is applied last, so it wins at the S_max edge.
void apply_dirichlet(const Grid3D& grid, PriceField& field);

}  // namespace hcir
