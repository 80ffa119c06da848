#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "hcir/model.hpp"
#include "hcir/operators.hpp"

using namespace hcir;

namespace {

// Uniform fixture with nodes exactly at S = 10, V = 0.2, R = 0.2 (index 2 on
// each axis) so quadratic fields differentiate exactly.
GridSetup quad_fixture() {
    GridSpec spec;
    spec.s_max = 20.0;
    spec.v_max = 0.4;
    spec.r_max = 0.4;
    spec.m = 4;
    spec.j = 4;
    spec.k = 4;
    spec.n = 1;
    return build_grid(spec, OptionSpec{});
}

PriceField make_field(const Grid3D& g, const std::function<double(double, double, double)>& f) {
    PriceField out(g.ni(), g.nj(), g.nk());
    for (int i = 0; i < g.ni(); ++i)
        for (int j = 0; j < g.nj(); ++j)
            for (int k = 0; k < g.nk(); ++k) out.at(i, j, k) = f(g.s[i], g.v[j], g.r[k]);
    return out;
}

PriceField apply(const DirectionalOperator& op, const Grid3D& g, const PriceField& c) {
    PriceField out(g.ni(), g.nj(), g.nk());
    op.apply_add(c, 1.0, out);
    return out;
}

}  // namespace

TEST_CASE("S operator is exact on S^2 away from the ghost row") {
    auto [g, f] = quad_fixture();
    ModelParams p;
    auto c = make_field(g, [](double s, double, double) { return s * s; });
    auto out = apply(build_op_s(g, p), g, c);
    CHECK(out.at(2, 2, 2) == doctest::Approx(160.0 / 3.0).epsilon(1e-13));
    for (int i = 1; i + 1 < g.ni(); ++i)
        for (int j = 0; j < g.nj(); ++j)
            for (int k = 0; k < g.nk(); ++k) {
                const double s = g.s[i], v = g.v[j], r = g.r[k];
                const double expect = v * s * s + 2.0 * r * s * s - (r / 3.0) * s * s;
                CHECK(out.at(i, j, k) == doctest::Approx(expect).epsilon(1e-12));
            }
    // S = 0 row is identically zero.
    for (int j = 0; j < g.nj(); ++j)
        for (int k = 0; k < g.nk(); ++k) CHECK(out.at(0, j, k) == 0.0);
}

TEST_CASE("S ghost row folds the unit-slope condition into an affine constant") {
    auto [g, f] = quad_fixture();
    ModelParams p;
    auto op = build_op_s(g, p);
    std::vector<double> lower(g.ni()), diag(g.ni()), upper(g.ni());
    const double affine = op.fill_line(2, 2, lower, diag, upper);  // j = 2, k = 2
    const int m = g.ni() - 1;
    const double s = g.s[m], v = g.v[2], r = g.r[2];
    CHECK(lower[m] == doctest::Approx(v * s * s / (g.ds * g.ds)).epsilon(1e-14));
    CHECK(diag[m] ==
          doctest::Approx(-v * s * s / (g.ds * g.ds) - r / 3.0).epsilon(1e-14));
    CHECK(upper[m] == 0.0);
    CHECK(affine == doctest::Approx(v * s * s / g.ds + r * s).epsilon(1e-14));

    // The affine constant is what apply_add adds on a zero field.
    auto zero = make_field(g, [](double, double, double) { return 0.0; });
    auto out = apply(op, g, zero);
    for (int i = 0; i + 1 < g.ni(); ++i)
        for (int j = 0; j < g.nj(); ++j)
            for (int k = 0; k < g.nk(); ++k) CHECK(out.at(i, j, k) == 0.0);
    for (int j = 0; j < g.nj(); ++j)
        for (int k = 0; k < g.nk(); ++k) {
            const double expect = g.v[j] * s * s / g.ds + g.r[k] * s;
            CHECK(out.at(m, j, k) == doctest::Approx(expect).epsilon(1e-14));
        }
}

TEST_CASE("V operator is exact on V^2 and degenerates at the V boundaries") {
    auto [g, f] = quad_fixture();
    ModelParams p;
    auto c = make_field(g, [](double, double v, double) { return v * v; });
    auto out = apply(build_op_v(g, p), g, c);
    CHECK(out.at(2, 2, 2) == doctest::Approx(0.013833333333333338).epsilon(1e-13));
    for (int i = 0; i < g.ni(); ++i)
        for (int j = 1; j + 1 < g.nj(); ++j)
            for (int k = 0; k < g.nk(); ++k) {
                const double v = g.v[j], r = g.r[k];
                const double expect =
                    p.sigma * p.sigma * v + 2.0 * r * v * v - (r / 3.0) * v * v;
                CHECK(out.at(i, j, k) == doctest::Approx(expect).epsilon(1e-12));
            }
    // V = 0 keeps only the reaction term; the top row is a Dirichlet zero row.
    auto c7 = make_field(g, [](double, double, double) { return 7.0; });
    auto out7 = apply(build_op_v(g, p), g, c7);
    for (int i = 0; i < g.ni(); ++i)
        for (int k = 0; k < g.nk(); ++k) {
            CHECK(out7.at(i, 0, k) == doctest::Approx(-(g.r[k] / 3.0) * 7.0).epsilon(1e-14));
            CHECK(out7.at(i, g.nj() - 1, k) == 0.0);
        }
}

TEST_CASE("V operator on a constant gives pure reaction at interior rows") {
    auto [g, f] = quad_fixture();
    ModelParams p;
    auto c = make_field(g, [](double, double, double) { return 1.0; });
    auto out = apply(build_op_v(g, p), g, c);
    for (int i = 0; i < g.ni(); ++i)
        for (int j = 1; j + 1 < g.nj(); ++j) CHECK(out.at(i, j, 2) == doctest::Approx(-0.2 / 3.0).epsilon(1e-13));
}

TEST_CASE("R operator is exact on R^2 at interior rows") {
    auto [g, f] = quad_fixture();
    ModelParams p;
    auto c = make_field(g, [](double, double, double r) { return r * r; });
    auto out = apply(build_op_r(g, p), g, c);
    CHECK(out.at(2, 2, 2) == doctest::Approx(-0.014666666666666666).epsilon(1e-13));
    for (int i = 0; i < g.ni(); ++i)
        for (int j = 0; j < g.nj(); ++j)
            for (int k = 1; k + 1 < g.nk(); ++k) {
                const double r = g.r[k];
                const double expect = p.eta * p.eta * r +
                                      2.0 * p.alpha * (p.beta - r) * r -
                                      (r / 3.0) * r * r;
                CHECK(out.at(i, j, k) == doctest::Approx(expect).epsilon(1e-12));
            }
}

TEST_CASE("R Neumann rows reduce to pure reaction on rate-flat fields") {
    auto [g, f] = quad_fixture();
    ModelParams p;
    auto c = make_field(g, [](double s, double v, double) { return 3.0 + s + v; });
    auto out = apply(build_op_r(g, p), g, c);
    const int kk = g.nk() - 1;
    for (int i = 0; i < g.ni(); ++i)
        for (int j = 0; j < g.nj(); ++j) {
            // R = 0: diffusion weight and reaction both vanish.
            CHECK(out.at(i, j, 0) == 0.0);
            const double expect = -(g.r[kk] / 3.0) * c.at(i, j, kk);
            CHECK(out.at(i, j, kk) == doctest::Approx(expect).epsilon(1e-13));
        }
}

TEST_CASE("mixed derivative is exact on S*V and vanishes on separable fields") {
    auto [g, f] = quad_fixture();
    ModelParams p;
    auto c = make_field(g, [](double s, double v, double) { return s * v; });
    PriceField out(g.ni(), g.nj(), g.nk());
    apply_mixed_add(g, p, c, 1.0, out);
    for (int i = 0; i < g.ni(); ++i)
        for (int j = 0; j < g.nj(); ++j)
            for (int k = 0; k < g.nk(); ++k) {
                const bool interior = i > 0 && i + 1 < g.ni() && j > 0 && j + 1 < g.nj();
                const double expect =
                    interior ? p.rho * p.sigma * g.v[j] * g.s[i] : 0.0;
                CHECK(out.at(i, j, k) == doctest::Approx(expect).epsilon(1e-13));
            }

    auto sep = make_field(g, [](double s, double v, double) { return s * s + v * v; });
    PriceField out2(g.ni(), g.nj(), g.nk());
    apply_mixed_add(g, p, sep, 1.0, out2);
    // The cross differences cancel the rounded s^2 + v^2 sums only to
    // round-off, not bitwise.
    for (double x : out2.values) CHECK(std::abs(x) <= 1e-12);
}

TEST_CASE("Dirichlet application pins the S=0 and V=V_max planes") {
    auto [g, f] = quad_fixture();
    auto c = make_field(g, [](double, double, double) { return 7.0; });
    apply_dirichlet(g, c);
    const int jtop = g.nj() - 1;
    for (int j = 0; j < g.nj(); ++j)
        for (int k = 0; k < g.nk(); ++k) CHECK(c.at(0, j, k) == 0.0);
    for (int i = 0; i < g.ni(); ++i)
        for (int k = 0; k < g.nk(); ++k) CHECK(c.at(i, jtop, k) == g.s[i]);
    // Interior values are untouched; the shared corner is consistent (S = 0).
    CHECK(c.at(2, 1, 2) == 7.0);
    CHECK(c.at(0, jtop, 0) == 0.0);
}

TEST_CASE("C = S annihilates the full spatial operator away from the top plane") {
    auto [g, f] = quad_fixture();
    ModelParams p;
    auto c = make_field(g, [](double s, double, double) { return s; });
    PriceField out(g.ni(), g.nj(), g.nk());
    build_op_s(g, p).apply_add(c, 1.0, out);
    build_op_v(g, p).apply_add(c, 1.0, out);
    build_op_r(g, p).apply_add(c, 1.0, out);
    apply_mixed_add(g, p, c, 1.0, out);
    const int jtop = g.nj() - 1;
    for (int i = 0; i < g.ni(); ++i)
        for (int j = 0; j < g.nj(); ++j)
            for (int k = 0; k < g.nk(); ++k) {
                if (j == jtop) {
                    // The V_max Dirichlet row drops its reaction contribution;
                    // the time stepper re-imposes C = S there instead.
                    const double expect = (g.r[k] / 3.0) * g.s[i];
                    CHECK(out.at(i, j, k) == doctest::Approx(expect).epsilon(1e-12));
                } else {
                    CHECK(out.at(i, j, k) ==
                          doctest::Approx(0.0).scale(g.s.back()).epsilon(1e-14));
                }
            }
}

TEST_CASE("line geometry spans every node exactly once per direction") {
    GridSpec spec;
    spec.m = 4;
    spec.j = 3;
    spec.k = 2;
    auto [g, f] = build_grid(spec, OptionSpec{});
    ModelParams p;
    for (auto axis : {Axis::S, Axis::V, Axis::R}) {
        DirectionalOperator op(axis, g, p);
        std::vector<int> hits(g.nodes(), 0);
        for (int t1 = 0; t1 < op.t1_count(); ++t1)
            for (int t2 = 0; t2 < op.t2_count(); ++t2)
                for (int m = 0; m < op.line_length(); ++m)
                    ++hits[op.line_base(t1, t2) + m * op.line_stride()];
        for (int h : hits) CHECK(h == 1);
    }
}
