#include "hcir/explicit_solver.hpp"

#include <chrono>
#include <cmath>

namespace hcir {

double stable_dt_estimate(const Grid3D& grid, const ModelParams& params) {
    const double s2 = params.sigma * params.sigma;
    const double e2 = params.eta * params.eta;
    double worst = 0.0;
    for (int i = 0; i < grid.ni(); ++i) {
        const double s_sq = grid.s[i] * grid.s[i];
        for (int j = 0; j < grid.nj(); ++j) {
            const double v = grid.v[j];
            const double sv = v * s_sq / (grid.ds * grid.ds) + s2 * v / (grid.dv * grid.dv);
            for (int k = 0; k < grid.nk(); ++k) {
                const double sum = sv + e2 * grid.r[k] / (grid.dr * grid.dr);
                worst = std::max(worst, sum);
            }
        }
    }
    if (worst <= 0.0) return grid.dt;
    return std::min(0.4 / worst, grid.dt);
}

namespace {

void explicit_step_into(PriceField& out, const PriceField& prev, const Grid3D& grid,
                        const ModelParams& params, const CostSourceField* phi, double dt,
                        int step_index, StepDiagnostics& diag) {
    out.values = prev.values;
    if (phi) {
        const double* p = phi->phi.values.data();
        double* w = out.values.data();
        for (std::size_t ix = 0; ix < out.values.size(); ++ix) w[ix] += dt * p[ix];
    }
    build_op_s(grid, params).apply_add(prev, dt, out);
    build_op_v(grid, params).apply_add(prev, dt, out);
    build_op_r(grid, params).apply_add(prev, dt, out);
    apply_mixed_add(grid, params, prev, dt, out);
    apply_dirichlet(grid, out);

    // NaN never propagates through std::min/max (comparisons are false), so
    // finiteness must be checked per element, not on the reduced bounds.
    double lo = out.values[0], hi = out.values[0];
    bool finite = true;
    for (const double x : out.values) {
        finite = finite && std::isfinite(x);
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    if (!finite) {
        throw NonFiniteError(step_index, "explicit step produced a non-finite value");
    }
    diag.min_value = lo;
    diag.max_value = hi;
    out.tau = prev.tau + dt;
}

}  // namespace

PriceField explicit_step(const PriceField& prev, const Grid3D& grid, const ModelParams& params,
                         const CostSourceField* phi, double dt, int step_index) {
    PriceField out(prev.ni, prev.nj, prev.nk);
    StepDiagnostics diag;
    explicit_step_into(out, prev, grid, params, phi, dt, step_index, diag);
    return out;
}

SolveReport solve_explicit(const ModelParams& params, const OptionSpec& option,
                           const CostParams& costs, const GridSpec& spec,
                           std::span<const QueryPoint> queries) {
    validate(params);
    validate(costs);

    const auto t0 = std::chrono::steady_clock::now();
    auto [grid, field] = build_grid(spec, option);
    const double dt_stable = stable_dt_estimate(grid, params);
    const int steps = static_cast<int>(std::ceil(option.maturity / dt_stable));
    const double dt = option.maturity / steps;

    const bool with_costs = !zero_costs(costs);
    CostParams effective = costs;
    if (with_costs && effective.delta_t == 0.0) effective.delta_t = dt;

    SolveReport report;
    PriceField work(field.ni, field.nj, field.nk);
    for (int n = 1; n <= steps; ++n) {
        StepDiagnostics diag;
        const auto s0 = std::chrono::steady_clock::now();
        if (with_costs) {
            const double tau_b = std::max(field.tau, dt);
            const CostSourceField phi = assemble_phi(field, grid, params, effective, tau_b);
            report.cost_clamp_count += phi.clamp_count;
            explicit_step_into(work, field, grid, params, &phi, dt, n, diag);
        } else {
            explicit_step_into(work, field, grid, params, nullptr, dt, n, diag);
        }
        field.values.swap(work.values);
        field.tau += dt;
        diag.wall_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - s0)
                .count();
        report.steps.push_back(diag);
    }

    report.prices.reserve(queries.size());
    for (const QueryPoint& q : queries)
        report.prices.push_back(sample_field(field, grid, q.s, q.v, q.r));
    report.grid = std::move(grid);
    report.field = std::move(field);
    report.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    return report;
}

}  // namespace hcir
