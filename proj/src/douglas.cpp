#include "hcir/douglas.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "hcir/tridiagonal.hpp"

namespace hcir {

DouglasStepper::DouglasStepper(const Grid3D& grid, const ModelParams& params,
                               const DouglasConfig& cfg)
    : grid_(&grid),
      params_(params),
      cfg_(cfg),
      op_s_(build_op_s(grid, params)),
      op_v_(build_op_v(grid, params)),
      op_r_(build_op_r(grid, params)),
      work_(grid.ni(), grid.nj(), grid.nk()) {
    const int len = std::max({grid.ni(), grid.nj(), grid.nk()});
    lower_.resize(len);
    diag_.resize(len);
    upper_.resize(len);
    sub_.resize(len);
    main_.resize(len);
    sup_.resize(len);
    rhs_.resize(len);
    sol_.resize(len);
    scratch_.resize(len);
}

void DouglasStepper::correct(const DirectionalOperator& op, const PriceField& prev) {
    const double tdt = cfg_.theta1 * grid_->dt;
    const int len = op.line_length();
    const std::size_t stride = op.line_stride();
    for (int t1 = 0; t1 < op.t1_count(); ++t1) {
        for (int t2 = 0; t2 < op.t2_count(); ++t2) {
            op.fill_line(t1, t2, lower_, diag_, upper_);
            const std::size_t base = op.line_base(t1, t2);
            const double* cp = prev.values.data();
            double* g = work_.values.data();
            for (int m = 0; m < len; ++m) {
                const std::size_t at = base + m * stride;
                double lc = diag_[m] * cp[at];
                if (m > 0) lc += lower_[m] * cp[at - stride];
                if (m + 1 < len) lc += upper_[m] * cp[at + stride];
                rhs_[m] = g[at] - tdt * lc;
                sub_[m] = -tdt * lower_[m];
                main_[m] = 1.0 - tdt * diag_[m];
                sup_[m] = -tdt * upper_[m];
            }
            thomas_solve(std::span<const double>(sub_.data(), len),
                         std::span<const double>(main_.data(), len),
                         std::span<const double>(sup_.data(), len),
                         std::span<const double>(rhs_.data(), len),
                         std::span<double>(sol_.data(), len),
                         std::span<double>(scratch_.data(), len), cfg_.pivot_tol);
            for (int m = 0; m < len; ++m) g[base + m * stride] = sol_[m];
        }
    }
}

StepDiagnostics DouglasStepper::step(PriceField& field, const CostSourceField* phi,
                                     int step_index) {
    const auto t0 = std::chrono::steady_clock::now();
    const Grid3D& g = *grid_;
    const double dt = g.dt;

    // Predictor G0 = C_prev + dt (A C_prev + phi).
    work_.values = field.values;
    if (phi) {
        const double* p = phi->phi.values.data();
        double* w = work_.values.data();
        for (std::size_t ix = 0; ix < work_.values.size(); ++ix) w[ix] += dt * p[ix];
    }
    op_s_.apply_add(field, dt, work_);
    op_v_.apply_add(field, dt, work_);
    op_r_.apply_add(field, dt, work_);
    apply_mixed_add(g, params_, field, dt, work_);

    // Implicit corrections, one sweep per direction, S then V then R.
    if (cfg_.theta1 != 0.0) {
        correct(op_s_, field);
        correct(op_v_, field);
        correct(op_r_, field);
    }

    apply_dirichlet(g, work_);

    StepDiagnostics diag;
    if (cfg_.clamp_negative) {
        for (double& x : work_.values) {
            if (x < 0.0) {
                x = 0.0;
                ++diag.clamp_count;
            }
        }
    }

    // NaN never propagates through std::min/max (comparisons are false), so
    // finiteness must be checked per element, not on the reduced bounds.
    double lo = work_.values[0], hi = work_.values[0];
    bool finite = true;
    for (const double x : work_.values) {
        finite = finite && std::isfinite(x);
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    if (!finite) {
        throw NonFiniteError(step_index, "Douglas step produced a non-finite value");
    }
    diag.min_value = lo;
    diag.max_value = hi;

    field.values.swap(work_.values);
    field.tau += dt;
    diag.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    return diag;
}

PriceField douglas_step(const PriceField& prev, const Grid3D& grid, const ModelParams& params,
                        const DouglasConfig& cfg, const CostSourceField* phi) {
    DouglasStepper stepper(grid, params, cfg);
    PriceField next = prev;
    stepper.step(next, phi);
    return next;
}

SolveReport solve(const ModelParams& params, const OptionSpec& option, const CostParams& costs,
                  const GridSpec& spec, const DouglasConfig& cfg,
                  std::span<const QueryPoint> queries) {
    validate(params);
    validate(costs);
    if (!(cfg.theta1 > 0.0 && cfg.theta1 <= 1.0)) {
        throw ValidationError("ThetaOutOfRange", "theta1",
                              "theta1 = " + std::to_string(cfg.theta1) +
                                  " outside (0, 1]");
    }

    const auto t0 = std::chrono::steady_clock::now();
    auto [grid, field] = build_grid(spec, option);
    DouglasStepper stepper(grid, params, cfg);

    SolveReport report;
    const bool with_costs = !zero_costs(costs);
    CostParams effective = costs;
    if (with_costs && effective.delta_t == 0.0) effective.delta_t = grid.dt;

    for (int n = 1; n <= grid.n; ++n) {
        if (with_costs) {
            const double tau_b = std::max(field.tau, grid.dt);
            const CostSourceField phi = assemble_phi(field, grid, params, effective, tau_b);
            report.cost_clamp_count += phi.clamp_count;
            report.steps.push_back(stepper.step(field, &phi, n));
        } else {
            report.steps.push_back(stepper.step(field, nullptr, n));
        }
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
