#include "hcir/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <span>

#include "hcir/errors.hpp"
#include "hcir/explicit_solver.hpp"

namespace hcir {

namespace {

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.8g", x);
    return buf;
}

void require_grid_solver(const RunConfig& cfg, const char* command) {
    if (cfg.solver == SolverKind::mc) {
        throw ValidationError("SolverUnsupported", "solver",
                              std::string(command) + " needs a grid solver (adi or explicit)");
    }
}

SolveReport run_fd(const RunConfig& cfg, const CostParams& costs, const GridSpec& spec,
                   std::span<const QueryPoint> queries) {
    if (cfg.solver == SolverKind::explicit_euler) {
        return solve_explicit(cfg.model, cfg.option, costs, spec, queries);
    }
    return solve(cfg.model, cfg.option, costs, spec, cfg.douglas, queries);
}

// The slice coordinate must land on a node; slicing is index extraction, not
// interpolation.
int locate_node(const std::vector<double>& coords, double x, const char* axis) {
    const double spacing = coords[1] - coords[0];
    const double tol = 1e-9 * std::max(1.0, coords.back());
    const int idx = static_cast<int>(std::lround(x / spacing));
    if (idx < 0 || idx >= static_cast<int>(coords.size()) || std::abs(coords[idx] - x) > tol) {
        throw OutOfDomainError("slice coordinate " + std::string(axis) + " = " + num(x) +
                               " is not a grid node");
    }
    return idx;
}

}  // namespace

std::string cmd_price(const RunConfig& cfg) {
    std::string csv = "S,V,R,price,solver,wall_ms\n";
    auto row = [&](const QueryPoint& q, double price, double wall_ms) {
        char buf[192];
        std::snprintf(buf, sizeof buf, "%.8g,%.8g,%.8g,%.8g,%s,%.3f\n", q.s, q.v, q.r, price,
                      std::string(to_string(cfg.solver)).c_str(), wall_ms);
        csv += buf;
    };

    if (cfg.option.maturity == 0.0) {
        for (const QueryPoint& q : cfg.queries) row(q, payoff(q.s, cfg.option), 0.0);
        return csv;
    }

    if (cfg.solver == SolverKind::mc) {
        if (!zero_costs(cfg.costs)) {
            throw ValidationError("SolverUnsupported", "solver",
                                  "the mc solver prices without transaction costs; "
                                  "set k0 = k1 = k2 = 0 or choose a grid solver");
        }
        for (const QueryPoint& q : cfg.queries) {
            const auto t0 = std::chrono::steady_clock::now();
            const McEstimate est =
                simulate_price(cfg.model, cfg.option, q.s, q.v, q.r, cfg.mc_config());
            const auto t1 = std::chrono::steady_clock::now();
            row(q, est.price, std::chrono::duration<double, std::milli>(t1 - t0).count());
        }
        return csv;
    }

    const SolveReport report = run_fd(cfg, cfg.costs, cfg.grid, cfg.queries);
    for (std::size_t i = 0; i < cfg.queries.size(); ++i) {
        row(cfg.queries[i], report.prices[i], report.wall_ms);
    }
    return csv;
}

std::string cmd_converge(const RunConfig& cfg) {
    require_grid_solver(cfg, "converge");
    if (cfg.anchors.empty()) {
        throw ValidationError("MissingAnchors", "anchors",
                              "converge needs reference prices in [anchors]");
    }
    if (cfg.ladder.empty()) {
        throw ValidationError("MissingLadder", "ladder", "converge needs rungs in [ladder]");
    }

    std::vector<QueryPoint> queries;
    queries.reserve(cfg.anchors.size());
    for (const AnchorPoint& p : cfg.anchors) queries.push_back({p.s, p.v, p.r});

    std::string csv = "grid";
    for (const AnchorPoint& p : cfg.anchors) {
        char buf[48];
        std::snprintf(buf, sizeof buf, ",price_S%g", p.s);
        csv += buf;
    }
    csv += ",max_rel_err\n";

    for (const LadderRung& rung : cfg.ladder) {
        GridSpec spec = cfg.grid;
        spec.m = rung.m;
        spec.j = rung.j;
        spec.k = rung.k;
        spec.n = rung.n;
        const SolveReport report = run_fd(cfg, cfg.costs, spec, queries);

        char label[64];
        std::snprintf(label, sizeof label, "M%d_J%d_K%d_N%d", rung.m, rung.j, rung.k, rung.n);
        csv += label;
        double max_rel = 0.0;
        for (std::size_t i = 0; i < cfg.anchors.size(); ++i) {
            csv += "," + num(report.prices[i]);
            max_rel = std::max(max_rel, std::abs(report.prices[i] - cfg.anchors[i].price) /
                                            std::abs(cfg.anchors[i].price));
        }
        char err[32];
        std::snprintf(err, sizeof err, ",%.6e\n", max_rel);
        csv += err;
    }
    return csv;
}

std::string cmd_compare(const RunConfig& cfg) {
    require_grid_solver(cfg, "compare");
    CostParams no_costs;
    no_costs.delta_t = cfg.costs.delta_t;
    const SolveReport base = run_fd(cfg, no_costs, cfg.grid, cfg.queries);
    const SolveReport with = run_fd(cfg, cfg.costs, cfg.grid, cfg.queries);

    std::string csv = "S,V,R,price_zero_cost,price_with_cost,delta,sign\n";
    for (std::size_t i = 0; i < cfg.queries.size(); ++i) {
        const QueryPoint& q = cfg.queries[i];
        const double delta = with.prices[i] - base.prices[i];
        const int sign = delta < 0.0 ? -1 : delta > 0.0 ? 1 : 0;
        char buf[192];
        std::snprintf(buf, sizeof buf, "%.8g,%.8g,%.8g,%.8g,%.8g,%.8g,%d\n", q.s, q.v, q.r,
                      base.prices[i], with.prices[i], delta, sign);
        csv += buf;
    }
    return csv;
}

std::string cmd_surface(const RunConfig& cfg) {
    require_grid_solver(cfg, "surface");
    const SolveReport report = run_fd(cfg, cfg.costs, cfg.grid, {});
    const Grid3D& grid = report.grid;
    const int k = locate_node(grid.r, cfg.surface.r, "R");

    std::string csv;
    if (cfg.surface.v) {
        const int j = locate_node(grid.v, *cfg.surface.v, "V");
        csv = cfg.surface.payoff ? "S,price,payoff\n" : "S,price\n";
        for (int i = 0; i < grid.ni(); ++i) {
            csv += num(grid.s[i]) + "," + num(report.field.at(i, j, k));
            if (cfg.surface.payoff) csv += "," + num(payoff(grid.s[i], cfg.option));
            csv += "\n";
        }
        return csv;
    }

    csv = cfg.surface.payoff ? "S,V,price,payoff\n" : "S,V,price\n";
    for (int i = 0; i < grid.ni(); ++i) {
        for (int j = 0; j < grid.nj(); ++j) {
            csv += num(grid.s[i]) + "," + num(grid.v[j]) + "," + num(report.field.at(i, j, k));
            if (cfg.surface.payoff) csv += "," + num(payoff(grid.s[i], cfg.option));
            csv += "\n";
        }
    }
    return csv;
}

}  // namespace hcir
