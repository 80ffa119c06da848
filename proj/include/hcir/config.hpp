#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hcir/douglas.hpp"
#include "hcir/model.hpp"
#include "hcir/monte_carlo.hpp"

namespace hcir {

enum class SolverKind { adi, explicit_euler, mc };

std::string_view to_string(SolverKind kind);
SolverKind solver_kind_from_string(std::string_view name);  // throws ValidationError

/// Reference price attached to a query point; the convergence table's
/// relative-error column is measured against these.
struct AnchorPoint {
    double s = 0.0;
    double v = 0.0;
    double r = 0.0;
    double price = 0.0;
};

/// One convergence-ladder rung: spatial intervals per direction, time steps.
struct LadderRung {
    int m = 0;
    int j = 0;
    int k = 0;
    int n = 0;
};

/// Slice request for plot data: fixed rate, optionally also fixed variance
/// (curve instead of surface), optionally a payoff column for comparison.
struct SurfaceSpec {
    double r = 0.2;
    std::optional<double> v;
    bool payoff = false;
};

/// Everything a command needs. Defaults reproduce the benchmark setup:
/// sigma=0.05, eta=0.2, rho=0.8, alpha=0.5, beta=0.1, E=100, T=1, zero costs,
/// grid 200x20x20 with 10 time steps on [0,5E]x[0,1]x[0,1], theta1=2/3, and
/// query points (120,.2,.2), (350,.2,.2), (450,.2,.2).
struct RunConfig {
    ModelParams model;
    OptionSpec option;
    CostParams costs;
    GridSpec grid;
    SolverKind solver = SolverKind::adi;
    DouglasConfig douglas;
    std::uint64_t seed = 42;
    long mc_paths = 100000;
    int mc_steps = 200;
    McScheme mc_scheme = McScheme::full_truncation;
    McDrift mc_drift = McDrift::pde_consistent;
    std::vector<QueryPoint> queries;
    std::vector<AnchorPoint> anchors;  // references for the converge command
    std::vector<LadderRung> ladder;    // rungs for the converge command
    SurfaceSpec surface;
    std::string out_path;  // empty = stdout

    McConfig mc_config() const;
};

/// Parses `[section]` / `key = value` text with `#` comments. Unknown
/// sections, unknown keys, and malformed values raise ParseError carrying the
/// 1-based line number; values that parse but violate a model constraint
/// raise ValidationError naming the field. An s_max never assigned defaults
/// to five strikes; an empty query list gets the three standard points.
/// Empty text therefore yields the full default configuration.
RunConfig parse_config(std::string_view text);

/// Inverse of parse_config up to formatting: every field is emitted with
/// enough digits that parse(serialize(c)) reproduces c exactly.
std::string serialize_config(const RunConfig& config);

}  // namespace hcir
