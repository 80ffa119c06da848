#pragma once

#include <string>

#include "hcir/config.hpp"

namespace hcir {

/// One row per query point through the configured solver. Columns:
/// S,V,R,price,solver,wall_ms. Zero maturity short-circuits to the payoff.
std::string cmd_price(const RunConfig& config);

/// One row per ladder rung, pricing at the anchor coordinates and reporting
/// the maximum relative error against the anchor prices. Columns:
/// grid,price_S<s1>,...,max_rel_err. Needs a grid solver plus nonempty
/// anchors and ladder.
std::string cmd_converge(const RunConfig& config);

/// Zero-cost and with-cost solves on the same grid, paired per query point.
/// Columns: S,V,R,price_zero_cost,price_with_cost,delta,sign.
std::string cmd_compare(const RunConfig& config);

/// Final-field slice at fixed R (surface over S,V) or fixed R and V (curve
/// over S), in grid order, optionally with a payoff column. Columns:
/// S,V,price[,payoff] or S,price[,payoff].
std::string cmd_surface(const RunConfig& config);

}  // namespace hcir
