#pragma once

#include <span>
#include <vector>

#include "hcir/errors.hpp"

namespace hcir {

/// Thomas elimination of lower[i]*x[i-1] + diag[i]*x[i] + upper[i]*x[i+1] = rhs[i].
/// lower[0] and upper[n-1] are ignored. x and rhs may alias. scratch needs n slots.
/// Throws SingularLineError when a pivot magnitude drops below
/// pivot_tol * max(1, max|diag|).
void thomas_solve(std::span<const double> lower, std::span<const double> diag,
                  std::span<const double> upper, std::span<const double> rhs,
                  std::span<double> x, std::span<double> scratch,
                  double pivot_tol = 1e-14);

/// Allocating convenience wrapper.
std::vector<double> thomas_solve(const std::vector<double>& lower,
                                 const std::vector<double>& diag,
                                 const std::vector<double>& upper,
                                 const std::vector<double>& rhs,
                                 double pivot_tol = 1e-14);

}  // namespace hcir
