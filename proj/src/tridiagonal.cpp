#include "hcir/tridiagonal.hpp"

#include <cmath>

namespace hcir {

void thomas_solve(std::span<const double> lower, std::span<const double> diag,
                  std::span<const double> upper, std::span<const double> rhs,
                  std::span<double> x, std::span<double> scratch, double pivot_tol) {
    const std::size_t n = diag.size();
    double scale = 1.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(diag[i]));
    const double floor = pivot_tol * scale;

    // Forward sweep: scratch holds the normalized super-diagonal, x the
    // normalized right-hand side.
    double pivot = diag[0];
    if (std::abs(pivot) < floor) throw SingularLineError("zero pivot at row 0");
    scratch[0] = upper.size() > 0 ? upper[0] / pivot : 0.0;
    x[0] = rhs[0] / pivot;
    for (std::size_t i = 1; i < n; ++i) {
        pivot = diag[i] - lower[i] * scratch[i - 1];
        if (std::abs(pivot) < floor)
            throw SingularLineError("zero pivot at row " + std::to_string(i));
        scratch[i] = (i + 1 < n) ? upper[i] / pivot : 0.0;
        x[i] = (rhs[i] - lower[i] * x[i - 1]) / pivot;
    }

    for (std::size_t i = n - 1; i-- > 0;) x[i] -= scratch[i] * x[i + 1];
}

std::vector<double> thomas_solve(const std::vector<double>& lower,
                                 const std::vector<double>& diag,
                                 const std::vector<double>& upper,
                                 const std::vector<double>& rhs, double pivot_tol) {
    std::vector<double> x(diag.size()), scratch(diag.size());
    thomas_solve(lower, diag, upper, rhs, x, scratch, pivot_tol);
    return x;
}

}  // namespace hcir
