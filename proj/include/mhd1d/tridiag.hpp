#pragma once

#include <span>
#include <vector>

#include "mhd1d/core.hpp"

namespace mhd1d {

/// Thomas algorithm for a tridiagonal system. Bands are indexed by row:
/// lower[0] and upper[n-1] are unused. No pivoting; the implicit diffusion
/// systems assembled by the steppers are strictly diagonally dominant.
/// scratch must provide at least n doubles.
void thomas_solve(std::span<const double> lower, std::span<const double> diag,
                  std::span<const double> upper, std::span<const double> rhs,
                  std::span<double> out, std::span<double> scratch);

/// Allocating convenience overload.
std::vector<double> thomas_solve(const std::vector<double>& lower,
                                 const std::vector<double>& diag,
                                 const std::vector<double>& upper,
                                 const std::vector<double>& rhs);

}  // namespace mhd1d
