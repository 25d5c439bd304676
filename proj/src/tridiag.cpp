#include "mhd1d/tridiag.hpp"

#include <cmath>

namespace mhd1d {

void thomas_solve(std::span<const double> lower, std::span<const double> diag,
                  std::span<const double> upper, std::span<const double> rhs,
                  std::span<double> out, std::span<double> scratch) {
    const std::size_t n = diag.size();
    if (n == 0) throw UsageError("thomas_solve: empty system");
    if (lower.size() != n || upper.size() != n || rhs.size() != n || out.size() < n ||
        scratch.size() < n) {
        throw UsageError("thomas_solve: band/rhs/output sizes disagree");
    }

    double pivot = diag[0];
    if (pivot == 0.0 || !std::isfinite(pivot))
        throw SolverError("thomas_solve: zero pivot in row 0", 0.0, 0);
    scratch[0] = upper[0] / pivot;
    out[0] = rhs[0] / pivot;

    for (std::size_t i = 1; i < n; ++i) {
        pivot = diag[i] - lower[i] * scratch[i - 1];
        if (pivot == 0.0 || !std::isfinite(pivot))
            throw SolverError("thomas_solve: zero pivot", 0.0, static_cast<int>(i));
        scratch[i] = upper[i] / pivot;
        out[i] = (rhs[i] - lower[i] * out[i - 1]) / pivot;
    }

    for (std::size_t i = n - 1; i-- > 0;) out[i] -= scratch[i] * out[i + 1];
}

std::vector<double> thomas_solve(const std::vector<double>& lower,
                                 const std::vector<double>& diag,
                                 const std::vector<double>& upper,
                                 const std::vector<double>& rhs) {
    std::vector<double> out(diag.size());
    std::vector<double> scratch(diag.size());
    thomas_solve(lower, diag, upper, rhs, out, scratch);
    return out;
}

}  // namespace mhd1d
