#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "mhd1d/solver.hpp"

// Independent correctness oracles: preservation of the constant state,
// manufactured solutions with closed-form source injection, and Cauchy-style
// self-convergence under grid refinement.

namespace mhd1d {

/// Closed-form fields (x,t) together with the source terms obtained by
/// substituting them into the governing equations. Sources vanish when the
/// fields solve the homogeneous system.
struct ManufacturedCase {
    std::function<double(double, double)> rho;
    std::function<double(double, double)> u;
    std::function<double(double, double)> b;
    std::function<double(double, double)> s_rho;
    std::function<double(double, double)> s_u;  // velocity-form momentum source
    std::function<double(double, double)> s_b;
};

/// The constant state; every source is identically zero.
ManufacturedCase constant_manufactured_case(double rho_bar);

/// Smooth decaying fields
///   rho = 2 + 0.1 sin(2 pi x) e^-t,  u = 0.1 sin^2(pi x) e^-t,
///   b = 0.1 cos(pi x) e^-t,
/// with sources derived in closed form for the given nu (nu = 0 selects the
/// advection-only induction source).
ManufacturedCase smooth_decay_case(const FluidParams& params, double nu);

/// Runs from (rho_bar, 0, 0) with zero boundary data to time T and returns
/// the max over time and space of |rho - rho_bar| + |u| + |b|.
double trivial_solution_check(double rho_bar, double nu, int grid_n, double T,
                              const FluidParams& params = {});

struct MmsStudy {
    std::vector<int> grids;
    std::vector<std::array<double, 3>> errors;  // L2 errors (rho, u, b) at T
    std::array<std::vector<double>, 3> orders;  // log2(error(n)/error(2n))
    bool errors_monotone = true;
    bool exact = false;  // all errors at round-off (homogeneous cases)
};

/// Runs the manufactured case on every grid of the ladder and reports
/// per-field observed orders. nu selects the system.
MmsStudy mms_order_study(const ManufacturedCase& mc, double nu, std::span<const int> grid_ladder,
                         double T, const FluidParams& params, double cfl = 0.8);

struct SelfConvergence {
    std::vector<int> grids;
    std::vector<double> diffs;   // combined L2 difference of consecutive levels at T
    std::vector<double> ratios;  // diffs[k] / diffs[k+1]
    bool applicable = true;      // false when the differences vanish
};

/// Runs config at n, 2n, 4n, ... (k_levels >= 3), restricts each finer
/// solution to the next coarser grid by cell averaging, and returns the
/// Cauchy difference ratios at t_final.
SelfConvergence self_convergence(const ScenarioConfig& config, int k_levels);

}  // namespace mhd1d
