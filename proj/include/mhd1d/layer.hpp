#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mhd1d/limit.hpp"
#include "mhd1d/solver.hpp"

// Boundary-layer study: the resistive system started from rest with a pure
// magnetic boundary signal, interior-vs-full sup norms with delta(nu) = nu^p,
// an epsilon-level-set thickness estimator, and scaling fits across the
// nu ladder.

namespace mhd1d {

struct LayerScenario {
    FluidParams params;
    double rho_bar = 1.0;         // initial state is exactly (rho_bar, 0, 0)
    BoundaryMagnetic boundary_b;  // must not be identically zero
    std::vector<double> nu_ladder;
    double delta_p = 0.4;  // delta(nu) = nu^p, requires p in (0, 1/2)
    double epsilon_thickness = 0.01;
    double t_final = 0.25;
    int grid_n = 2048;
    double cfl = 0.8;

    double delta(double nu) const;
    void validate() const;
};

struct LayerRow {
    double nu = 0.0;
    double delta = 0.0;
    double interior_b_sup = 0.0;    // sup_t sup over (delta, 1-delta) of |b|
    double interior_rho_dev = 0.0;  // same for |rho - rho_bar|
    double full_b_sup = 0.0;
    double full_rho_dev = 0.0;
    double u_linf = 0.0;      // sup_t ||u||_Linf
    double sup_ux_sq = 0.0;   // sup_t ||u_x||^2
    double sup_weighted_h1 = 0.0;
    double thickness = 0.0;   // tau(nu, epsilon) from the final b profile
    double rho_min = 0.0, rho_max = 0.0;  // over the whole run
};

struct LayerReport {
    std::vector<LayerRow> rows;   // sorted by decreasing nu
    std::vector<ColumnFit> fits;  // sup_ux_sq, weighted H1, thickness, interior b
    double boundary_peak = 0.0;   // sup over [0,T] of max(|b1|, |b2|)
    std::vector<std::vector<double>> final_b;  // b profile at T per ladder entry
};

/// True when the boundary signal is zero for all t.
bool is_identically_zero(const BoundaryMagnetic& boundary);

/// Smallest delta on the face lattice with sup over (delta, 1-delta) of |b|
/// at most epsilon * boundary_amplitude; 1/2 when no such delta exists.
double thickness_estimate(std::span<const double> b_profile, const Grid& grid,
                          double boundary_amplitude, double epsilon);

/// Runs the resistive solver for every ladder entry and aggregates the
/// layer-report columns and scaling fits. Requires dx <= sqrt(nu_min)/8.
LayerReport run_layer_study(const LayerScenario& scenario);

/// Fitted exponent of the sup_t ||u_x||^2 column; absent when the column
/// carries no usable fit (for example a zero boundary signal).
std::optional<FitResult> velocity_no_layer_check(const LayerReport& report);

}  // namespace mhd1d
