#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mhd1d/solver.hpp"

// The vanishing-resistivity study: matched resistive / non-resistive runs on
// a shared grid across a nu ladder, sup-in-time difference norms, and fitted
// convergence exponents in log-log space.

namespace mhd1d {

struct FitResult {
    double exponent = 0.0;
    double prefactor = 0.0;
    double r_squared = 0.0;
};

/// Least-squares line through (log nu, log value). Requires at least three
/// points with distinct positive nu and positive values.
FitResult fit_rate(const std::vector<std::pair<double, double>>& points);

struct SweepSpec {
    ScenarioConfig base;             // resistive template; nu filled per ladder entry
    ScenarioConfig reference;        // matching nu = 0 scenario
    std::vector<double> nu_ladder;   // decreasing, all in (0,1)
    int comparison_count = 32;       // uniform comparison times when none given
    std::vector<double> comparison_times;
    bool estimate_floor = true;      // drop rule against the discretization floor

    /// Derives the reference scenario (nu = 0, no magnetic boundary data)
    /// and uniform comparison times from the resistive template.
    static SweepSpec from_base(ScenarioConfig base, std::vector<double> nu_ladder);

    void validate() const;
};

struct SweepRow {
    double nu = 0.0;
    double sup_rho_diff = 0.0;   // sup_t ||rho^nu - rho||_L2
    double sup_u_diff = 0.0;     // sup_t ||u^nu - u||_L2
    double sup_b_diff = 0.0;     // sup_t ||b^nu - b||_L2
    double int_dux_diff = 0.0;   // integral of ||(u^nu - u)_x||^2 dt
    double sup_ux_sq = 0.0;      // sup_t ||u_x^nu||^2
    double sup_weighted_h1 = 0.0;
};

struct ColumnFit {
    std::string column;
    std::optional<FitResult> fit;  // absent when too few usable points
    int points_used = 0;
    bool dropped_smallest = false;
    std::string note;
};

struct SweepReport {
    std::vector<SweepRow> rows;  // sorted by decreasing nu
    std::vector<ColumnFit> fits;
    // discretization-error floors per difference column (empty without
    // floor estimation): rho, u, b, int_dux
    std::vector<double> floors;
    std::vector<std::string> warnings;
};

/// Runs the reference scenario once, then every ladder entry (concurrently),
/// and aggregates rows in ladder order. Any run failure aborts the sweep with
/// the failing nu named in the error.
SweepReport run_sweep(const SweepSpec& spec);

}  // namespace mhd1d
