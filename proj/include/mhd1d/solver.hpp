#pragma once

#include <functional>
#include <vector>

#include "mhd1d/core.hpp"
#include "mhd1d/diagnostics.hpp"
#include "mhd1d/tridiag.hpp"

// Semi-implicit time integration of the resistive and non-resistive systems:
// first-order upwind advection treated explicitly, backward-Euler implicit
// diffusion for the velocity (always) and the magnetic field (nu > 0).
// Per step: continuity, then momentum, then induction, each update seeing the
// freshest fields.

namespace mhd1d {

/// Densities below this are treated as vacuum and abort the run.
inline constexpr double kVacuumFloor = 1e-8;

/// Test and verification hooks: manufactured source terms, boundary signal
/// overrides, and field freezes. Sources are evaluated at the step start time.
struct StepHooks {
    std::function<double(double x, double t)> source_rho;
    std::function<double(double x, double t)> source_u;
    std::function<double(double x, double t)> source_b;
    std::function<double(double t)> dirichlet_b_left;
    std::function<double(double t)> dirichlet_b_right;
    bool freeze_velocity = false;
    bool freeze_density = false;
};

/// Scratch buffers reused across steps. Contents are meaningless between
/// calls; stepping identical states yields identical results.
struct StepperWorkspace {
    explicit StepperWorkspace(const Grid& grid);

    std::vector<double> lower, diag, upper, rhs;  // tridiagonal bands
    std::vector<double> solve_out, solve_scratch;
    std::vector<double> flux;     // face fluxes
    std::vector<double> total_p;  // P + b^2/2 at centers
    std::vector<double> rho_new, b_new, u_new;
};

/// Per-cell/per-face extrema over the whole run.
struct FieldEnvelopes {
    std::vector<double> rho_min, rho_max;  // per cell
    std::vector<double> abs_b_max;         // per cell
    std::vector<double> abs_u_max;         // per face
};

struct RunSnapshot {
    double time = 0.0;
    State state;
};

struct RunResult {
    std::vector<RunSnapshot> snapshots;
    std::vector<InvariantRecord> invariants;  // one per step, including t=0
    FieldEnvelopes envelopes;
    long step_count = 0;
    double wall_time_s = 0.0;
};

/// Stable step size: cfl * dx / max(acoustic speed, Alfven speed), clamped so
/// the run lands exactly on the next snapshot time or t_final (splitting the
/// final interval in two when it would leave a sliver).
double cfl_dt(const State& state, const ScenarioConfig& config);

/// One step of the resistive system (config.nu > 0).
State step_resistive(const State& state, const ScenarioConfig& config, StepperWorkspace& ws,
                     double dt, const StepHooks* hooks = nullptr);

/// One step of the non-resistive system (config.nu = 0): induction is pure
/// conservative upwind advection and carries no boundary condition.
State step_nonresistive(const State& state, const ScenarioConfig& config, StepperWorkspace& ws,
                        double dt, const StepHooks* hooks = nullptr);

/// Sample the configured initial preset onto the staggered grid.
State make_initial_state(const ScenarioConfig& config);

/// Integrate from the configured initial state to t_final.
RunResult run(const ScenarioConfig& config);

/// Integrate from an explicit initial state, optionally with hooks.
RunResult run(const ScenarioConfig& config, State initial, const StepHooks* hooks = nullptr);

}  // namespace mhd1d
