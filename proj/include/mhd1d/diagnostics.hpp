#pragma once

#include <span>
#include <utility>
#include <vector>

#include "mhd1d/core.hpp"

// Discrete realizations of the analytical quantities tracked alongside a run:
// the effective viscous flux, the material derivative of the velocity, energy
// and transport balances, and the wall flux formulas of the resistive system.

namespace mhd1d {

/// Per-step conserved/monitored quantities. The *_accum fields integrate the
/// corresponding rate in time by the trapezoid rule.
struct InvariantRecord {
    double time = 0.0;
    double total_mass = 0.0;
    double energy = 0.0;             // integral of rho u^2/2 + b^2/2 + A rho^gamma/(gamma-1)
    double dissipation_accum = 0.0;  // integral of lambda ||u_x||^2 + nu ||b_x||^2
    double boundary_work = 0.0;      // integral of nu (b2 b_x(1) - b1 b_x(0))
    double rho_min = 0.0;
    double rho_max = 0.0;
    double b_sup = 0.0;
    double ux_l2 = 0.0;
    double weighted_h1 = 0.0;
    // instantaneous rates feeding the accumulators
    double dissipation_rate = 0.0;
    double boundary_rate = 0.0;
};

/// One-sided second-order gradient of b at the walls, built from the wall
/// value and the two adjacent cell centers (spacing dx/2 then dx).
double wall_gradient_left(std::span<const double> b, const Grid& grid, double b_wall);
double wall_gradient_right(std::span<const double> b, const Grid& grid, double b_wall);

double total_mass(const State& state, const Grid& grid);
double energy_functional(const State& state, const FluidParams& params, const Grid& grid);

/// ||u_x||_{L2} with u_x sampled at cell centers.
double ux_l2_norm(const State& state, const Grid& grid);

/// Squared L2 norm of b_x: centered differences at interior faces plus
/// one-sided wall contributions against the Dirichlet values.
double bx_l2_sq(const State& state, const Grid& grid, double b_left, double b_right);

/// Record at the initial time (accumulators start at zero). b_left/b_right
/// are the magnetic boundary values at state.time; ignored when nu = 0.
InvariantRecord initial_invariant_record(const State& state, const ScenarioConfig& config,
                                         const Grid& grid, double b_left = 0.0,
                                         double b_right = 0.0);

/// Record after a step, advancing the trapezoid accumulators from prev.
InvariantRecord next_invariant_record(const State& state, const ScenarioConfig& config,
                                      const Grid& grid, const InvariantRecord& prev,
                                      double b_left = 0.0, double b_right = 0.0);

/// Effective viscous flux F_i = lambda u_x - P(rho) - b^2/2 at cell centers.
std::vector<double> effective_viscous_flux(const State& state, const FluidParams& params,
                                           const Grid& grid);

/// Material derivative du/dt + u du/dx at faces, from two consecutive states.
/// Wall faces report 0.
std::vector<double> material_derivative_u(const State& state_prev, const State& state_next,
                                          const Grid& grid, double dt);

/// L2 residual of F_x = rho du/dt over interior faces.
double flux_gradient_identity_residual(const State& state_next, const FluidParams& params,
                                       const Grid& grid, const State& state_prev, double dt);

/// E(t) + dissipation - E(0) - boundary_work from a completed invariant
/// series. Pass boundary_work = 0 for the non-resistive system.
double energy_balance_residual(std::span<const InvariantRecord> records, double boundary_work);

/// Residuals of the two wall flux identities for the resistive system,
/// at x=0 and x=1. b1_now/b2_now are the boundary values at state_next.time.
std::pair<double, double> boundary_flux_formulas(const State& state_next,
                                                 const State& state_prev, const Grid& grid,
                                                 double dt, double nu, double b1_now,
                                                 double b2_now);

/// L2 residuals of the pressure and b^2 transport identities
///   P_t + u P_x + gamma P u_x = 0,   (b^2)_t + u (b^2)_x + 2 b^2 u_x = 0,
/// which hold only for the non-resistive system (nu must be 0).
std::pair<double, double> transport_residuals(const State& state_prev, const State& state_next,
                                              const Grid& grid, double dt,
                                              const FluidParams& params, double nu);

}  // namespace mhd1d
