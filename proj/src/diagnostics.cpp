#include "mhd1d/diagnostics.hpp"

#include <algorithm>
#include <cmath>

namespace mhd1d {

double wall_gradient_left(std::span<const double> b, const Grid& grid, double b_wall) {
    if (b.size() < 2) throw UsageError("wall_gradient_left: need at least 2 cells");
    // samples at x = 0, dx/2, 3dx/2; exact weights for that spacing
    return (-8.0 * b_wall + 9.0 * b[0] - b[1]) / (3.0 * grid.dx());
}

double wall_gradient_right(std::span<const double> b, const Grid& grid, double b_wall) {
    if (b.size() < 2) throw UsageError("wall_gradient_right: need at least 2 cells");
    const std::size_t n = b.size();
    return (8.0 * b_wall - 9.0 * b[n - 1] + b[n - 2]) / (3.0 * grid.dx());
}

double total_mass(const State& state, const Grid& grid) {
    double m = 0.0;
    for (double r : state.rho) m += r;
    return m * grid.dx();
}

double energy_functional(const State& state, const FluidParams& params, const Grid& grid) {
    const int n = grid.n_cells();
    const double coef = params.A / (params.gamma - 1.0);
    double e = 0.0;
    for (int i = 0; i < n; ++i) {
        const double uc = 0.5 * (state.u[i] + state.u[i + 1]);
        e += 0.5 * state.rho[i] * uc * uc + 0.5 * state.b[i] * state.b[i] +
             coef * std::pow(state.rho[i], params.gamma);
    }
    return e * grid.dx();
}

double ux_l2_norm(const State& state, const Grid& grid) {
    const int n = grid.n_cells();
    const double dx = grid.dx();
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double ux = (state.u[i + 1] - state.u[i]) / dx;
        acc += ux * ux;
    }
    return std::sqrt(acc * dx);
}

double bx_l2_sq(const State& state, const Grid& grid, double b_left, double b_right) {
    const int n = grid.n_cells();
    const double dx = grid.dx();
    double acc = 0.0;
    for (int j = 1; j < n; ++j) {
        const double bx = (state.b[j] - state.b[j - 1]) / dx;
        acc += bx * bx * dx;
    }
    const double bxl = (state.b[0] - b_left) / (0.5 * dx);
    const double bxr = (b_right - state.b[n - 1]) / (0.5 * dx);
    acc += 0.5 * dx * (bxl * bxl + bxr * bxr);
    return acc;
}

namespace {

InvariantRecord instantaneous(const State& state, const ScenarioConfig& config, const Grid& grid,
                              double b_left, double b_right) {
    InvariantRecord rec;
    rec.time = state.time;
    rec.total_mass = total_mass(state, grid);
    rec.energy = energy_functional(state, config.params, grid);
    rec.rho_min = *std::min_element(state.rho.begin(), state.rho.end());
    rec.rho_max = *std::max_element(state.rho.begin(), state.rho.end());
    rec.b_sup = linf_norm(state.b, grid);
    rec.ux_l2 = ux_l2_norm(state, grid);
    rec.weighted_h1 = weighted_h1_integral(state.rho, state.b, grid);

    const double lam = config.params.lambda;
    rec.dissipation_rate = lam * rec.ux_l2 * rec.ux_l2;
    if (config.nu > 0.0) {
        rec.dissipation_rate += config.nu * bx_l2_sq(state, grid, b_left, b_right);
        rec.boundary_rate =
            config.nu * (b_right * wall_gradient_right(state.b, grid, b_right) -
                         b_left * wall_gradient_left(state.b, grid, b_left));
    }
    return rec;
}

}  // namespace

InvariantRecord initial_invariant_record(const State& state, const ScenarioConfig& config,
                                         const Grid& grid, double b_left, double b_right) {
    return instantaneous(state, config, grid, b_left, b_right);
}

InvariantRecord next_invariant_record(const State& state, const ScenarioConfig& config,
                                      const Grid& grid, const InvariantRecord& prev,
                                      double b_left, double b_right) {
    InvariantRecord rec = instantaneous(state, config, grid, b_left, b_right);
    const double dt = rec.time - prev.time;
    rec.dissipation_accum =
        prev.dissipation_accum + 0.5 * dt * (prev.dissipation_rate + rec.dissipation_rate);
    rec.boundary_work = prev.boundary_work + 0.5 * dt * (prev.boundary_rate + rec.boundary_rate);
    return rec;
}

std::vector<double> effective_viscous_flux(const State& state, const FluidParams& params,
                                           const Grid& grid) {
    const int n = grid.n_cells();
    if (static_cast<int>(state.rho.size()) != n)
        throw UsageError("effective_viscous_flux: state does not match grid");
    const double dx = grid.dx();
    std::vector<double> flux(n);
    for (int i = 0; i < n; ++i) {
        const double ux = (state.u[i + 1] - state.u[i]) / dx;
        flux[i] = params.lambda * ux - pressure(state.rho[i], params) -
                  0.5 * state.b[i] * state.b[i];
    }
    return flux;
}

std::vector<double> material_derivative_u(const State& state_prev, const State& state_next,
                                          const Grid& grid, double dt) {
    if (!(dt > 0.0)) throw UsageError("material_derivative_u: dt must be > 0");
    const int n = grid.n_cells();
    if (state_prev.u.size() != state_next.u.size() ||
        static_cast<int>(state_next.u.size()) != n + 1)
        throw UsageError("material_derivative_u: face arrays do not match grid");
    const double dx = grid.dx();
    std::vector<double> udot(n + 1, 0.0);
    for (int j = 1; j < n; ++j) {
        const double ut = (state_next.u[j] - state_prev.u[j]) / dt;
        const double uj = state_next.u[j];
        const double dudx = uj > 0.0 ? (state_next.u[j] - state_next.u[j - 1]) / dx
                                     : (state_next.u[j + 1] - state_next.u[j]) / dx;
        udot[j] = ut + uj * dudx;
    }
    return udot;
}

double flux_gradient_identity_residual(const State& state_next, const FluidParams& params,
                                       const Grid& grid, const State& state_prev, double dt) {
    const int n = grid.n_cells();
    const double dx = grid.dx();
    const std::vector<double> flux = effective_viscous_flux(state_next, params, grid);
    const std::vector<double> udot = material_derivative_u(state_prev, state_next, grid, dt);
    std::vector<double> res(n + 1, 0.0);
    for (int j = 1; j < n; ++j) {
        const double rho_f = 0.5 * (state_next.rho[j - 1] + state_next.rho[j]);
        res[j] = (flux[j] - flux[j - 1]) / dx - rho_f * udot[j];
    }
    return l2_norm(res, grid);
}

double energy_balance_residual(std::span<const InvariantRecord> records, double boundary_work) {
    if (records.empty()) throw UsageError("energy_balance_residual: empty record series");
    const InvariantRecord& last = records.back();
    return last.energy + last.dissipation_accum - records.front().energy - boundary_work;
}

std::pair<double, double> boundary_flux_formulas(const State& state_next,
                                                 const State& state_prev, const Grid& grid,
                                                 double dt, double nu, double b1_now,
                                                 double b2_now) {
    if (!(nu > 0.0))
        throw UsageError("boundary_flux_formulas: defined only for the resistive system");
    if (!(dt > 0.0)) throw UsageError("boundary_flux_formulas: dt must be > 0");
    const int n = grid.n_cells();
    const double dx = grid.dx();

    // nested midpoint sums for the double integrals of b
    auto double_integral_from_left = [&](const State& s) {
        double acc = 0.0, running = 0.0;
        for (int i = 0; i < n; ++i) {
            acc += (running + 0.5 * s.b[i] * dx) * dx;
            running += s.b[i] * dx;
        }
        return acc;
    };
    auto double_integral_from_right = [&](const State& s) {
        double acc = 0.0, running = 0.0;
        for (int i = n - 1; i >= 0; --i) {
            acc += (running + 0.5 * s.b[i] * dx) * dx;
            running += s.b[i] * dx;
        }
        return acc;
    };
    auto ub_integral = [&](const State& s) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i) acc += 0.5 * (s.u[i] + s.u[i + 1]) * s.b[i];
        return acc * dx;
    };

    const double dI_left =
        (double_integral_from_left(state_next) - double_integral_from_left(state_prev)) / dt;
    const double dI_right =
        (double_integral_from_right(state_next) - double_integral_from_right(state_prev)) / dt;
    const double ub = ub_integral(state_next);
    const double jump = nu * (b2_now - b1_now);

    const double left_lhs = nu * wall_gradient_left(state_next.b, grid, b1_now);
    const double left_rhs = jump - dI_left - ub;
    const double right_lhs = nu * wall_gradient_right(state_next.b, grid, b2_now);
    const double right_rhs = jump + dI_right - ub;
    return {std::abs(left_lhs - left_rhs), std::abs(right_lhs - right_rhs)};
}

std::pair<double, double> transport_residuals(const State& state_prev, const State& state_next,
                                              const Grid& grid, double dt,
                                              const FluidParams& params, double nu) {
    if (nu != 0.0)
        throw UsageError("transport_residuals: identities hold only for the non-resistive system");
    if (!(dt > 0.0)) throw UsageError("transport_residuals: dt must be > 0");
    const int n = grid.n_cells();
    const double dx = grid.dx();

    std::vector<double> res_p(n, 0.0), res_b2(n, 0.0);
    for (int i = 1; i + 1 < n; ++i) {
        const double uc = 0.5 * (state_next.u[i] + state_next.u[i + 1]);
        const double ux = (state_next.u[i + 1] - state_next.u[i]) / dx;

        const double p_now = pressure(state_next.rho[i], params);
        const double p_prev = pressure(state_prev.rho[i], params);
        const double px = (pressure(state_next.rho[i + 1], params) -
                           pressure(state_next.rho[i - 1], params)) /
                          (2.0 * dx);
        res_p[i] = (p_now - p_prev) / dt + uc * px + params.gamma * p_now * ux;

        const double q_now = state_next.b[i] * state_next.b[i];
        const double q_prev = state_prev.b[i] * state_prev.b[i];
        const double qx = (state_next.b[i + 1] * state_next.b[i + 1] -
                           state_next.b[i - 1] * state_next.b[i - 1]) /
                          (2.0 * dx);
        res_b2[i] = (q_now - q_prev) / dt + uc * qx + 2.0 * q_now * ux;
    }
    return {l2_norm(res_p, grid), l2_norm(res_b2, grid)};
}

}  // namespace mhd1d
