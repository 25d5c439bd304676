#include "mhd1d/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace mhd1d {

namespace {

constexpr double kTimeTol = 1e-12;

bool near_time(double t, double target) {
    return std::abs(t - target) <= kTimeTol * std::max(1.0, std::abs(target));
}

double boundary_value_left(const ScenarioConfig& config, const StepHooks* hooks, double t) {
    if (hooks && hooks->dirichlet_b_left) return hooks->dirichlet_b_left(t);
    return config.boundary_b.b1(t);
}

double boundary_value_right(const ScenarioConfig& config, const StepHooks* hooks, double t) {
    if (hooks && hooks->dirichlet_b_right) return hooks->dirichlet_b_right(t);
    return config.boundary_b.b2(t);
}

/// continuity -> momentum -> induction, in place.
void advance(State& s, const ScenarioConfig& config, const Grid& grid, StepperWorkspace& ws,
             double dt, const StepHooks* hooks) {
    const int n = grid.n_cells();
    const double dx = grid.dx();
    const double t_old = s.time;
    const double t_new = s.time + dt;
    const bool resistive = config.nu > 0.0;

    // continuity: conservative upwinded mass flux, wall flux is exactly zero
    ws.flux[0] = 0.0;
    ws.flux[n] = 0.0;
    for (int j = 1; j < n; ++j)
        ws.flux[j] = s.u[j] * (s.u[j] > 0.0 ? s.rho[j - 1] : s.rho[j]);
    if (hooks && hooks->freeze_density) {
        std::copy(s.rho.begin(), s.rho.end(), ws.rho_new.begin());
    } else {
        const double lam_dt = dt / dx;
        for (int i = 0; i < n; ++i)
            ws.rho_new[i] = s.rho[i] - lam_dt * (ws.flux[i + 1] - ws.flux[i]);
        if (hooks && hooks->source_rho)
            for (int i = 0; i < n; ++i)
                ws.rho_new[i] += dt * hooks->source_rho(grid.center(i), t_old);
        for (int i = 0; i < n; ++i) {
            if (!(ws.rho_new[i] > kVacuumFloor))
                throw SolverError("vacuum: density fell below the abort threshold", t_new, i);
        }
    }

    // momentum: explicit upwinded advection and total-pressure gradient,
    // implicit viscosity, u pinned to zero at both walls
    for (int i = 0; i < n; ++i)
        ws.total_p[i] = pressure(ws.rho_new[i], config.params) + 0.5 * s.b[i] * s.b[i];
    if (hooks && hooks->freeze_velocity) {
        std::copy(s.u.begin(), s.u.end(), ws.u_new.begin());
    } else {
        const double visc = config.params.lambda / (dx * dx);
        const int m = n - 1;  // interior faces
        for (int j = 1; j < n; ++j) {
            const int k = j - 1;
            const double rho_f = 0.5 * (ws.rho_new[j - 1] + ws.rho_new[j]);
            const double dudx = s.u[j] > 0.0 ? (s.u[j] - s.u[j - 1]) / dx
                                             : (s.u[j + 1] - s.u[j]) / dx;
            ws.lower[k] = k == 0 ? 0.0 : -visc;
            ws.upper[k] = k == m - 1 ? 0.0 : -visc;
            ws.diag[k] = rho_f / dt + 2.0 * visc;
            ws.rhs[k] = rho_f * (s.u[j] / dt - s.u[j] * dudx) -
                        (ws.total_p[j] - ws.total_p[j - 1]) / dx;
        }
        if (hooks && hooks->source_u)
            for (int j = 1; j < n; ++j) ws.rhs[j - 1] += hooks->source_u(grid.face(j), t_old);
        thomas_solve(std::span(ws.lower).first(m), std::span(ws.diag).first(m),
                     std::span(ws.upper).first(m), std::span(ws.rhs).first(m),
                     std::span(ws.solve_out).first(m), std::span(ws.solve_scratch).first(m));
        ws.u_new[0] = 0.0;
        ws.u_new[n] = 0.0;
        for (int j = 1; j < n; ++j) ws.u_new[j] = ws.solve_out[j - 1];
    }

    // induction: conservative upwind advection with the fresh velocity;
    // wall advective flux vanishes with u
    ws.flux[0] = 0.0;
    ws.flux[n] = 0.0;
    for (int j = 1; j < n; ++j)
        ws.flux[j] = ws.u_new[j] * (ws.u_new[j] > 0.0 ? s.b[j - 1] : s.b[j]);
    {
        const double lam_dt = dt / dx;
        for (int i = 0; i < n; ++i)
            ws.b_new[i] = s.b[i] - lam_dt * (ws.flux[i + 1] - ws.flux[i]);
    }
    if (hooks && hooks->source_b)
        for (int i = 0; i < n; ++i) ws.b_new[i] += dt * hooks->source_b(grid.center(i), t_old);

    if (resistive) {
        // backward-Euler diffusion; Dirichlet data enters through ghost
        // values 2 b_wall - b_adjacent
        const double bl = boundary_value_left(config, hooks, t_new);
        const double br = boundary_value_right(config, hooks, t_new);
        const double r = config.nu * dt / (dx * dx);
        for (int i = 0; i < n; ++i) {
            const bool wall = i == 0 || i == n - 1;
            ws.lower[i] = i == 0 ? 0.0 : -r;
            ws.upper[i] = i == n - 1 ? 0.0 : -r;
            ws.diag[i] = 1.0 + (wall ? 3.0 : 2.0) * r;
            ws.rhs[i] = ws.b_new[i];
        }
        ws.rhs[0] += 2.0 * r * bl;
        ws.rhs[n - 1] += 2.0 * r * br;
        thomas_solve(std::span(ws.lower).first(n), std::span(ws.diag).first(n),
                     std::span(ws.upper).first(n), std::span(ws.rhs).first(n),
                     std::span(ws.solve_out).first(n), std::span(ws.solve_scratch).first(n));
        std::copy(ws.solve_out.begin(), ws.solve_out.begin() + n, ws.b_new.begin());
    }

    s.rho.swap(ws.rho_new);
    s.u.swap(ws.u_new);
    s.b.swap(ws.b_new);
    s.time = t_new;

    for (int i = 0; i < n; ++i) {
        if (!std::isfinite(s.rho[i]) || !std::isfinite(s.b[i]))
            throw SolverError("divergence: non-finite field", t_new, i);
    }
    for (int j = 0; j <= n; ++j) {
        if (!std::isfinite(s.u[j]))
            throw SolverError("divergence: non-finite velocity", t_new, j);
    }
}

void update_envelopes(FieldEnvelopes& env, const State& s) {
    const int n = static_cast<int>(s.rho.size());
    for (int i = 0; i < n; ++i) {
        env.rho_min[i] = std::min(env.rho_min[i], s.rho[i]);
        env.rho_max[i] = std::max(env.rho_max[i], s.rho[i]);
        env.abs_b_max[i] = std::max(env.abs_b_max[i], std::abs(s.b[i]));
    }
    for (int j = 0; j <= n; ++j) env.abs_u_max[j] = std::max(env.abs_u_max[j], std::abs(s.u[j]));
}

}  // namespace

StepperWorkspace::StepperWorkspace(const Grid& grid) {
    const int n = grid.n_cells();
    lower.assign(n + 1, 0.0);
    diag.assign(n + 1, 0.0);
    upper.assign(n + 1, 0.0);
    rhs.assign(n + 1, 0.0);
    solve_out.assign(n + 1, 0.0);
    solve_scratch.assign(n + 1, 0.0);
    flux.assign(n + 1, 0.0);
    total_p.assign(n, 0.0);
    rho_new.assign(n, 0.0);
    b_new.assign(n, 0.0);
    u_new.assign(n + 1, 0.0);
}

double cfl_dt(const State& state, const ScenarioConfig& config) {
    const Grid grid(config.grid_n);
    const int n = grid.n_cells();
    if (static_cast<int>(state.rho.size()) != n)
        throw UsageError("cfl_dt: state does not match config grid");

    double rho_min = state.rho[0];
    for (double r : state.rho) rho_min = std::min(rho_min, r);
    if (!(rho_min > kVacuumFloor))
        throw SolverError("cfl_dt: degenerate density", state.time);

    double speed = 0.0;
    for (int i = 0; i < n; ++i) {
        const double umax = std::max(std::abs(state.u[i]), std::abs(state.u[i + 1]));
        const double acoustic = umax + sound_speed(state.rho[i], config.params);
        const double alfven = std::abs(state.b[i]) / std::sqrt(state.rho[i]);
        speed = std::max(speed, std::max(acoustic, alfven));
    }
    double dt = config.cfl * grid.dx() / speed;
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw SolverError("cfl_dt: nonpositive or non-finite time step", state.time);

    // land exactly on the next snapshot time or t_final
    double target = config.t_final;
    for (double s : config.snapshot_times) {
        if (s > state.time && !near_time(state.time, s)) {
            target = std::min(target, s);
            break;
        }
    }
    const double remaining = target - state.time;
    if (!(remaining > 0.0))
        throw SolverError("cfl_dt: no time left to integrate", state.time);
    if (remaining <= dt * (1.0 + 1e-12)) {
        dt = remaining;
    } else if (remaining < 2.0 * dt) {
        dt = 0.5 * remaining;  // avoid a sliver final step
    }
    return dt;
}

State step_resistive(const State& state, const ScenarioConfig& config, StepperWorkspace& ws,
                     double dt, const StepHooks* hooks) {
    if (!(config.nu > 0.0)) throw UsageError("step_resistive: requires nu > 0");
    if (!(dt > 0.0)) throw UsageError("step_resistive: dt must be > 0");
    State next = state;
    advance(next, config, Grid(config.grid_n), ws, dt, hooks);
    return next;
}

State step_nonresistive(const State& state, const ScenarioConfig& config, StepperWorkspace& ws,
                        double dt, const StepHooks* hooks) {
    if (config.nu != 0.0) throw UsageError("step_nonresistive: requires nu = 0");
    if (!(dt > 0.0)) throw UsageError("step_nonresistive: dt must be > 0");
    State next = state;
    advance(next, config, Grid(config.grid_n), ws, dt, hooks);
    return next;
}

State make_initial_state(const ScenarioConfig& config) {
    const Grid grid(config.grid_n);
    const int n = grid.n_cells();
    State s;
    s.rho.resize(n);
    s.b.resize(n);
    s.u.resize(n + 1);
    for (int i = 0; i < n; ++i) {
        s.rho[i] = config.initial.rho(grid.center(i));
        s.b[i] = config.initial.b(grid.center(i));
    }
    for (int j = 0; j <= n; ++j) s.u[j] = config.initial.u(grid.face(j));
    s.u[0] = 0.0;
    s.u[n] = 0.0;
    s.time = 0.0;
    return s;
}

RunResult run(const ScenarioConfig& config) { return run(config, make_initial_state(config)); }

RunResult run(const ScenarioConfig& config, State initial, const StepHooks* hooks) {
    const bool hook_boundary = hooks && hooks->dirichlet_b_left && hooks->dirichlet_b_right;
    config.validate(hook_boundary);
    const Grid grid(config.grid_n);
    validate_state(initial, grid);

    const auto t_start = std::chrono::steady_clock::now();

    RunResult result;
    StepperWorkspace ws(grid);
    State s = std::move(initial);

    result.envelopes.rho_min = s.rho;
    result.envelopes.rho_max = s.rho;
    result.envelopes.abs_b_max.resize(s.b.size());
    for (std::size_t i = 0; i < s.b.size(); ++i)
        result.envelopes.abs_b_max[i] = std::abs(s.b[i]);
    result.envelopes.abs_u_max.resize(s.u.size());
    for (std::size_t i = 0; i < s.u.size(); ++i)
        result.envelopes.abs_u_max[i] = std::abs(s.u[i]);

    result.invariants.push_back(initial_invariant_record(
        s, config, grid, boundary_value_left(config, hooks, s.time),
        boundary_value_right(config, hooks, s.time)));

    std::size_t next_snapshot = 0;
    auto record_due_snapshots = [&]() {
        while (next_snapshot < config.snapshot_times.size() &&
               (config.snapshot_times[next_snapshot] <= s.time ||
                near_time(s.time, config.snapshot_times[next_snapshot]))) {
            result.snapshots.push_back({config.snapshot_times[next_snapshot], s});
            ++next_snapshot;
        }
    };
    record_due_snapshots();

    while (s.time < config.t_final && !near_time(s.time, config.t_final)) {
        if (config.max_steps >= 0 && result.step_count >= config.max_steps) break;
        const double dt = cfl_dt(s, config);
        advance(s, config, grid, ws, dt, hooks);
        // snap onto targets hit by the clamped step
        if (near_time(s.time, config.t_final)) s.time = config.t_final;
        if (next_snapshot < config.snapshot_times.size() &&
            near_time(s.time, config.snapshot_times[next_snapshot]))
            s.time = config.snapshot_times[next_snapshot];
        ++result.step_count;
        result.invariants.push_back(next_invariant_record(
            s, config, grid, result.invariants.back(),
            boundary_value_left(config, hooks, s.time),
            boundary_value_right(config, hooks, s.time)));
        update_envelopes(result.envelopes, s);
        record_due_snapshots();
    }

    result.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return result;
}

}  // namespace mhd1d
