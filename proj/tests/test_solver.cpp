#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mhd1d/solver.hpp"

using namespace mhd1d;
using std::numbers::pi;

namespace {

// dense Gaussian elimination with partial pivoting; independent oracle for
// the Thomas solver
std::vector<double> dense_solve(std::vector<std::vector<double>> a, std::vector<double> rhs) {
    const int n = static_cast<int>(rhs.size());
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        std::swap(a[col], a[piv]);
        std::swap(rhs[col], rhs[piv]);
        for (int r = col + 1; r < n; ++r) {
            const double m = a[r][col] / a[col][col];
            for (int c = col; c < n; ++c) a[r][c] -= m * a[col][c];
            rhs[r] -= m * rhs[col];
        }
    }
    std::vector<double> x(n);
    for (int r = n - 1; r >= 0; --r) {
        double s = rhs[r];
        for (int c = r + 1; c < n; ++c) s -= a[r][c] * x[c];
        x[r] = s / a[r][r];
    }
    return x;
}

ScenarioConfig trivial_config(double rho_bar, double nu, int n, double T) {
    ScenarioConfig cfg;
    cfg.nu = nu;
    cfg.grid_n = n;
    cfg.t_final = T;
    cfg.initial = InitialData::constant(rho_bar);
    cfg.boundary_b = nu > 0.0 ? BoundaryMagnetic::constant(0.0, 0.0) : BoundaryMagnetic::none();
    return cfg;
}

State constant_state(int n, double rho_bar) {
    State s;
    s.rho.assign(n, rho_bar);
    s.b.assign(n, 0.0);
    s.u.assign(n + 1, 0.0);
    return s;
}

}  // namespace

TEST_CASE("thomas solver: identity") {
    std::vector<double> lower(5, 0.0), diag(5, 1.0), upper(5, 0.0);
    std::vector<double> rhs = {1.0, -2.0, 3.0, 0.5, 0.0};
    CHECK(thomas_solve(lower, diag, upper, rhs) == rhs);
}

TEST_CASE("thomas solver: 3x3 by hand") {
    std::vector<double> lower = {0.0, -1.0, -1.0};
    std::vector<double> diag = {2.0, 2.0, 2.0};
    std::vector<double> upper = {-1.0, -1.0, 0.0};
    std::vector<double> rhs = {1.0, 0.0, 1.0};
    const auto x = thomas_solve(lower, diag, upper, rhs);
    for (double v : x) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("thomas solver matches dense elimination on random dominant systems") {
    std::mt19937 rng(123);
    std::uniform_real_distribution<double> off(-1.0, 1.0);
    const int n = 50;
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<double> lower(n), diag(n), upper(n), rhs(n);
        std::vector<std::vector<double>> full(n, std::vector<double>(n, 0.0));
        for (int i = 0; i < n; ++i) {
            lower[i] = i == 0 ? 0.0 : off(rng);
            upper[i] = i == n - 1 ? 0.0 : off(rng);
            diag[i] = std::abs(lower[i]) + std::abs(upper[i]) + 1.0 + std::abs(off(rng));
            rhs[i] = off(rng);
            if (i > 0) full[i][i - 1] = lower[i];
            full[i][i] = diag[i];
            if (i < n - 1) full[i][i + 1] = upper[i];
        }
        const auto x = thomas_solve(lower, diag, upper, rhs);
        const auto y = dense_solve(full, rhs);
        for (int i = 0; i < n; ++i) CHECK(x[i] == doctest::Approx(y[i]).epsilon(1e-9));

        // residual contract
        double res = 0.0, scale = 0.0;
        for (int i = 0; i < n; ++i) {
            double ax = diag[i] * x[i];
            if (i > 0) ax += lower[i] * x[i - 1];
            if (i < n - 1) ax += upper[i] * x[i + 1];
            res = std::max(res, std::abs(ax - rhs[i]));
            scale = std::max(scale, std::abs(rhs[i]));
        }
        CHECK(res <= 1e-10 * scale);
    }
}

TEST_CASE("cfl_dt on the constant state") {
    ScenarioConfig cfg = trivial_config(1.0, 0.0, 256, 1000.0);
    cfg.cfl = 0.5;
    const State s = constant_state(256, 1.0);
    // sound speed sqrt(gamma A rho^(gamma-1)) = sqrt(1.4)
    CHECK(cfl_dt(s, cfg) == doctest::Approx(0.5 * (1.0 / 256) / std::sqrt(1.4)).epsilon(1e-14));
}

TEST_CASE("cfl_dt halves when the wave speeds double") {
    ScenarioConfig cfg = trivial_config(1.0, 0.0, 64, 1000.0);
    cfg.params = FluidParams(1e-30, 1.4, 1.0);  // acoustic speed negligible
    State s = constant_state(64, 1.0);
    for (int j = 1; j < 64; ++j) s.u[j] = 0.3;
    for (int i = 0; i < 64; ++i) s.b[i] = 0.2;
    const double dt1 = cfl_dt(s, cfg);
    for (int j = 1; j < 64; ++j) s.u[j] *= 2.0;
    for (int i = 0; i < 64; ++i) s.b[i] *= 2.0;
    const double dt2 = cfl_dt(s, cfg);
    CHECK(dt2 == doctest::Approx(0.5 * dt1).epsilon(1e-12));
}

TEST_CASE("cfl_dt rejects degenerate states") {
    ScenarioConfig cfg = trivial_config(1.0, 0.0, 32, 1.0);
    State s = constant_state(32, 1.0);
    s.rho[7] = 1e-9;  // below the vacuum floor
    CHECK_THROWS_AS(cfl_dt(s, cfg), SolverError);
}

TEST_CASE("cfl_dt lands exactly on snapshot times without sliver steps") {
    ScenarioConfig cfg = trivial_config(1.0, 0.0, 64, 1.0);
    cfg.snapshot_times = {0.013};
    State s = constant_state(64, 1.0);
    double t = 0.0;
    double min_dt = 1.0;
    while (t < 0.013) {
        s.time = t;
        const double dt = cfl_dt(s, cfg);
        min_dt = std::min(min_dt, dt);
        t += dt;
        if (std::abs(t - 0.013) < 1e-15) t = 0.013;
    }
    CHECK(t == doctest::Approx(0.013).epsilon(1e-14));
    const double dt_raw = cfg.cfl * (1.0 / 64) / std::sqrt(1.4);
    CHECK(min_dt >= 0.4999 * dt_raw);
}

TEST_CASE("constant state is a discrete fixed point of both steppers") {
    for (double nu : {0.0, 1e-3}) {
        ScenarioConfig cfg = trivial_config(2.5, nu, 64, 1.0);
        const Grid grid(64);
        StepperWorkspace ws(grid);
        const State s0 = constant_state(64, 2.5);
        const State s1 = nu > 0.0 ? step_resistive(s0, cfg, ws, 1e-3)
                                  : step_nonresistive(s0, cfg, ws, 1e-3);
        for (int i = 0; i < 64; ++i) {
            CHECK(s1.rho[i] == 2.5);
            CHECK(s1.b[i] == 0.0);
        }
        for (int j = 0; j <= 64; ++j) CHECK(s1.u[j] == 0.0);
        CHECK(s1.time == doctest::Approx(1e-3));
    }
}

TEST_CASE("stepper selection checks nu") {
    ScenarioConfig cfg = trivial_config(1.0, 0.0, 32, 1.0);
    const Grid grid(32);
    StepperWorkspace ws(grid);
    const State s = constant_state(32, 1.0);
    CHECK_THROWS_AS(step_resistive(s, cfg, ws, 1e-3), UsageError);
    cfg.nu = 1e-3;
    cfg.boundary_b = BoundaryMagnetic::constant(0.0, 0.0);
    CHECK_THROWS_AS(step_nonresistive(s, cfg, ws, 1e-3), UsageError);
}

TEST_CASE("resistive stepper reproduces an implicit heat solve for frozen velocity") {
    const int n = 64;
    const Grid grid(n);
    ScenarioConfig cfg = trivial_config(1.0, 2e-3, n, 1.0);
    StepperWorkspace ws(grid);
    StepHooks hooks;
    hooks.freeze_velocity = true;
    hooks.freeze_density = true;

    State s = constant_state(n, 1.0);
    s.b[n / 2] = 1.0;  // spike
    std::vector<double> oracle = s.b;

    const double dt = 1e-3;
    const double r = cfg.nu * dt / (grid.dx() * grid.dx());
    for (int step = 0; step < 100; ++step) {
        double mass_before = 0.0;
        for (double v : s.b) mass_before += v;
        mass_before *= grid.dx();

        s = step_resistive(s, cfg, ws, dt, &hooks);

        // independent dense backward-Euler heat solve with the same ghost
        // Dirichlet treatment
        std::vector<std::vector<double>> full(n, std::vector<double>(n, 0.0));
        for (int i = 0; i < n; ++i) {
            const bool wall = i == 0 || i == n - 1;
            full[i][i] = 1.0 + (wall ? 3.0 : 2.0) * r;
            if (i > 0) full[i][i - 1] = -r;
            if (i < n - 1) full[i][i + 1] = -r;
        }
        oracle = dense_solve(full, oracle);
        for (int i = 0; i < n; ++i) CHECK(s.b[i] == doctest::Approx(oracle[i]).epsilon(1e-10));

        // the b budget closes through the wall diffusive fluxes alone
        double mass_after = 0.0;
        for (double v : s.b) mass_after += v;
        mass_after *= grid.dx();
        const double grad_l = 2.0 * (s.b[0] - 0.0) / grid.dx();
        const double grad_r = 2.0 * (0.0 - s.b[n - 1]) / grid.dx();
        const double boundary_flux = dt * cfg.nu * (grad_r - grad_l);
        CHECK(mass_after - mass_before == doctest::Approx(boundary_flux).epsilon(1e-9));
    }
    // heat decay: the spike spreads and the peak comes down
    CHECK(linf_norm(s.b, grid) < 1.0);
}

TEST_CASE("non-resistive stepper matches a standalone upwind advection oracle") {
    const int n = 128;
    const Grid grid(n);
    ScenarioConfig cfg = trivial_config(1.0, 0.0, n, 1.0);
    StepperWorkspace ws(grid);
    StepHooks hooks;
    hooks.freeze_velocity = true;

    State s = constant_state(n, 1.0);
    for (int j = 1; j < n; ++j) {
        const double x = grid.face(j);
        s.u[j] = 0.2 * std::sin(pi * x) * std::sin(pi * x) - 0.05 * std::sin(2.0 * pi * x);
    }
    for (int i = 0; i < n; ++i) s.b[i] = std::exp(-50.0 * std::pow(grid.center(i) - 0.4, 2));

    std::vector<double> oracle = s.b;
    const double dt = 0.5 * grid.dx();
    for (int step = 0; step < 50; ++step) {
        const std::vector<double> u = s.u;  // frozen
        s = step_nonresistive(s, cfg, ws, dt, &hooks);

        std::vector<double> flux(n + 1, 0.0);
        for (int j = 1; j < n; ++j)
            flux[j] = u[j] * (u[j] > 0.0 ? oracle[j - 1] : oracle[j]);
        std::vector<double> next(n);
        for (int i = 0; i < n; ++i)
            next[i] = oracle[i] - dt / grid.dx() * (flux[i + 1] - flux[i]);
        oracle = next;
        for (int i = 0; i < n; ++i) CHECK(s.b[i] == doctest::Approx(oracle[i]).epsilon(1e-13));
    }
}

TEST_CASE("non-resistive induction conserves the discrete b integral exactly") {
    const int n = 96;
    const Grid grid(n);
    ScenarioConfig cfg = trivial_config(1.0, 0.0, n, 1e6);
    cfg.initial = InitialData::smooth(1.0, 0.15, 0.1, 0.2);
    StepperWorkspace ws(grid);

    State s = make_initial_state(cfg);
    double b0 = 0.0;
    for (double v : s.b) b0 += v;
    for (int step = 0; step < 500; ++step) {
        const double dt = cfl_dt(s, cfg);
        s = step_nonresistive(s, cfg, ws, dt);
    }
    double b1 = 0.0;
    for (double v : s.b) b1 += v;
    CHECK(std::abs(b1 - b0) <= 1e-11 * std::max(1.0, std::abs(b0)));
}

TEST_CASE("mass is conserved to round-off by both steppers") {
    for (double nu : {0.0, 1e-3}) {
        ScenarioConfig cfg = trivial_config(1.0, nu, 128, 1e6);
        cfg.initial = InitialData::smooth(1.0, 0.1, 0.1, 0.1);
        cfg.max_steps = 2000;
        const RunResult res = run(cfg);
        CHECK(res.step_count == 2000);
        const double m0 = res.invariants.front().total_mass;
        double drift = 0.0;
        for (const auto& rec : res.invariants)
            drift = std::max(drift, std::abs(rec.total_mass - m0));
        CHECK(drift / m0 <= 1e-12);
    }
}

TEST_CASE("trivial scenario stays at the initial state") {
    ScenarioConfig cfg = trivial_config(1.0, 0.0, 256, 1.0);
    cfg.snapshot_times = {0.25, 1.0};
    const RunResult res = run(cfg);
    REQUIRE(res.snapshots.size() == 2);
    for (const auto& snap : res.snapshots) {
        for (int i = 0; i < 256; ++i) {
            CHECK(std::abs(snap.state.rho[i] - 1.0) <= 1e-12);
            CHECK(std::abs(snap.state.b[i]) <= 1e-12);
        }
        for (int j = 0; j <= 256; ++j) CHECK(std::abs(snap.state.u[j]) <= 1e-12);
    }
}

TEST_CASE("single snapshot request yields exactly one snapshot at T") {
    ScenarioConfig cfg = trivial_config(1.0, 0.0, 64, 0.37);
    cfg.initial = InitialData::smooth(1.0, 0.05, 0.0, 0.1);
    cfg.snapshot_times = {0.37};
    const RunResult res = run(cfg);
    REQUIRE(res.snapshots.size() == 1);
    CHECK(res.snapshots[0].time == 0.37);
    CHECK(res.snapshots[0].state.time == 0.37);
}

TEST_CASE("runs are bitwise deterministic") {
    ScenarioConfig cfg = trivial_config(1.0, 1e-3, 64, 0.1);
    cfg.initial = InitialData::smooth(1.0, 0.1, 0.05, 0.1);
    cfg.boundary_b = BoundaryMagnetic::ramp(0.5, 0.5, 0.02);
    cfg.snapshot_times = {0.1};
    const RunResult a = run(cfg);
    const RunResult b = run(cfg);
    REQUIRE(a.invariants.size() == b.invariants.size());
    for (std::size_t k = 0; k < a.invariants.size(); ++k) {
        CHECK(a.invariants[k].energy == b.invariants[k].energy);
        CHECK(a.invariants[k].total_mass == b.invariants[k].total_mass);
    }
    CHECK(a.snapshots.back().state.rho == b.snapshots.back().state.rho);
    CHECK(a.snapshots.back().state.u == b.snapshots.back().state.u);
    CHECK(a.snapshots.back().state.b == b.snapshots.back().state.b);
}

TEST_CASE("stepping identical states through a shared workspace is reproducible") {
    ScenarioConfig cfg = trivial_config(1.0, 1e-3, 64, 1.0);
    cfg.initial = InitialData::smooth(1.0, 0.1, 0.05, 0.1);
    cfg.boundary_b = BoundaryMagnetic::constant(0.2, -0.1);
    const Grid grid(64);
    StepperWorkspace ws(grid);
    const State s0 = make_initial_state(cfg);
    const State a = step_resistive(s0, cfg, ws, 1e-3);
    const State b = step_resistive(s0, cfg, ws, 1e-3);  // reused workspace
    CHECK(a.rho == b.rho);
    CHECK(a.u == b.u);
    CHECK(a.b == b.b);
}

TEST_CASE("vacuum abort carries the failure time") {
    ScenarioConfig cfg = trivial_config(1.0, 0.0, 32, 10.0);
    const Grid grid(32);
    StepperWorkspace ws(grid);
    State s = constant_state(32, 1.0);
    for (int j = 1; j < 32; ++j) s.u[j] = grid.face(j) < 0.5 ? -50.0 : 50.0;
    bool caught = false;
    try {
        for (int k = 0; k < 100; ++k) s = step_nonresistive(s, cfg, ws, 5e-3);
    } catch (const SolverError& e) {
        caught = true;
        CHECK(e.failure_time() > 0.0);
    }
    CHECK(caught);
}

TEST_CASE("run lands on every requested snapshot time") {
    ScenarioConfig cfg = trivial_config(1.0, 0.0, 64, 0.5);
    cfg.initial = InitialData::smooth(1.0, 0.05, 0.02, 0.0);
    cfg.snapshot_times = {0.1, 0.2, 0.3, 0.4, 0.5};
    const RunResult res = run(cfg);
    REQUIRE(res.snapshots.size() == 5);
    for (std::size_t k = 0; k < 5; ++k)
        CHECK(res.snapshots[k].state.time ==
              doctest::Approx(cfg.snapshot_times[k]).epsilon(1e-14));
}
