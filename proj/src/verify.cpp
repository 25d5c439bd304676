#include "mhd1d/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mhd1d/parallel.hpp"

namespace mhd1d {

ManufacturedCase constant_manufactured_case(double rho_bar) {
    if (!(rho_bar > 0.0)) throw UsageError("constant_manufactured_case: rho_bar must be > 0");
    ManufacturedCase mc;
    mc.rho = [rho_bar](double, double) { return rho_bar; };
    mc.u = [](double, double) { return 0.0; };
    mc.b = [](double, double) { return 0.0; };
    mc.s_rho = [](double, double) { return 0.0; };
    mc.s_u = [](double, double) { return 0.0; };
    mc.s_b = [](double, double) { return 0.0; };
    return mc;
}

ManufacturedCase smooth_decay_case(const FluidParams& params, double nu) {
    using std::numbers::pi;
    constexpr double ar = 0.1, au = 0.1, ab = 0.1;

    auto rho = [=](double x, double t) { return 2.0 + ar * std::sin(2.0 * pi * x) * std::exp(-t); };
    auto u = [=](double x, double t) {
        const double s = std::sin(pi * x);
        return au * s * s * std::exp(-t);
    };
    auto b = [=](double x, double t) { return ab * std::cos(pi * x) * std::exp(-t); };

    ManufacturedCase mc;
    mc.rho = rho;
    mc.u = u;
    mc.b = b;
    mc.s_rho = [=](double x, double t) {
        const double E = std::exp(-t);
        const double rho_t = -ar * std::sin(2.0 * pi * x) * E;
        const double rho_x = 2.0 * pi * ar * std::cos(2.0 * pi * x) * E;
        const double u_x = au * pi * std::sin(2.0 * pi * x) * E;
        return rho_t + rho_x * u(x, t) + rho(x, t) * u_x;
    };
    mc.s_u = [=, A = params.A, g = params.gamma, lam = params.lambda](double x, double t) {
        const double E = std::exp(-t);
        const double u_t = -u(x, t);
        const double u_x = au * pi * std::sin(2.0 * pi * x) * E;
        const double u_xx = 2.0 * pi * pi * au * std::cos(2.0 * pi * x) * E;
        const double rho_x = 2.0 * pi * ar * std::cos(2.0 * pi * x) * E;
        const double p_x = A * g * std::pow(rho(x, t), g - 1.0) * rho_x;
        const double b_x = -ab * pi * std::sin(pi * x) * E;
        return rho(x, t) * (u_t + u(x, t) * u_x) + p_x + b(x, t) * b_x - lam * u_xx;
    };
    mc.s_b = [=](double x, double t) {
        const double E = std::exp(-t);
        const double b_t = -b(x, t);
        const double b_x = -ab * pi * std::sin(pi * x) * E;
        const double b_xx = -pi * pi * ab * std::cos(pi * x) * E;
        const double u_x = au * pi * std::sin(2.0 * pi * x) * E;
        return b_t + u_x * b(x, t) + u(x, t) * b_x - nu * b_xx;
    };
    return mc;
}

double trivial_solution_check(double rho_bar, double nu, int grid_n, double T,
                              const FluidParams& params) {
    if (!(rho_bar > 0.0)) throw UsageError("trivial_solution_check: rho_bar must be > 0");
    ScenarioConfig cfg;
    cfg.params = params;
    cfg.nu = nu;
    cfg.grid_n = grid_n;
    cfg.t_final = T;
    cfg.initial = InitialData::constant(rho_bar);
    cfg.boundary_b =
        nu > 0.0 ? BoundaryMagnetic::constant(0.0, 0.0) : BoundaryMagnetic::none();
    const RunResult res = run(cfg);

    double rho_dev = 0.0, u_dev = 0.0, b_dev = 0.0;
    for (double v : res.envelopes.rho_max) rho_dev = std::max(rho_dev, v - rho_bar);
    for (double v : res.envelopes.rho_min) rho_dev = std::max(rho_dev, rho_bar - v);
    for (double v : res.envelopes.abs_u_max) u_dev = std::max(u_dev, v);
    for (double v : res.envelopes.abs_b_max) b_dev = std::max(b_dev, v);
    return rho_dev + u_dev + b_dev;
}

namespace {

State sample_case(const ManufacturedCase& mc, const Grid& grid, double t) {
    const int n = grid.n_cells();
    State s;
    s.rho.resize(n);
    s.b.resize(n);
    s.u.resize(n + 1);
    for (int i = 0; i < n; ++i) {
        s.rho[i] = mc.rho(grid.center(i), t);
        s.b[i] = mc.b(grid.center(i), t);
    }
    for (int j = 0; j <= n; ++j) s.u[j] = mc.u(grid.face(j), t);
    s.u[0] = 0.0;
    s.u[n] = 0.0;
    s.time = t;
    return s;
}

std::array<double, 3> mms_errors(const ManufacturedCase& mc, const State& numerical,
                                 const Grid& grid, double t) {
    const State exact = sample_case(mc, grid, t);
    const int n = grid.n_cells();
    std::vector<double> dc(n), du(n + 1);
    for (int i = 0; i < n; ++i) dc[i] = numerical.rho[i] - exact.rho[i];
    const double e_rho = l2_norm(dc, grid);
    for (int i = 0; i < n; ++i) dc[i] = numerical.b[i] - exact.b[i];
    const double e_b = l2_norm(dc, grid);
    for (int j = 0; j <= n; ++j) du[j] = numerical.u[j] - exact.u[j];
    const double e_u = l2_norm(du, grid);
    return {e_rho, e_u, e_b};
}

}  // namespace

MmsStudy mms_order_study(const ManufacturedCase& mc, double nu, std::span<const int> grid_ladder,
                         double T, const FluidParams& params, double cfl) {
    if (grid_ladder.size() < 2) throw UsageError("mms_order_study: need at least 2 grids");
    MmsStudy study;
    study.grids.assign(grid_ladder.begin(), grid_ladder.end());
    study.errors.resize(grid_ladder.size());

    StepHooks hooks;
    hooks.source_rho = mc.s_rho;
    hooks.source_u = mc.s_u;
    hooks.source_b = mc.s_b;
    if (nu > 0.0) {
        hooks.dirichlet_b_left = [&mc](double t) { return mc.b(0.0, t); };
        hooks.dirichlet_b_right = [&mc](double t) { return mc.b(1.0, t); };
    }

    parallel_for_ordered(grid_ladder.size(), [&](std::size_t k) {
        ScenarioConfig cfg;
        cfg.params = params;
        cfg.nu = nu;
        cfg.grid_n = grid_ladder[k];
        cfg.t_final = T;
        cfg.cfl = cfl;
        cfg.snapshot_times = {T};
        const Grid grid(cfg.grid_n);
        const RunResult res = run(cfg, sample_case(mc, grid, 0.0), &hooks);
        study.errors[k] = mms_errors(mc, res.snapshots.back().state, grid, T);
    });

    bool exact = true;
    for (const auto& e : study.errors)
        for (double v : e)
            if (v > 1e-12) exact = false;
    study.exact = exact;

    for (int f = 0; f < 3; ++f) {
        for (std::size_t k = 0; k + 1 < study.errors.size(); ++k) {
            const double coarse = study.errors[k][f];
            const double fine = study.errors[k + 1][f];
            if (!(fine < coarse)) study.errors_monotone = false;
            study.orders[f].push_back(fine > 0.0 && coarse > 0.0 ? std::log2(coarse / fine)
                                                                 : 0.0);
        }
    }
    if (study.exact) study.errors_monotone = true;
    return study;
}

SelfConvergence self_convergence(const ScenarioConfig& config, int k_levels) {
    if (k_levels < 3) throw UsageError("self_convergence: need at least 3 levels");
    SelfConvergence out;
    std::vector<RunResult> results(k_levels);
    for (int k = 0; k < k_levels; ++k) out.grids.push_back(config.grid_n << k);

    parallel_for_ordered(k_levels, [&](std::size_t k) {
        ScenarioConfig cfg = config;
        cfg.grid_n = out.grids[k];
        cfg.snapshot_times = {config.t_final};
        results[k] = run(cfg);
    });

    for (int k = 0; k + 1 < k_levels; ++k) {
        const Grid coarse(out.grids[k]);
        const State& a = results[k].snapshots.back().state;
        const State& b = results[k + 1].snapshots.back().state;
        const std::vector<double> rho_f = coarsen_centers(b.rho, 2);
        const std::vector<double> b_f = coarsen_centers(b.b, 2);
        const std::vector<double> u_f = coarsen_faces(b.u, 2);
        std::vector<double> dc(out.grids[k]), du(out.grids[k] + 1);
        for (int i = 0; i < out.grids[k]; ++i) dc[i] = a.rho[i] - rho_f[i];
        double acc = l2_norm(dc, coarse);
        double sq = acc * acc;
        for (int i = 0; i < out.grids[k]; ++i) dc[i] = a.b[i] - b_f[i];
        acc = l2_norm(dc, coarse);
        sq += acc * acc;
        for (int j = 0; j <= out.grids[k]; ++j) du[j] = a.u[j] - u_f[j];
        acc = l2_norm(du, coarse);
        sq += acc * acc;
        out.diffs.push_back(std::sqrt(sq));
    }
    for (double d : out.diffs)
        if (d < 1e-13) out.applicable = false;
    if (out.applicable) {
        for (std::size_t k = 0; k + 1 < out.diffs.size(); ++k)
            out.ratios.push_back(out.diffs[k] / out.diffs[k + 1]);
    }
    return out;
}

}  // namespace mhd1d
