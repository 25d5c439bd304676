#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mhd1d/layer.hpp"

using namespace mhd1d;

namespace {

LayerScenario desk_scenario() {
    LayerScenario scn;
    scn.rho_bar = 1.0;
    scn.boundary_b = BoundaryMagnetic::ramp(1.0, 1.0, 0.05);
    scn.nu_ladder = {1e-2, 1e-3, 1e-4};
    scn.delta_p = 0.4;
    scn.epsilon_thickness = 0.01;
    scn.t_final = 0.1;
    scn.grid_n = 1024;
    return scn;
}

}  // namespace

TEST_CASE("thickness estimator level sets") {
    const Grid grid(4096);
    const int n = grid.n_cells();

    std::vector<double> zeros(n, 0.0);
    CHECK(thickness_estimate(zeros, grid, 1.0, 0.01) == 0.0);

    std::vector<double> flat(n, 2.0);
    CHECK(thickness_estimate(flat, grid, 2.0, 0.01) == 0.5);

    // two-sided exponential layer; tau solves exp(-tau/l) = eps
    const double ell = 0.01;
    std::vector<double> prof(n);
    for (int i = 0; i < n; ++i) {
        const double x = grid.center(i);
        prof[i] = std::exp(-x / ell) + std::exp(-(1.0 - x) / ell);
    }
    const double tau = thickness_estimate(prof, grid, 1.0, 0.01);
    const double expected = ell * std::log(1.0 / 0.01);
    CHECK(std::abs(tau - expected) <= 2.0 * grid.dx());

    CHECK_THROWS_AS(thickness_estimate(prof, grid, 0.0, 0.01), std::domain_error);
}

TEST_CASE("layer scenario validation") {
    LayerScenario scn = desk_scenario();
    CHECK_NOTHROW(scn.validate());

    LayerScenario bad = scn;
    bad.delta_p = 0.5;  // delta/sqrt(nu) would not diverge
    CHECK_THROWS_AS(bad.validate(), UsageError);

    bad = scn;
    bad.boundary_b = BoundaryMagnetic::constant(0.0, 0.0);
    CHECK_THROWS_AS(bad.validate(), UsageError);

    bad = scn;
    bad.boundary_b = BoundaryMagnetic::none();
    CHECK_THROWS_AS(bad.validate(), UsageError);

    bad = scn;
    bad.nu_ladder = {1e-3, 1e-2};
    CHECK_THROWS_AS(bad.validate(), UsageError);
}

TEST_CASE("under-resolved grids are rejected") {
    LayerScenario scn = desk_scenario();
    scn.nu_ladder = {1e-2, 1e-3, 1e-4};
    scn.grid_n = 256;  // dx = 3.9e-3 > sqrt(1e-4)/8
    CHECK_THROWS_AS(run_layer_study(scn), UsageError);
}

TEST_CASE("desk-scale layer study reproduces the interior/boundary dichotomy") {
    const LayerScenario scn = desk_scenario();
    const LayerReport report = run_layer_study(scn);
    REQUIRE(report.rows.size() == 3);
    CHECK(report.boundary_peak == doctest::Approx(1.0));

    for (const LayerRow& row : report.rows) {
        // interior never exceeds the full-domain sup
        CHECK(row.interior_b_sup <= row.full_b_sup + 1e-15);
        CHECK(row.interior_rho_dev <= row.full_rho_dev + 1e-15);
        // the layer persists at the walls
        CHECK(row.full_b_sup >= 0.5 * report.boundary_peak);
        // sup bound on |b| (discrete maximum-principle behavior)
        CHECK(row.full_b_sup <= report.boundary_peak + 0.01);
        // no vacuum, no blow-up
        CHECK(row.rho_min >= 0.1 * scn.rho_bar);
        CHECK(row.rho_max <= 10.0 * scn.rho_bar);
        CHECK(row.thickness > 0.0);
        CHECK(row.thickness < 0.5);
    }

    // interior sup of b decays as nu shrinks while the full sup persists
    for (std::size_t i = 1; i < report.rows.size(); ++i)
        CHECK(report.rows[i].interior_b_sup < report.rows[i - 1].interior_b_sup);
    CHECK(report.rows.back().interior_b_sup <= 0.25 * report.rows.front().interior_b_sup);
    CHECK(report.rows.back().interior_rho_dev <= 0.25 * report.rows.front().interior_rho_dev);

    // thinner layers for smaller nu
    for (std::size_t i = 1; i < report.rows.size(); ++i)
        CHECK(report.rows[i].thickness < report.rows[i - 1].thickness);

    // velocity has no layer: its gradient energy vanishes with nu
    const auto fit = velocity_no_layer_check(report);
    REQUIRE(fit.has_value());
    CHECK(fit->exponent >= 0.3);
    CHECK(fit->exponent <= 0.9);

    // u sup decreases along the ladder
    for (std::size_t i = 1; i < report.rows.size(); ++i)
        CHECK(report.rows[i].u_linf < report.rows[i - 1].u_linf);

    // the report carries the final profiles it was fitted from
    REQUIRE(report.final_b.size() == report.rows.size());
    const Grid grid(scn.grid_n);
    for (std::size_t i = 0; i < report.final_b.size(); ++i) {
        REQUIRE(report.final_b[i].size() == static_cast<std::size_t>(scn.grid_n));
        CHECK(linf_norm(report.final_b[i], grid) <= report.rows[i].full_b_sup + 1e-15);
    }
}

TEST_CASE("velocity check is not applicable without a usable fit") {
    LayerReport report;
    ColumnFit cf;
    cf.column = "sup_ux_sq_l2";
    cf.points_used = 0;  // zero boundary signal: no positive values to fit
    report.fits.push_back(cf);
    CHECK_FALSE(velocity_no_layer_check(report).has_value());
}

TEST_CASE("interior sup is monotone in delta for a fixed run") {
    const LayerScenario scn = desk_scenario();
    ScenarioConfig cfg;
    cfg.params = scn.params;
    cfg.nu = 3e-3;
    cfg.grid_n = scn.grid_n;
    cfg.t_final = scn.t_final;
    cfg.initial = InitialData::constant(scn.rho_bar);
    cfg.boundary_b = scn.boundary_b;
    const RunResult res = run(cfg);
    const Grid grid(scn.grid_n);
    double prev = linf_norm(res.envelopes.abs_b_max, grid);
    for (double delta : {0.05, 0.1, 0.2, 0.3}) {
        const double cur = interior_linf(res.envelopes.abs_b_max, grid, delta);
        CHECK(cur <= prev + 1e-15);
        prev = cur;
    }
}
