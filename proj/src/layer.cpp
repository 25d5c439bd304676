#include "mhd1d/layer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mhd1d/parallel.hpp"

namespace mhd1d {

bool is_identically_zero(const BoundaryMagnetic& boundary) {
    using Kind = BoundaryMagnetic::Kind;
    switch (boundary.kind) {
        case Kind::none:
            return true;
        case Kind::constant:
        case Kind::ramp:
            return boundary.c1 == 0.0 && boundary.c2 == 0.0;
        case Kind::sinusoid:
            return (boundary.a1 == 0.0 || boundary.omega1 == 0.0) &&
                   (boundary.a2 == 0.0 || boundary.omega2 == 0.0);
    }
    return true;
}

double LayerScenario::delta(double nu) const { return std::pow(nu, delta_p); }

void LayerScenario::validate() const {
    params.validate();
    if (!(rho_bar > 0.0)) throw UsageError("LayerScenario: rho_bar must be > 0");
    if (boundary_b.kind == BoundaryMagnetic::Kind::none || is_identically_zero(boundary_b))
        throw UsageError("LayerScenario: boundary signal must not be identically zero");
    if (nu_ladder.empty()) throw UsageError("LayerScenario: empty nu ladder");
    for (std::size_t i = 0; i < nu_ladder.size(); ++i) {
        if (!(nu_ladder[i] > 0.0 && nu_ladder[i] < 1.0))
            throw UsageError("LayerScenario: ladder entries must lie in (0,1)");
        if (i > 0 && !(nu_ladder[i] < nu_ladder[i - 1]))
            throw UsageError("LayerScenario: ladder must be strictly decreasing");
    }
    if (!(delta_p > 0.0 && delta_p < 0.5))
        throw UsageError("LayerScenario: delta exponent must lie in (0, 1/2)");
    if (!(epsilon_thickness > 0.0 && epsilon_thickness < 1.0))
        throw UsageError("LayerScenario: epsilon must lie in (0,1)");
    if (!(t_final > 0.0)) throw UsageError("LayerScenario: t_final must be > 0");
    if (!(cfl > 0.0 && cfl < 1.0)) throw UsageError("LayerScenario: cfl must lie in (0,1)");
    if (grid_n < 2) throw UsageError("LayerScenario: grid_n must be >= 2");
}

double thickness_estimate(std::span<const double> b_profile, const Grid& grid,
                          double boundary_amplitude, double epsilon) {
    if (!(boundary_amplitude > 0.0))
        throw std::domain_error("thickness_estimate: boundary amplitude must be > 0");
    const int n = grid.n_cells();
    if (b_profile.size() != static_cast<std::size_t>(n))
        throw UsageError("thickness_estimate: profile must live at cell centers");
    const double threshold = epsilon * boundary_amplitude;

    // inner_max[k] = max |b| over cells k .. n-1-k; delta = k dx admits
    // exactly the centers with index >= k
    const int k_max = (n - 1) / 2;
    std::vector<double> inner_max(k_max + 1, 0.0);
    inner_max[k_max] = std::abs(b_profile[k_max]);
    if (n - 1 - k_max != k_max)
        inner_max[k_max] = std::max(inner_max[k_max], std::abs(b_profile[n - 1 - k_max]));
    for (int k = k_max - 1; k >= 0; --k)
        inner_max[k] = std::max({inner_max[k + 1], std::abs(b_profile[k]),
                                 std::abs(b_profile[n - 1 - k])});
    for (int k = 0; k <= k_max; ++k) {
        if (inner_max[k] <= threshold) return k * grid.dx();
    }
    return 0.5;  // the layer fills the domain
}

LayerReport run_layer_study(const LayerScenario& scenario) {
    scenario.validate();
    const Grid grid(scenario.grid_n);
    const double nu_min = scenario.nu_ladder.back();
    if (!(grid.dx() <= std::sqrt(nu_min) / 8.0)) {
        std::ostringstream os;
        os << "run_layer_study: grid under-resolves the smallest layer (need dx <= "
           << std::sqrt(nu_min) / 8.0 << ", have " << grid.dx() << ")";
        throw UsageError(os.str());
    }

    LayerReport report;
    {
        const int samples = 2048;
        for (int i = 0; i <= samples; ++i) {
            const double t = scenario.t_final * i / samples;
            report.boundary_peak =
                std::max({report.boundary_peak, std::abs(scenario.boundary_b.b1(t)),
                          std::abs(scenario.boundary_b.b2(t))});
        }
    }

    const std::size_t m = scenario.nu_ladder.size();
    std::vector<LayerRow> rows(m);
    std::vector<std::vector<double>> profiles(m);
    parallel_for_ordered(m, [&](std::size_t i) {
        const double nu = scenario.nu_ladder[i];
        ScenarioConfig cfg;
        cfg.params = scenario.params;
        cfg.nu = nu;
        cfg.grid_n = scenario.grid_n;
        cfg.t_final = scenario.t_final;
        cfg.cfl = scenario.cfl;
        cfg.initial = InitialData::constant(scenario.rho_bar);
        cfg.boundary_b = scenario.boundary_b;
        cfg.snapshot_times = {scenario.t_final};

        RunResult res;
        try {
            res = run(cfg);
        } catch (const SolverError& e) {
            std::ostringstream os;
            os << "layer entry nu=" << nu << " failed: " << e.what();
            throw SolverError(os.str(), e.failure_time(), e.cell());
        }

        LayerRow row;
        row.nu = nu;
        row.delta = scenario.delta(nu);

        const int n = grid.n_cells();
        std::vector<double> rho_dev(n);
        for (int c = 0; c < n; ++c)
            rho_dev[c] = std::max(res.envelopes.rho_max[c] - scenario.rho_bar,
                                  scenario.rho_bar - res.envelopes.rho_min[c]);
        row.interior_b_sup = interior_linf(res.envelopes.abs_b_max, grid, row.delta);
        row.interior_rho_dev = interior_linf(rho_dev, grid, row.delta);
        row.full_b_sup = linf_norm(res.envelopes.abs_b_max, grid);
        row.full_rho_dev = linf_norm(rho_dev, grid);
        row.u_linf = linf_norm(res.envelopes.abs_u_max, grid);

        row.rho_min = res.envelopes.rho_min[0];
        row.rho_max = res.envelopes.rho_max[0];
        for (int c = 1; c < n; ++c) {
            row.rho_min = std::min(row.rho_min, res.envelopes.rho_min[c]);
            row.rho_max = std::max(row.rho_max, res.envelopes.rho_max[c]);
        }
        for (const InvariantRecord& rec : res.invariants) {
            row.sup_ux_sq = std::max(row.sup_ux_sq, rec.ux_l2 * rec.ux_l2);
            row.sup_weighted_h1 = std::max(row.sup_weighted_h1, rec.weighted_h1);
        }

        const double amp_final = std::max(std::abs(scenario.boundary_b.b1(scenario.t_final)),
                                          std::abs(scenario.boundary_b.b2(scenario.t_final)));
        if (amp_final > 0.0) {
            row.thickness = thickness_estimate(res.snapshots.back().state.b, grid, amp_final,
                                               scenario.epsilon_thickness);
        } else {
            row.thickness = std::numeric_limits<double>::quiet_NaN();
        }
        profiles[i] = res.snapshots.back().state.b;
        rows[i] = row;
    });
    report.rows = std::move(rows);
    report.final_b = std::move(profiles);

    struct ColumnSpec {
        const char* name;
        double LayerRow::* member;
    };
    const ColumnSpec columns[] = {
        {"sup_ux_sq_l2", &LayerRow::sup_ux_sq},
        {"sup_weighted_h1", &LayerRow::sup_weighted_h1},
        {"thickness", &LayerRow::thickness},
        {"interior_b_sup", &LayerRow::interior_b_sup},
    };
    for (const ColumnSpec& col : columns) {
        ColumnFit cf;
        cf.column = col.name;
        std::vector<std::pair<double, double>> pts;
        for (const LayerRow& r : report.rows) {
            const double v = r.*(col.member);
            if (std::isfinite(v) && v > 0.0) pts.emplace_back(r.nu, v);
        }
        cf.points_used = static_cast<int>(pts.size());
        if (pts.size() >= 3) {
            cf.fit = fit_rate(pts);
        } else {
            cf.note = "fewer than 3 usable points";
        }
        report.fits.push_back(std::move(cf));
    }
    return report;
}

std::optional<FitResult> velocity_no_layer_check(const LayerReport& report) {
    for (const ColumnFit& cf : report.fits) {
        if (cf.column == "sup_ux_sq_l2") return cf.fit;
    }
    return std::nullopt;
}

}  // namespace mhd1d
