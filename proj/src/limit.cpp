#include "mhd1d/limit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mhd1d/parallel.hpp"

namespace mhd1d {

FitResult fit_rate(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3) throw UsageError("fit_rate: need at least 3 points");
    const std::size_t m = points.size();
    std::vector<double> xs(m), ys(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (!(points[i].first > 0.0)) throw UsageError("fit_rate: nu must be positive");
        if (!(points[i].second > 0.0)) throw UsageError("fit_rate: values must be positive");
        xs[i] = std::log(points[i].first);
        ys[i] = std::log(points[i].second);
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= m;
    my /= m;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx == 0.0) throw UsageError("fit_rate: nu values must be distinct");

    FitResult fit;
    fit.exponent = sxy / sxx;
    fit.prefactor = std::exp(my - fit.exponent * mx);
    if (syy > 0.0) {
        double ss_res = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double pred = my + fit.exponent * (xs[i] - mx);
            ss_res += (ys[i] - pred) * (ys[i] - pred);
        }
        fit.r_squared = 1.0 - ss_res / syy;
    } else {
        fit.r_squared = 0.0;  // constant data: the fit explains nothing
    }
    return fit;
}

// ---------------------------------------------------------------------------
// SweepSpec
// ---------------------------------------------------------------------------

SweepSpec SweepSpec::from_base(ScenarioConfig base, std::vector<double> nu_ladder) {
    SweepSpec spec;
    spec.reference = base;
    spec.reference.nu = 0.0;
    spec.reference.boundary_b = BoundaryMagnetic::none();
    spec.base = std::move(base);
    spec.nu_ladder = std::move(nu_ladder);
    std::sort(spec.nu_ladder.begin(), spec.nu_ladder.end(), std::greater<>());
    for (int i = 1; i <= spec.comparison_count; ++i)
        spec.comparison_times.push_back(spec.base.t_final * i / spec.comparison_count);
    spec.comparison_times.back() = spec.base.t_final;
    return spec;
}

void SweepSpec::validate() const {
    if (nu_ladder.empty()) throw UsageError("SweepSpec: empty nu ladder");
    for (std::size_t i = 0; i < nu_ladder.size(); ++i) {
        if (!(nu_ladder[i] > 0.0 && nu_ladder[i] < 1.0))
            throw UsageError("SweepSpec: ladder entries must lie in (0,1)");
        if (i > 0 && !(nu_ladder[i] < nu_ladder[i - 1]))
            throw UsageError("SweepSpec: ladder must be strictly decreasing");
    }
    ScenarioConfig resistive = base;
    resistive.nu = nu_ladder.front();
    resistive.validate();
    reference.validate();
    if (reference.nu != 0.0) throw UsageError("SweepSpec: reference must have nu = 0");
    if (reference.grid_n != base.grid_n || reference.t_final != base.t_final ||
        reference.cfl != base.cfl)
        throw UsageError("SweepSpec: resistive and reference scenarios must share grid and horizon");
    if (!(reference.params == base.params) || !(reference.initial == base.initial))
        throw UsageError("SweepSpec: resistive and reference scenarios must share data");
    if (comparison_times.empty()) throw UsageError("SweepSpec: no comparison times");
    for (double t : comparison_times)
        if (!(t > 0.0 && t <= base.t_final))
            throw UsageError("SweepSpec: comparison times must lie in (0, T]");
}

// ---------------------------------------------------------------------------
// run_sweep
// ---------------------------------------------------------------------------

namespace {

struct DiffColumns {
    double sup_rho = 0.0, sup_u = 0.0, sup_b = 0.0, int_dux = 0.0;
};

double dux_diff_sq(const State& a, const State& b, const Grid& grid) {
    const int n = grid.n_cells();
    const double dx = grid.dx();
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double d = ((a.u[i + 1] - b.u[i + 1]) - (a.u[i] - b.u[i])) / dx;
        acc += d * d;
    }
    return acc * dx;
}

std::vector<double> field_diff(std::span<const double> a, std::span<const double> b) {
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    return d;
}

/// Snapshot-by-snapshot difference norms against the reference run, plus the
/// trapezoid-in-time integral of ||(u^nu - u)_x||^2 (both runs coincide at
/// t=0, contributing a zero node).
DiffColumns diff_columns(const RunResult& res, const RunResult& ref, const Grid& grid,
                         std::span<const double> times) {
    if (res.snapshots.size() != times.size() || ref.snapshots.size() != times.size())
        throw UsageError("run_sweep: runs did not produce the expected snapshots");
    DiffColumns out;
    double prev_t = 0.0, prev_g = 0.0;
    for (std::size_t k = 0; k < times.size(); ++k) {
        const State& a = res.snapshots[k].state;
        const State& b = ref.snapshots[k].state;
        out.sup_rho = std::max(out.sup_rho, l2_norm(field_diff(a.rho, b.rho), grid));
        out.sup_u = std::max(out.sup_u, l2_norm(field_diff(a.u, b.u), grid));
        out.sup_b = std::max(out.sup_b, l2_norm(field_diff(a.b, b.b), grid));
        const double g = dux_diff_sq(a, b, grid);
        out.int_dux += 0.5 * (times[k] - prev_t) * (g + prev_g);
        prev_t = times[k];
        prev_g = g;
    }
    return out;
}

RunResult restricted_reference(const ScenarioConfig& reference,
                               std::span<const double> times) {
    ScenarioConfig fine = reference;
    fine.grid_n = 2 * reference.grid_n;
    fine.snapshot_times.assign(times.begin(), times.end());
    RunResult res = run(fine);
    for (auto& snap : res.snapshots) {
        snap.state.rho = coarsen_centers(snap.state.rho, 2);
        snap.state.b = coarsen_centers(snap.state.b, 2);
        snap.state.u = coarsen_faces(snap.state.u, 2);
    }
    return res;
}

}  // namespace

SweepReport run_sweep(const SweepSpec& spec) {
    spec.validate();
    const Grid grid(spec.base.grid_n);
    SweepReport report;

    const double nu_min = spec.nu_ladder.back();
    if (!(grid.dx() < 0.25 * std::sqrt(nu_min * spec.base.t_final))) {
        std::ostringstream os;
        os << "grid may not resolve the smallest layer: dx=" << grid.dx()
           << " vs sqrt(nu_min*T)=" << std::sqrt(nu_min * spec.base.t_final);
        report.warnings.push_back(os.str());
    }

    ScenarioConfig ref_cfg = spec.reference;
    ref_cfg.snapshot_times = spec.comparison_times;
    const RunResult reference = run(ref_cfg);

    const std::size_t m = spec.nu_ladder.size();
    std::vector<RunResult> runs(m);
    parallel_for_ordered(m, [&](std::size_t i) {
        ScenarioConfig cfg = spec.base;
        cfg.nu = spec.nu_ladder[i];
        cfg.snapshot_times = spec.comparison_times;
        try {
            runs[i] = run(cfg);
        } catch (const SolverError& e) {
            std::ostringstream os;
            os << "sweep entry nu=" << cfg.nu << " failed: " << e.what();
            throw SolverError(os.str(), e.failure_time(), e.cell());
        }
    });

    for (std::size_t i = 0; i < m; ++i) {
        const DiffColumns d = diff_columns(runs[i], reference, grid, spec.comparison_times);
        SweepRow row;
        row.nu = spec.nu_ladder[i];
        row.sup_rho_diff = d.sup_rho;
        row.sup_u_diff = d.sup_u;
        row.sup_b_diff = d.sup_b;
        row.int_dux_diff = d.int_dux;
        for (const InvariantRecord& rec : runs[i].invariants) {
            row.sup_ux_sq = std::max(row.sup_ux_sq, rec.ux_l2 * rec.ux_l2);
            row.sup_weighted_h1 = std::max(row.sup_weighted_h1, rec.weighted_h1);
        }
        report.rows.push_back(row);
    }

    if (spec.estimate_floor) {
        const RunResult fine = restricted_reference(spec.reference, spec.comparison_times);
        const DiffColumns d = diff_columns(reference, fine, grid, spec.comparison_times);
        report.floors = {d.sup_rho, d.sup_u, d.sup_b, d.int_dux};
    }

    const auto column_values = [&](auto member) {
        std::vector<std::pair<double, double>> pts;
        for (const SweepRow& r : report.rows) pts.emplace_back(r.nu, r.*member);
        return pts;
    };
    struct ColumnSpec {
        const char* name;
        double SweepRow::* member;
        int floor_index;  // -1: no drop rule
    };
    const ColumnSpec columns[] = {
        {"sup_rho_diff_l2", &SweepRow::sup_rho_diff, 0},
        {"sup_u_diff_l2", &SweepRow::sup_u_diff, 1},
        {"sup_b_diff_l2", &SweepRow::sup_b_diff, 2},
        {"int_dux_diff_sq_dt", &SweepRow::int_dux_diff, 3},
        {"sup_ux_sq_l2", &SweepRow::sup_ux_sq, -1},
        {"sup_weighted_h1", &SweepRow::sup_weighted_h1, -1},
    };
    for (const ColumnSpec& col : columns) {
        ColumnFit cf;
        cf.column = col.name;
        std::vector<std::pair<double, double>> pts = column_values(col.member);
        if (col.floor_index >= 0 && !report.floors.empty()) {
            const double floor = report.floors[col.floor_index];
            if (!pts.empty() && pts.back().second < 10.0 * floor) {
                pts.pop_back();
                cf.dropped_smallest = true;
                cf.note = "smallest-nu point within 10x of the discretization floor";
            }
        }
        std::erase_if(pts, [](const auto& p) { return !(p.second > 0.0); });
        cf.points_used = static_cast<int>(pts.size());
        if (pts.size() >= 3) {
            cf.fit = fit_rate(pts);
        } else if (cf.note.empty()) {
            cf.note = "fewer than 3 usable points";
        } else {
            cf.note += "; fewer than 3 usable points";
        }
        report.fits.push_back(std::move(cf));
    }
    return report;
}

}  // namespace mhd1d
