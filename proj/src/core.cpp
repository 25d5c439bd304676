#include "mhd1d/core.hpp"

#include <algorithm>
#include <numbers>

namespace mhd1d {

double pressure(double rho, const FluidParams& params) {
    if (rho < 0.0) throw std::domain_error("pressure: rho must be >= 0");
    return params.A * std::pow(rho, params.gamma);
}

double sound_speed(double rho, const FluidParams& params) {
    if (rho <= 0.0) throw std::domain_error("sound_speed: rho must be > 0");
    return std::sqrt(params.gamma * params.A * std::pow(rho, params.gamma - 1.0));
}

std::vector<double> Grid::centers() const {
    std::vector<double> x(n_);
    for (int i = 0; i < n_; ++i) x[i] = center(i);
    return x;
}

std::vector<double> Grid::faces() const {
    std::vector<double> x(n_ + 1);
    for (int i = 0; i <= n_; ++i) x[i] = face(i);
    return x;
}

void validate_state(const State& state, const Grid& grid) {
    const int n = grid.n_cells();
    if (static_cast<int>(state.rho.size()) != n || static_cast<int>(state.b.size()) != n ||
        static_cast<int>(state.u.size()) != n + 1) {
        throw UsageError("validate_state: field sizes do not match grid layout");
    }
    for (int i = 0; i < n; ++i) {
        if (!(state.rho[i] > 0.0))
            throw SolverError("validate_state: nonpositive density", state.time, i);
        if (!std::isfinite(state.rho[i]) || !std::isfinite(state.b[i]))
            throw SolverError("validate_state: non-finite field", state.time, i);
    }
    for (int i = 0; i <= n; ++i) {
        if (!std::isfinite(state.u[i]))
            throw SolverError("validate_state: non-finite velocity", state.time, i);
    }
    if (state.u.front() != 0.0 || state.u.back() != 0.0)
        throw SolverError("validate_state: nonzero wall velocity", state.time);
}

// ---------------------------------------------------------------------------
// BoundaryMagnetic
// ---------------------------------------------------------------------------

BoundaryMagnetic BoundaryMagnetic::constant(double left, double right) {
    BoundaryMagnetic b;
    b.kind = Kind::constant;
    b.c1 = left;
    b.c2 = right;
    return b;
}

BoundaryMagnetic BoundaryMagnetic::sinusoid(double a1, double omega1, double a2, double omega2) {
    BoundaryMagnetic b;
    b.kind = Kind::sinusoid;
    b.a1 = a1;
    b.omega1 = omega1;
    b.a2 = a2;
    b.omega2 = omega2;
    return b;
}

BoundaryMagnetic BoundaryMagnetic::ramp(double left, double right, double t_rise) {
    if (!(t_rise > 0.0)) throw UsageError("BoundaryMagnetic::ramp: t_rise must be > 0");
    BoundaryMagnetic b;
    b.kind = Kind::ramp;
    b.c1 = left;
    b.c2 = right;
    b.t_rise = t_rise;
    return b;
}

double BoundaryMagnetic::eval(double c, double a, double omega, double t) const {
    switch (kind) {
        case Kind::none:
            return 0.0;
        case Kind::constant:
            return c;
        case Kind::sinusoid:
            return a * std::sin(omega * t);
        case Kind::ramp: {
            // C1 smoothstep from 0 to c over [0, t_rise], constant after.
            if (t <= 0.0) return 0.0;
            if (t >= t_rise) return c;
            const double tau = t / t_rise;
            return c * tau * tau * (3.0 - 2.0 * tau);
        }
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// InitialData
// ---------------------------------------------------------------------------

InitialData InitialData::constant(double rho_bar) {
    if (!(rho_bar > 0.0)) throw UsageError("InitialData::constant: rho must be > 0");
    InitialData d;
    d.kind = Kind::constant;
    d.rho_base = rho_bar;
    return d;
}

InitialData InitialData::smooth(double rho_base, double rho_amp, double u_amp, double b_amp,
                                BShape shape) {
    if (!(rho_base > std::abs(rho_amp)))
        throw UsageError("InitialData::smooth: density amplitude exceeds base (vacuum)");
    InitialData d;
    d.kind = Kind::smooth;
    d.rho_base = rho_base;
    d.rho_amp = rho_amp;
    d.u_amp = u_amp;
    d.b_amp = b_amp;
    d.b_shape = shape;
    return d;
}

double InitialData::rho(double x) const {
    if (kind == Kind::constant) return rho_base;
    return rho_base + rho_amp * std::sin(2.0 * std::numbers::pi * x);
}

double InitialData::u(double x) const {
    if (kind == Kind::constant) return 0.0;
    const double s = std::sin(std::numbers::pi * x);
    return u_amp * s * s;
}

double InitialData::b(double x) const {
    if (kind == Kind::constant) return 0.0;
    switch (b_shape) {
        case BShape::sin_pi:
            return b_amp * std::sin(std::numbers::pi * x);
        case BShape::sin_2pi:
            return b_amp * std::sin(2.0 * std::numbers::pi * x);
        case BShape::cos_pi:
            return b_amp * std::cos(std::numbers::pi * x);
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// ScenarioConfig
// ---------------------------------------------------------------------------

void ScenarioConfig::validate(bool has_boundary_hook) const {
    params.validate();
    if (!(nu >= 0.0)) throw UsageError("ScenarioConfig: nu must be >= 0");
    if (!has_boundary_hook) {
        const bool none = boundary_b.kind == BoundaryMagnetic::Kind::none;
        if (nu == 0.0 && !none)
            throw UsageError("ScenarioConfig: nu=0 requires boundary kind none");
        if (nu > 0.0 && none)
            throw UsageError("ScenarioConfig: nu>0 requires magnetic boundary data");
    }
    if (grid_n < 2) throw UsageError("ScenarioConfig: grid_n must be >= 2");
    if (!(t_final > 0.0)) throw UsageError("ScenarioConfig: t_final must be > 0");
    if (!(cfl > 0.0 && cfl < 1.0)) throw UsageError("ScenarioConfig: cfl must lie in (0,1)");
    double prev = -1.0;
    for (double s : snapshot_times) {
        if (!(s >= 0.0 && s <= t_final))
            throw UsageError("ScenarioConfig: snapshot time outside [0, t_final]");
        if (s < prev) throw UsageError("ScenarioConfig: snapshot_times must be sorted");
        prev = s;
    }
}

// ---------------------------------------------------------------------------
// Norms
// ---------------------------------------------------------------------------

namespace {

enum class Layout { centers, faces };

Layout layout_of(std::size_t size, const Grid& grid, const char* who) {
    if (size == static_cast<std::size_t>(grid.n_cells())) return Layout::centers;
    if (size == static_cast<std::size_t>(grid.n_cells() + 1)) return Layout::faces;
    throw UsageError(std::string(who) + ": field length matches neither centers nor faces");
}

}  // namespace

double l2_norm(std::span<const double> field, const Grid& grid) {
    const Layout lay = layout_of(field.size(), grid, "l2_norm");
    const double dx = grid.dx();
    double acc = 0.0;
    if (lay == Layout::centers) {
        for (double v : field) acc += v * v;
        acc *= dx;
    } else {
        const std::size_t m = field.size();
        acc += 0.5 * field[0] * field[0];
        for (std::size_t i = 1; i + 1 < m; ++i) acc += field[i] * field[i];
        acc += 0.5 * field[m - 1] * field[m - 1];
        acc *= dx;
    }
    return std::sqrt(acc);
}

double linf_norm(std::span<const double> field, const Grid& grid) {
    layout_of(field.size(), grid, "linf_norm");
    double m = 0.0;
    for (double v : field) m = std::max(m, std::abs(v));
    return m;
}

double interior_linf(std::span<const double> field, const Grid& grid, double delta) {
    if (!(delta >= 0.0 && delta < 0.5))
        throw std::domain_error("interior_linf: delta must lie in [0, 1/2)");
    const Layout lay = layout_of(field.size(), grid, "interior_linf");
    double m = 0.0;
    for (std::size_t i = 0; i < field.size(); ++i) {
        const double x = lay == Layout::centers ? grid.center(static_cast<int>(i))
                                                : grid.face(static_cast<int>(i));
        if (x > delta && x < 1.0 - delta) m = std::max(m, std::abs(field[i]));
    }
    return m;
}

double weighted_h1_integral(std::span<const double> rho, std::span<const double> b,
                            const Grid& grid) {
    const int n = grid.n_cells();
    if (rho.size() != static_cast<std::size_t>(n) || b.size() != static_cast<std::size_t>(n))
        throw UsageError("weighted_h1_integral: fields must live at cell centers");
    const double dx = grid.dx();
    double acc = 0.0;
    for (int j = 1; j < n; ++j) {
        const double drho = (rho[j] - rho[j - 1]) / dx;
        const double db = (b[j] - b[j - 1]) / dx;
        acc += layer_weight(grid.face(j)) * (drho * drho + db * db);
    }
    return acc * dx;
}

// ---------------------------------------------------------------------------
// Interpolation and restriction
// ---------------------------------------------------------------------------

std::vector<double> interpolate_center_to_face(std::span<const double> field, const Grid& grid) {
    const int n = grid.n_cells();
    if (field.size() != static_cast<std::size_t>(n))
        throw UsageError("interpolate_center_to_face: expected a center array");
    std::vector<double> out(n + 1);
    out[0] = field[0];
    for (int j = 1; j < n; ++j) out[j] = 0.5 * (field[j - 1] + field[j]);
    out[n] = field[n - 1];
    return out;
}

std::vector<double> interpolate_face_to_center(std::span<const double> field, const Grid& grid) {
    const int n = grid.n_cells();
    if (field.size() != static_cast<std::size_t>(n + 1))
        throw UsageError("interpolate_face_to_center: expected a face array");
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = 0.5 * (field[i] + field[i + 1]);
    return out;
}

std::vector<double> coarsen_centers(std::span<const double> fine, int ratio) {
    if (ratio < 1 || fine.size() % ratio != 0)
        throw UsageError("coarsen_centers: fine size must be a multiple of ratio");
    std::vector<double> out(fine.size() / ratio);
    for (std::size_t i = 0; i < out.size(); ++i) {
        double s = 0.0;
        for (int k = 0; k < ratio; ++k) s += fine[i * ratio + k];
        out[i] = s / ratio;
    }
    return out;
}

std::vector<double> coarsen_faces(std::span<const double> fine, int ratio) {
    if (ratio < 1 || (fine.size() - 1) % ratio != 0)
        throw UsageError("coarsen_faces: fine face count minus one must be a multiple of ratio");
    std::vector<double> out((fine.size() - 1) / ratio + 1);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = fine[i * ratio];
    return out;
}

}  // namespace mhd1d
