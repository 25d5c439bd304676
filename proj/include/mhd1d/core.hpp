#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

// Core types and discrete functionals for the 1D compressible isentropic
// viscous MHD equations on the unit interval. Scalars (rho, b) live at cell
// centers, velocity lives at cell faces, so the wall condition u=0 and the
// conservative mass flux are exact.

namespace mhd1d {

/// Configuration or shape error: bad input, not a numerical failure.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Numerical failure during time integration (vacuum, divergence, degenerate
/// time step). Carries the simulation time and, when meaningful, the cell.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& msg, double failure_time, int cell = -1)
        : std::runtime_error(msg), time_(failure_time), cell_(cell) {}
    double failure_time() const { return time_; }
    int cell() const { return cell_; }

private:
    double time_;
    int cell_;
};

// ---------------------------------------------------------------------------
// Fluid parameters and the pressure law
// ---------------------------------------------------------------------------

struct FluidParams {
    double A = 1.0;       // pressure coefficient
    double gamma = 1.4;   // adiabatic exponent
    double lambda = 1.0;  // effective viscosity

    FluidParams() = default;
    FluidParams(double A_, double gamma_, double lambda_)
        : A(A_), gamma(gamma_), lambda(lambda_) {
        validate();
    }

    void validate() const {
        if (!(A > 0.0)) throw UsageError("FluidParams: A must be > 0");
        if (!(gamma > 1.0)) throw UsageError("FluidParams: gamma must be > 1");
        if (!(lambda > 0.0)) throw UsageError("FluidParams: lambda must be > 0");
    }

    bool operator==(const FluidParams&) const = default;
};

/// Isentropic pressure P(rho) = A rho^gamma.
double pressure(double rho, const FluidParams& params);

/// Sound speed c = sqrt(gamma P / rho) = sqrt(gamma A rho^(gamma-1)).
double sound_speed(double rho, const FluidParams& params);

// ---------------------------------------------------------------------------
// Grid
// ---------------------------------------------------------------------------

/// Uniform staggered mesh on (0,1): n cells, n+1 faces. Faces 0 and n are the
/// walls x=0 and x=1.
class Grid {
public:
    explicit Grid(int n_cells) : n_(n_cells), dx_(1.0 / n_cells) {
        if (n_cells < 2) throw UsageError("Grid: need at least 2 cells");
    }

    int n_cells() const { return n_; }
    int n_faces() const { return n_ + 1; }
    double dx() const { return dx_; }

    double center(int i) const { return (i + 0.5) * dx_; }
    double face(int i) const { return i * dx_; }

    std::vector<double> centers() const;
    std::vector<double> faces() const;

private:
    int n_;
    double dx_;
};

// ---------------------------------------------------------------------------
// State
// ---------------------------------------------------------------------------

/// Discrete fields: rho and b per cell center, u per face, plus the clock.
/// Plain data; the solver enforces positivity and wall conditions.
struct State {
    std::vector<double> rho;  // n_cells
    std::vector<double> u;    // n_cells + 1
    std::vector<double> b;    // n_cells
    double time = 0.0;
};

/// Throws UsageError on shape mismatch, SolverError on vacuum / non-finite
/// fields / nonzero wall velocity.
void validate_state(const State& state, const Grid& grid);

// ---------------------------------------------------------------------------
// Magnetic boundary signal
// ---------------------------------------------------------------------------

/// Boundary data (b1(t), b2(t)) for the resistive system. All presets are C1
/// in t. Kind none carries no data and is only legal when nu = 0.
struct BoundaryMagnetic {
    enum class Kind { none, constant, sinusoid, ramp };

    Kind kind = Kind::none;
    double c1 = 0.0, c2 = 0.0;  // constant / ramp targets
    double a1 = 0.0, omega1 = 0.0, a2 = 0.0, omega2 = 0.0;
    double t_rise = 0.0;

    static BoundaryMagnetic none() { return {}; }
    static BoundaryMagnetic constant(double left, double right);
    static BoundaryMagnetic sinusoid(double a1, double omega1, double a2, double omega2);
    static BoundaryMagnetic ramp(double left, double right, double t_rise);

    double b1(double t) const { return eval(c1, a1, omega1, t); }
    double b2(double t) const { return eval(c2, a2, omega2, t); }

private:
    double eval(double c, double a, double omega, double t) const;
};

// ---------------------------------------------------------------------------
// Initial data presets
// ---------------------------------------------------------------------------

struct InitialData {
    enum class Kind { constant, smooth };
    enum class BShape { sin_pi, sin_2pi, cos_pi };

    Kind kind = Kind::constant;
    double rho_base = 1.0;
    double rho_amp = 0.0;  // rho = rho_base + rho_amp * sin(2 pi x)
    double u_amp = 0.0;    // u   = u_amp * sin(pi x)^2   (vanishes at walls)
    double b_amp = 0.0;
    BShape b_shape = BShape::sin_pi;

    static InitialData constant(double rho_bar);
    static InitialData smooth(double rho_base, double rho_amp, double u_amp,
                              double b_amp, BShape shape = BShape::sin_pi);

    double rho(double x) const;
    double u(double x) const;
    double b(double x) const;

    bool operator==(const InitialData&) const = default;
};

// ---------------------------------------------------------------------------
// Scenario configuration
// ---------------------------------------------------------------------------

struct ScenarioConfig {
    FluidParams params;
    double nu = 0.0;  // resistivity; 0 selects the non-resistive system
    int grid_n = 256;
    double t_final = 1.0;
    double cfl = 0.8;
    InitialData initial;
    BoundaryMagnetic boundary_b;
    std::vector<double> snapshot_times;  // sorted, within [0, t_final]
    long max_steps = -1;                 // < 0: unlimited

    /// has_boundary_hook relaxes the nu/boundary coupling for runs whose
    /// boundary signal is injected by a test hook instead of boundary_b.
    void validate(bool has_boundary_hook = false) const;
};

// ---------------------------------------------------------------------------
// Discrete norms and functionals
// ---------------------------------------------------------------------------

/// L2 norm: midpoint rule for center arrays, trapezoid for face arrays, so a
/// constant field has norm |c| on every grid.
double l2_norm(std::span<const double> field, const Grid& grid);

/// Max of |field| over all sample points.
double linf_norm(std::span<const double> field, const Grid& grid);

/// Max of |field| over sample points with delta < x < 1 - delta.
/// Requires 0 <= delta < 1/2.
double interior_linf(std::span<const double> field, const Grid& grid, double delta);

/// Weighted interior gradient integral
///   sum over interior faces of xi(x_f) ((drho/dx)^2 + (db/dx)^2) dx
/// with xi(x) = x^2 (1-x)^2 and centered differences across each face.
double weighted_h1_integral(std::span<const double> rho, std::span<const double> b,
                            const Grid& grid);

/// The weight xi(x) = x^2 (1-x)^2.
inline double layer_weight(double x) {
    const double y = x * (1.0 - x);
    return y * y;
}

// ---------------------------------------------------------------------------
// Staggered-grid coupling
// ---------------------------------------------------------------------------

/// Arithmetic mean of neighboring centers; wall faces copy the adjacent cell.
std::vector<double> interpolate_center_to_face(std::span<const double> field, const Grid& grid);

/// Arithmetic mean of the two faces of each cell.
std::vector<double> interpolate_face_to_center(std::span<const double> field, const Grid& grid);

/// Conservative restriction of a fine center array to a coarser grid whose
/// cell count divides the fine one (group averages).
std::vector<double> coarsen_centers(std::span<const double> fine, int ratio);

/// Restriction of a fine face array: coarse faces coincide with every
/// ratio-th fine face.
std::vector<double> coarsen_faces(std::span<const double> fine, int ratio);

}  // namespace mhd1d
