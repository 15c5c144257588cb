#pragma once

#include <functional>
#include <string>
#include <vector>

#include "maxsurf/weierstrass.hpp"

namespace maxsurf {

struct ChartNode {
    Complex z;
    LVec3 X;
    LVec3 N0;
    LVec3 X_u, X_v;
    double lambda_sq = 0.0;  // metric factor in the z coordinate
    bool masked = false;     // participates in reports: ||X||^2 > threshold
    bool singular = false;   // frame unavailable (lightlike locus)
};

/// Isothermal parameter grid carrying the immersion and its frame.
/// LogPolar grids are uniform in (s, theta) with z = e^(s + i theta);
/// rectangular grids are uniform in (u, v) with z = u + iv. Both are
/// conformal, so the sign of the flat Laplacian is parameter-independent.
struct ChartGrid {
    enum class Coords { Rectangular, LogPolar };
    Coords coords = Coords::LogPolar;
    int nu = 0, nv = 0;        // node counts; LogPolar: nu rings x nv angles (periodic)
    double du = 0.0, dv = 0.0; // grid-coordinate spacings
    double mask_threshold = 2.0;
    std::vector<ChartNode> nodes;  // index i * nv + j

    int index(int i, int j) const { return i * nv + j; }
    bool periodic_v() const { return coords == Coords::LogPolar; }
    /// Factor converting the grid-coordinate Laplacian to the z coordinate.
    double laplacian_scale(const ChartNode& n) const {
        return coords == Coords::LogPolar ? 1.0 / std::norm(n.z) : 1.0;
    }
};

/// Log-polar chart over the data's own polar grid. Mask keeps ||X||^2 > threshold,
/// mirroring the compact core K = { ||X||^2 <= threshold }.
ChartGrid make_chart_grid(const WeierstrassData& data, int n_radial, int n_angular,
                          double mask_threshold = 2.0);

/// Rectangular chart on the square |u - c|, |v - c| <= halfwidth, for simply
/// connected domains.
ChartGrid make_rect_chart(const WeierstrassData& data, Complex center, double halfwidth, int n,
                          double mask_threshold = 2.0);

struct SuperharmonicEntry {
    int node = 0;
    Complex z;
    double lap_fd = 0.0;      // 5-point Laplacian of log||X||^2, z-normalized
    double lap_closed = 0.0;  // -4 lambda^2 <X,N0>^2 / <X,X>^2
    double residual = 0.0;
};

struct SuperharmonicReport {
    std::vector<SuperharmonicEntry> entries;
    double max_abs_residual = 0.0;
    double max_positive_closed = 0.0;  // must stay <= 0 up to rounding
    bool sign_ok = false;
    int evaluated_nodes = 0;
};

struct MaskError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Compares the finite-difference Laplacian of h = log||X||^2 with the
/// closed-form expression at every masked node whose 5-point stencil is
/// masked. Throws MaskError when no node qualifies.
SuperharmonicReport superharmonic_report(const ChartGrid& grid);

struct TangentDecomposition {
    double vector_residual = 0.0;  // relative
    double scalar_residual = 0.0;  // relative
};

/// Residuals of X = lambda^-2 (<X,Xu>Xu + <X,Xv>Xv) - <X,N0>N0 and of the
/// induced scalar identity at one masked node.
TangentDecomposition tangent_decomposition_check(const ChartGrid& grid, int node);

// ---------------------------------------------------------------------------
// Discrete Dirichlet problems (5-point Laplace, conjugate gradients)
// ---------------------------------------------------------------------------

struct DirichletResult {
    std::vector<double> values;  // all grid nodes
    double residual = 0.0;       // discrete l2 residual of the scaled system
    int iterations = 0;
    bool converged = false;
    double boundary_min = 0.0, boundary_max = 0.0;
    double interior_min = 0.0, interior_max = 0.0;
    bool max_principle_ok = false;
};

struct SolverFailure : std::runtime_error {
    double residual;
    SolverFailure(const std::string& what, double res) : std::runtime_error(what), residual(res) {}
};

/// Annulus r_in < |z| < r_out in log-polar coordinates, periodic in theta.
DirichletResult solve_dirichlet_annulus(double r_in, double r_out, int n_s, int n_theta,
                                        const std::function<double(double)>& inner_bc,
                                        const std::function<double(double)>& outer_bc,
                                        double tol = 1e-10);

double annulus_value_at(const DirichletResult& sol, double r_in, double r_out, int n_s,
                        int n_theta, Complex probe);

/// Rectangle [x0,x1] x [y0,y1] with Dirichlet values from bc on the boundary.
DirichletResult solve_dirichlet_rect(double x0, double y0, double x1, double y1, int nx, int ny,
                                     const std::function<double(double, double)>& bc,
                                     double tol = 1e-10);

// ---------------------------------------------------------------------------
// Harmonic measure over an exhaustion
// ---------------------------------------------------------------------------

/// Concentric-circle exhaustion off a fixed boundary circle. Stage radii move
/// monotonically away from fixed_radius (outward or inward).
struct ExhaustionSpec {
    double fixed_radius = 1.0;
    std::vector<double> stage_radii;
    Complex probe{2.0, 0.0};
    int n_s = 256;
    int n_theta = 256;
    double solver_tol = 1e-10;
};

struct StageResult {
    double radius = 0.0;
    double omega = 0.0;
    double residual = 0.0;
    int iterations = 0;
};

struct ParabolicityReport {
    std::vector<StageResult> stages;
    double fit_slope = 0.0;
    double fit_intercept = 0.0;  // linear fit of omega against 1/log(R/fixed)
    double limit_estimate = 0.0;
    std::string limit_method;  // "fit-intercept" | "aitken" | "last-stage"
    std::string verdict;       // parabolic-evidence | hyperbolic-evidence | inconclusive
};

/// For each stage solves the Dirichlet problem with 0 on the fixed circle and
/// 1 on the stage circle, records harmonic measure at the probe, and grades
/// the trend. Verdicts are evidence, not proof.
ParabolicityReport harmonic_measure_sequence(const ExhaustionSpec& spec);

}  // namespace maxsurf
