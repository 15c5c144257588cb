#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "maxsurf/expr.hpp"
#include "maxsurf/lorentz.hpp"

namespace maxsurf {

enum class SurfaceKind { Maximal, Minimal };

/// Conformal parameter domain. Disc and annulus are bounded; plane and
/// punctured plane are sampled on a configurable radial window.
struct ParamDomain {
    enum class Shape { Disc, Annulus, PuncturedPlane, Plane };

    Shape shape = Shape::Disc;
    double radius = 1.0;                // Disc
    double r_in = 0.0, r_out = 0.0;     // Annulus
    bool outer_included = true;         // Annulus: boundary circle |z| = r_out belongs to M
    int n_radial = 32;
    int n_angular = 64;
    double window_r_in = 1e-2;          // sampling window for unbounded shapes
    double window_r_out = 1e2;
    double disc_r_min_frac = 1e-2;      // innermost sampled radius of a disc, as fraction of radius

    static ParamDomain disc(double radius, int nr = 32, int na = 64);
    static ParamDomain annulus(double r_in, double r_out, bool outer_included = true,
                               int nr = 32, int na = 64);
    static ParamDomain punctured_plane(double window_r_in = 1e-2, double window_r_out = 1e2,
                                       int nr = 32, int na = 64);
    static ParamDomain plane(double window_r_out = 1e2, int nr = 32, int na = 64);

    /// Radial interval covered by the sample grid.
    double sample_r_min() const;
    double sample_r_max() const;
    bool is_interior(Complex z) const;
    bool simply_connected() const { return shape == Shape::Disc || shape == Shape::Plane; }
    /// True when the domain has a nontrivial cycle (annulus, punctured plane).
    bool has_cycle() const { return !simply_connected(); }
};

/// Full input to the immersion engine. For kind Minimal, f is still the
/// coefficient of phi3 = f dz in the surface's own representation.
struct WeierstrassData {
    SurfaceKind kind = SurfaceKind::Maximal;
    ParamDomain domain;
    expr::AnalyticFn g;
    expr::AnalyticFn f;  // phi3 = f dz
    Complex basepoint{};
    LVec3 base_value{};
};

struct SpacelikeViolation : std::runtime_error {
    Complex where;
    double g_abs;
    SpacelikeViolation(Complex z, double ga);
};

struct DegeneratePhi : std::runtime_error {
    Complex where;
    explicit DegeneratePhi(Complex z);
};

struct NonExactRealPart : std::runtime_error {
    std::array<Complex, 3> periods;
    explicit NonExactRealPart(const std::array<Complex, 3>& p);
};

/// Parses and validates Weierstrass data: |g| < 1 and Phi != 0 at every
/// strictly interior grid sample.
WeierstrassData make_weierstrass(SurfaceKind kind, const ParamDomain& domain,
                                 const std::string& g_text, const std::string& f_text,
                                 Complex basepoint, const LVec3& base_value);
WeierstrassData make_weierstrass(SurfaceKind kind, const ParamDomain& domain,
                                 expr::AnalyticFn g, expr::AnalyticFn f, Complex basepoint,
                                 const LVec3& base_value);

struct PhiTriple {
    expr::AnalyticFn phi1, phi2, phi3;
    std::array<Complex, 3> operator()(Complex z) const {
        return {phi1(z), phi2(z), phi3(z)};
    }
};

/// phi1 = (i/2)(1/g - g) f, phi2 = -(1/2)(1/g + g) f, phi3 = f for maximal
/// data; phi1 = (1/2)(1/g - g) f, phi2 = (i/2)(1/g + g) f, phi3 = f for
/// minimal data (the dual's maximal triple rewritten in terms of its own f).
PhiTriple make_phi(const WeierstrassData& data);

/// Integrals of (phi1, phi2, phi3) dz over the circle |z| = rho, by
/// trapezoid quadrature with spacing halved until the change is < 1e-10.
std::array<Complex, 3> cycle_periods(const WeierstrassData& data, double rho);

struct MeshVertex {
    Complex param;
    LVec3 position;
    LVec3 normal;          // H^2_- (maximal) or unit sphere (minimal); zero at singular vertices
    double lambda_sq = 0.0;
    double quad_error = 0.0;  // accumulated absolute quadrature bound along the tree path
};

struct SurfaceMesh {
    SurfaceKind kind = SurfaceKind::Maximal;
    int n_radial = 0;   // rings = n_radial + 1
    int n_angular = 0;
    std::vector<double> radii;   // increasing, size n_radial + 1
    std::vector<double> angles;  // uniform on [0, 2pi), size n_angular
    std::vector<MeshVertex> vertices;           // ring-major: ring * n_angular + k
    std::vector<std::array<int, 4>> faces;      // quads
    std::vector<std::array<Complex, 3>> integrals;  // full complex path integrals of Phi

    int index(int ring, int k) const { return ring * n_angular + k; }
    const MeshVertex& at(int ring, int k) const { return vertices[index(ring, k)]; }
    double euclid_diameter() const;
};

/// X = base_value + Re of the path integral of Phi along a spanning tree of
/// polar grid edges rooted at the basepoint. Adaptive Simpson per edge,
/// absolute tolerance 1e-10, max depth 24. Throws NonExactRealPart when a
/// domain cycle carries a real period.
SurfaceMesh integrate_immersion(const WeierstrassData& data);

/// Complex path integral of Phi from the basepoint to z (radial then
/// angular legs through the basepoint radius). Deterministic for fixed data.
std::array<Complex, 3> integrate_to(const WeierstrassData& data, const PhiTriple& phi, Complex z);

/// Position at an arbitrary interior point (base_value + Re integral).
LVec3 immersion_at(const WeierstrassData& data, const PhiTriple& phi, Complex z);

struct Frame {
    double lambda_sq;
    LVec3 normal;  // N0 in H^2_- (maximal) or Euclidean unit normal (minimal)
    LVec3 X_u;
    LVec3 X_v;
};

struct DegenerateFrame : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Frame frame_at(const WeierstrassData& data, Complex z);

/// Remark-style duality: f -> i f, kind flips, g unchanged.
WeierstrassData dualize(const WeierstrassData& data);

struct SingularityVerdict {
    enum class Type { BranchPoint, LightlikeLoop, Regular };
    Type type = Type::Regular;
    bool collapsed = false;
    bool conelike = false;
    int covering_degree = 0;
};

struct InconclusiveClassification : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularitySite {
    enum class Kind { BoundaryPoint, BoundaryLoop };
    Kind kind;
    Complex point{};   // BoundaryPoint
    double rho = 0.0;  // BoundaryLoop |z| = rho
    static SingularitySite loop(double rho);
    static SingularitySite boundary_point(Complex p);
};

SingularityVerdict classify_singularity(const WeierstrassData& data, const SingularitySite& site);

/// Max deviation between the tree path and the alternate (angular-then-radial)
/// path over a sample of vertices; small iff real periods vanish.
double path_independence_deviation(const WeierstrassData& data, int samples = 16);

namespace quadrature {

/// Adaptive Simpson on [0,1]; returns the integral, accumulates an error
/// bound into *err if non-null.
Complex adaptive_simpson(const std::function<Complex(double)>& fn, double tol, int max_depth,
                         double* err = nullptr);

/// Integral of w(z) dz along the straight segment [a, b].
Complex segment_integral(const expr::AnalyticFn& w, Complex a, Complex b, double tol = 1e-10,
                         double* err = nullptr);

/// Integral of w(z) dz along the circular arc |z| = rho from theta0 to theta1.
Complex arc_integral(const expr::AnalyticFn& w, double rho, double theta0, double theta1,
                     double tol = 1e-10, double* err = nullptr);

}  // namespace quadrature

}  // namespace maxsurf
