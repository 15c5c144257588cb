#include "maxsurf/weierstrass.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace maxsurf {

using expr::AnalyticFn;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kQuadTol = 1e-10;
constexpr int kQuadMaxDepth = 24;

}  // namespace

// ---------------------------------------------------------------------------
// ParamDomain
// ---------------------------------------------------------------------------

ParamDomain ParamDomain::disc(double radius, int nr, int na) {
    ParamDomain d;
    d.shape = Shape::Disc;
    d.radius = radius;
    d.n_radial = nr;
    d.n_angular = na;
    if (radius <= 0.0) throw std::invalid_argument("disc radius must be positive");
    if (nr < 8 || na < 8) throw std::invalid_argument("grid resolutions must be >= 8");
    return d;
}

ParamDomain ParamDomain::annulus(double r_in, double r_out, bool outer_included, int nr, int na) {
    ParamDomain d;
    d.shape = Shape::Annulus;
    d.r_in = r_in;
    d.r_out = r_out;
    d.outer_included = outer_included;
    d.n_radial = nr;
    d.n_angular = na;
    if (!(0.0 < r_in && r_in < r_out)) throw std::invalid_argument("annulus requires 0 < r_in < r_out");
    if (nr < 8 || na < 8) throw std::invalid_argument("grid resolutions must be >= 8");
    return d;
}

ParamDomain ParamDomain::punctured_plane(double window_r_in, double window_r_out, int nr, int na) {
    ParamDomain d;
    d.shape = Shape::PuncturedPlane;
    d.window_r_in = window_r_in;
    d.window_r_out = window_r_out;
    d.n_radial = nr;
    d.n_angular = na;
    if (!(0.0 < window_r_in && window_r_in < window_r_out))
        throw std::invalid_argument("bad sampling window");
    if (nr < 8 || na < 8) throw std::invalid_argument("grid resolutions must be >= 8");
    return d;
}

ParamDomain ParamDomain::plane(double window_r_out, int nr, int na) {
    ParamDomain d;
    d.shape = Shape::Plane;
    d.window_r_out = window_r_out;
    d.n_radial = nr;
    d.n_angular = na;
    if (window_r_out <= 0.0) throw std::invalid_argument("bad sampling window");
    if (nr < 8 || na < 8) throw std::invalid_argument("grid resolutions must be >= 8");
    return d;
}

double ParamDomain::sample_r_min() const {
    switch (shape) {
        case Shape::Disc: return radius * disc_r_min_frac;
        case Shape::Annulus: return r_in;
        case Shape::PuncturedPlane: return window_r_in;
        case Shape::Plane: return window_r_out * 1e-4;
    }
    return 0.0;
}

double ParamDomain::sample_r_max() const {
    switch (shape) {
        case Shape::Disc: return radius;
        case Shape::Annulus: return r_out;
        case Shape::PuncturedPlane:
        case Shape::Plane: return window_r_out;
    }
    return 0.0;
}

bool ParamDomain::is_interior(Complex z) const {
    const double r = std::abs(z);
    switch (shape) {
        case Shape::Disc: return r < radius;
        case Shape::Annulus: return r_in < r && r < r_out;
        case Shape::PuncturedPlane: return r > 0.0;
        case Shape::Plane: return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

SpacelikeViolation::SpacelikeViolation(Complex z, double ga)
    : std::runtime_error("|g| >= 1 at interior sample z = (" + std::to_string(z.real()) + ", " +
                         std::to_string(z.imag()) + "), |g| = " + std::to_string(ga)),
      where(z),
      g_abs(ga) {}

DegeneratePhi::DegeneratePhi(Complex z)
    : std::runtime_error("Phi vanishes at interior sample z = (" + std::to_string(z.real()) +
                         ", " + std::to_string(z.imag()) + ")"),
      where(z) {}

NonExactRealPart::NonExactRealPart(const std::array<Complex, 3>& p)
    : std::runtime_error("a domain cycle carries a nonzero real period; the immersion is multivalued"),
      periods(p) {}

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

namespace quadrature {

namespace {

Complex simpson_rec(const std::function<Complex(double)>& fn, double a, double b, Complex fa,
                    Complex fm, Complex fb, Complex whole, double tol, int depth, double* err) {
    const double m = 0.5 * (a + b);
    const Complex fl = fn(0.5 * (a + m));
    const Complex fr = fn(0.5 * (m + b));
    const Complex left = (m - a) / 6.0 * (fa + 4.0 * fl + fm);
    const Complex right = (b - m) / 6.0 * (fm + 4.0 * fr + fb);
    const Complex delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        if (err) *err += std::abs(delta) / 15.0;
        return left + right + delta / 15.0;
    }
    return simpson_rec(fn, a, m, fa, fl, fm, left, 0.5 * tol, depth - 1, err) +
           simpson_rec(fn, m, b, fm, fr, fb, right, 0.5 * tol, depth - 1, err);
}

}  // namespace

Complex adaptive_simpson(const std::function<Complex(double)>& fn, double tol, int max_depth,
                         double* err) {
    const Complex fa = fn(0.0), fm = fn(0.5), fb = fn(1.0);
    const Complex whole = (fa + 4.0 * fm + fb) / 6.0;
    return simpson_rec(fn, 0.0, 1.0, fa, fm, fb, whole, tol, max_depth, err);
}

Complex segment_integral(const AnalyticFn& w, Complex a, Complex b, double tol, double* err) {
    if (a == b) return {0.0, 0.0};
    const Complex d = b - a;
    return adaptive_simpson([&](double t) { return w(a + t * d) * d; }, tol, kQuadMaxDepth, err);
}

Complex arc_integral(const AnalyticFn& w, double rho, double theta0, double theta1, double tol,
                     double* err) {
    if (theta0 == theta1) return {0.0, 0.0};
    const double d = theta1 - theta0;
    return adaptive_simpson(
        [&](double t) {
            const Complex z = std::polar(rho, theta0 + t * d);
            return w(z) * Complex(0.0, d) * z;
        },
        tol, kQuadMaxDepth, err);
}

}  // namespace quadrature

// ---------------------------------------------------------------------------
// Data construction and validation
// ---------------------------------------------------------------------------

namespace {

std::vector<double> grid_radii(const ParamDomain& dom) {
    const double r0 = dom.sample_r_min();
    const double r1 = dom.sample_r_max();
    const int n = dom.n_radial;
    std::vector<double> radii(n + 1);
    const double s0 = std::log(r0), s1 = std::log(r1);
    for (int j = 0; j <= n; ++j) radii[j] = std::exp(s0 + (s1 - s0) * j / n);
    radii.front() = r0;
    radii.back() = r1;
    return radii;
}

std::vector<double> grid_angles(const ParamDomain& dom) {
    std::vector<double> angles(dom.n_angular);
    for (int k = 0; k < dom.n_angular; ++k) angles[k] = kTwoPi * k / dom.n_angular;
    return angles;
}

}  // namespace

PhiTriple make_phi(const WeierstrassData& data) {
    using namespace expr;
    const NodeRef g = data.g.value_ast();
    const NodeRef f = data.f.value_ast();
    const NodeRef one = make_literal({1.0, 0.0});
    const NodeRef half = make_literal({0.5, 0.0});
    const NodeRef half_i = make_literal({0.0, 0.5});
    const NodeRef inv_g = make_div(one, g);
    PhiTriple phi;
    if (data.kind == SurfaceKind::Maximal) {
        phi.phi1 = AnalyticFn(make_mul(make_mul(half_i, make_sub(inv_g, g)), f));
        phi.phi2 = AnalyticFn(make_neg(make_mul(make_mul(half, make_add(inv_g, g)), f)));
    } else {
        phi.phi1 = AnalyticFn(make_mul(make_mul(half, make_sub(inv_g, g)), f));
        phi.phi2 = AnalyticFn(make_mul(make_mul(half_i, make_add(inv_g, g)), f));
    }
    phi.phi3 = data.f;
    return phi;
}

WeierstrassData make_weierstrass(SurfaceKind kind, const ParamDomain& domain,
                                 expr::AnalyticFn g, expr::AnalyticFn f, Complex basepoint,
                                 const LVec3& base_value) {
    WeierstrassData data;
    data.kind = kind;
    data.domain = domain;
    data.g = std::move(g);
    data.f = std::move(f);
    data.basepoint = basepoint;
    data.base_value = base_value;

    if (!domain.is_interior(basepoint))
        throw std::invalid_argument("basepoint must be interior to the domain");

    const PhiTriple phi = make_phi(data);
    const auto radii = grid_radii(domain);
    const auto angles = grid_angles(domain);
    for (double r : radii) {
        for (double th : angles) {
            const Complex z = std::polar(r, th);
            if (!domain.is_interior(z)) continue;
            const double ga = std::abs(data.g(z));
            if (ga >= 1.0) throw SpacelikeViolation(z, ga);
            const auto p = phi(z);
            if (std::abs(p[0]) + std::abs(p[1]) + std::abs(p[2]) < 1e-15) throw DegeneratePhi(z);
        }
    }
    return data;
}

WeierstrassData make_weierstrass(SurfaceKind kind, const ParamDomain& domain,
                                 const std::string& g_text, const std::string& f_text,
                                 Complex basepoint, const LVec3& base_value) {
    return make_weierstrass(kind, domain, expr::AnalyticFn::from_text(g_text),
                            expr::AnalyticFn::from_text(f_text), basepoint, base_value);
}

// ---------------------------------------------------------------------------
// Periods
// ---------------------------------------------------------------------------

std::array<Complex, 3> cycle_periods(const WeierstrassData& data, double rho) {
    const PhiTriple phi = make_phi(data);
    const AnalyticFn* fns[3] = {&phi.phi1, &phi.phi2, &phi.phi3};
    std::array<Complex, 3> out{};
    for (int c = 0; c < 3; ++c) {
        Complex prev{};
        for (int n = 32; n <= (1 << 18); n *= 2) {
            Complex sum{};
            for (int k = 0; k < n; ++k) {
                const double th = kTwoPi * k / n;
                const Complex z = std::polar(rho, th);
                sum += (*fns[c])(z)*Complex(0.0, 1.0) * z;
            }
            sum *= kTwoPi / n;
            if (n > 32 && std::abs(sum - prev) < 1e-10) {
                prev = sum;
                break;
            }
            prev = sum;
        }
        out[c] = prev;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Immersion
// ---------------------------------------------------------------------------

namespace {

LVec3 re_part(const std::array<Complex, 3>& v) {
    return {v[0].real(), v[1].real(), v[2].real()};
}

LVec3 neg_im_part(const std::array<Complex, 3>& v) {
    return {-v[0].imag(), -v[1].imag(), -v[2].imag()};
}

double metric_lambda_sq(SurfaceKind kind, double f_abs, double g_abs) {
    const double factor =
        kind == SurfaceKind::Maximal ? (1.0 / g_abs - g_abs) : (1.0 / g_abs + g_abs);
    const double lam = 0.5 * f_abs * factor;
    return lam * lam;
}

void fill_vertex_frame(const WeierstrassData& data, MeshVertex& v) {
    const Complex gz = data.g(v.param);
    const double ga = std::abs(gz);
    if (data.kind == SurfaceKind::Maximal && std::abs(ga - 1.0) < 1e-12) {
        // singular vertex on a lightlike locus
        v.normal = {0.0, 0.0, 0.0};
        v.lambda_sq = 0.0;
        return;
    }
    const double fa = std::abs(data.f(v.param));
    v.lambda_sq = metric_lambda_sq(data.kind, fa, ga);
    v.normal = data.kind == SurfaceKind::Maximal ? stereographic(ExtComplex(gz))
                                                 : euclid_sphere_point(ExtComplex(gz));
}

void check_cycle_periods(const WeierstrassData& data) {
    if (!data.domain.has_cycle()) return;
    const double rho =
        std::sqrt(data.domain.sample_r_min() * data.domain.sample_r_max());
    const auto periods = cycle_periods(data, rho);
    for (const Complex& p : periods)
        if (std::abs(p.real()) > 1e-8) throw NonExactRealPart(periods);
}

}  // namespace

SurfaceMesh integrate_immersion(const WeierstrassData& data) {
    check_cycle_periods(data);

    const PhiTriple phi = make_phi(data);
    SurfaceMesh mesh;
    mesh.kind = data.kind;
    mesh.n_radial = data.domain.n_radial;
    mesh.n_angular = data.domain.n_angular;
    mesh.radii = grid_radii(data.domain);
    mesh.angles = grid_angles(data.domain);

    const int nr = mesh.n_radial;
    const int na = mesh.n_angular;
    mesh.vertices.resize((nr + 1) * na);
    mesh.integrals.resize((nr + 1) * na);

    // Base node: grid node nearest the basepoint.
    const double br = std::abs(data.basepoint);
    int jb = 0;
    for (int j = 1; j <= nr; ++j)
        if (std::abs(mesh.radii[j] - br) < std::abs(mesh.radii[jb] - br)) jb = j;
    double bth = std::arg(data.basepoint);
    if (bth < 0.0) bth += kTwoPi;
    int kb = static_cast<int>(std::lround(bth / (kTwoPi / na))) % na;

    const AnalyticFn* fns[3] = {&phi.phi1, &phi.phi2, &phi.phi3};

    // Leg 0: basepoint -> base node.
    std::array<Complex, 3> seg{};
    double seg_err = 0.0;
    const Complex base_node_z = std::polar(mesh.radii[jb], mesh.angles[kb]);
    for (int c = 0; c < 3; ++c)
        seg[c] = quadrature::segment_integral(*fns[c], data.basepoint, base_node_z, kQuadTol, &seg_err);

    // Leg 1: arcs along ring jb, cumulative in both directions from kb.
    std::vector<std::array<Complex, 3>> ring(na);
    std::vector<double> ring_err(na, 0.0);
    ring[kb] = {};
    const double dth = kTwoPi / na;
    for (int step = 1; step <= na / 2; ++step) {
        // forward
        int k = (kb + step) % na;
        int kp = (kb + step - 1) % na;
        const double th0 = mesh.angles[kb] + dth * (step - 1);
        double err = ring_err[kp];
        std::array<Complex, 3> acc = ring[kp];
        for (int c = 0; c < 3; ++c)
            acc[c] += quadrature::arc_integral(*fns[c], mesh.radii[jb], th0, th0 + dth, kQuadTol, &err);
        ring[k] = acc;
        ring_err[k] = err;
        // backward (skip when it would overwrite the forward half)
        const int back = (kb - step % na + na) % na;
        if (back == k) continue;
        const int bp = (kb - (step - 1) % na + na) % na;
        const double th1 = mesh.angles[kb] - dth * (step - 1);
        err = ring_err[bp];
        acc = ring[bp];
        for (int c = 0; c < 3; ++c)
            acc[c] += quadrature::arc_integral(*fns[c], mesh.radii[jb], th1, th1 - dth, kQuadTol, &err);
        ring[back] = acc;
        ring_err[back] = err;
    }

    // Leg 2: radial runs per angle, cumulative away from ring jb.
    for (int k = 0; k < na; ++k) {
        std::array<Complex, 3> acc = ring[k];
        double err = ring_err[k];
        auto store = [&](int j) {
            const int idx = mesh.index(j, k);
            mesh.integrals[idx] = {seg[0] + acc[0], seg[1] + acc[1], seg[2] + acc[2]};
            MeshVertex& v = mesh.vertices[idx];
            v.param = std::polar(mesh.radii[j], mesh.angles[k]);
            v.position = data.base_value + re_part(mesh.integrals[idx]);
            v.quad_error = seg_err + err;
            fill_vertex_frame(data, v);
        };
        store(jb);
        // outward
        for (int j = jb + 1; j <= nr; ++j) {
            const Complex a = std::polar(mesh.radii[j - 1], mesh.angles[k]);
            const Complex b = std::polar(mesh.radii[j], mesh.angles[k]);
            for (int c = 0; c < 3; ++c)
                acc[c] += quadrature::segment_integral(*fns[c], a, b, kQuadTol, &err);
            store(j);
        }
        // inward
        acc = ring[k];
        err = ring_err[k];
        for (int j = jb - 1; j >= 0; --j) {
            const Complex a = std::polar(mesh.radii[j + 1], mesh.angles[k]);
            const Complex b = std::polar(mesh.radii[j], mesh.angles[k]);
            for (int c = 0; c < 3; ++c)
                acc[c] += quadrature::segment_integral(*fns[c], a, b, kQuadTol, &err);
            store(j);
        }
    }

    mesh.faces.reserve(nr * na);
    for (int j = 0; j < nr; ++j)
        for (int k = 0; k < na; ++k)
            mesh.faces.push_back({mesh.index(j, k), mesh.index(j, (k + 1) % na),
                                  mesh.index(j + 1, (k + 1) % na), mesh.index(j + 1, k)});
    return mesh;
}

double SurfaceMesh::euclid_diameter() const {
    LVec3 lo{1e300, 1e300, 1e300}, hi{-1e300, -1e300, -1e300};
    for (const auto& v : vertices) {
        lo.x1 = std::min(lo.x1, v.position.x1);
        lo.x2 = std::min(lo.x2, v.position.x2);
        lo.x3 = std::min(lo.x3, v.position.x3);
        hi.x1 = std::max(hi.x1, v.position.x1);
        hi.x2 = std::max(hi.x2, v.position.x2);
        hi.x3 = std::max(hi.x3, v.position.x3);
    }
    return euclid_norm(hi - lo);
}

std::array<Complex, 3> integrate_to(const WeierstrassData& data, const PhiTriple& phi, Complex z) {
    const AnalyticFn* fns[3] = {&phi.phi1, &phi.phi2, &phi.phi3};
    const double r0 = std::abs(data.basepoint);
    const double th0 = std::arg(data.basepoint);
    double th1 = std::arg(z);
    // shortest angular sweep
    double d = th1 - th0;
    while (d > std::numbers::pi) d -= kTwoPi;
    while (d < -std::numbers::pi) d += kTwoPi;
    std::array<Complex, 3> acc{};
    const Complex corner = std::polar(r0, th0 + d);
    for (int c = 0; c < 3; ++c) {
        acc[c] = quadrature::arc_integral(*fns[c], r0, th0, th0 + d, kQuadTol);
        acc[c] += quadrature::segment_integral(*fns[c], corner, z, kQuadTol);
    }
    return acc;
}

LVec3 immersion_at(const WeierstrassData& data, const PhiTriple& phi, Complex z) {
    return data.base_value + re_part(integrate_to(data, phi, z));
}

Frame frame_at(const WeierstrassData& data, Complex z) {
    const PhiTriple phi = make_phi(data);
    const auto p = phi(z);
    Frame fr;
    const Complex gz = data.g(z);
    const double ga = std::abs(gz);
    fr.lambda_sq = metric_lambda_sq(data.kind, std::abs(data.f(z)), ga);
    if (fr.lambda_sq < 1e-14) throw DegenerateFrame("frame is degenerate (lambda^2 < 1e-14)");
    fr.normal = data.kind == SurfaceKind::Maximal ? stereographic(ExtComplex(gz))
                                                  : euclid_sphere_point(ExtComplex(gz));
    fr.X_u = re_part(p);
    fr.X_v = neg_im_part(p);
    return fr;
}

WeierstrassData dualize(const WeierstrassData& data) {
    WeierstrassData dual = data;
    dual.kind = data.kind == SurfaceKind::Maximal ? SurfaceKind::Minimal : SurfaceKind::Maximal;
    dual.f = expr::AnalyticFn(
        expr::make_mul(expr::make_literal({0.0, 1.0}), data.f.value_ast()));
    return dual;
}

// ---------------------------------------------------------------------------
// Singularity classification
// ---------------------------------------------------------------------------

SingularitySite SingularitySite::loop(double rho) {
    SingularitySite s;
    s.kind = Kind::BoundaryLoop;
    s.rho = rho;
    return s;
}

SingularitySite SingularitySite::boundary_point(Complex p) {
    SingularitySite s;
    s.kind = Kind::BoundaryPoint;
    s.point = p;
    return s;
}

namespace {

// Winding number of the closed planar curve pts around c.
int winding_number(const std::vector<Complex>& pts, Complex c) {
    double total = 0.0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const Complex a = pts[k] - c;
        const Complex b = pts[(k + 1) % pts.size()] - c;
        total += std::arg(b / a);
    }
    return static_cast<int>(std::lround(total / kTwoPi));
}

// Limit of fn along the inward radius at p0 (Richardson-free: smallest probe).
Complex radial_limit(const std::function<Complex(Complex)>& fn, Complex p0, Complex inward) {
    Complex v{};
    for (double t : {1e-3, 1e-5, 1e-7}) v = fn(p0 + t * inward);
    return v;
}

}  // namespace

SingularityVerdict classify_singularity(const WeierstrassData& data, const SingularitySite& site) {
    SingularityVerdict verdict;
    if (site.kind == SingularitySite::Kind::BoundaryPoint) {
        const Complex p0 = site.point;
        Complex inward = data.basepoint - p0;
        if (std::abs(inward) < 1e-12) inward = Complex(1.0, 0.0);
        inward /= std::abs(inward);
        Complex g0, f0;
        try {
            g0 = data.g(p0);
            f0 = data.f(p0);
        } catch (const expr::EvalError&) {
            g0 = radial_limit([&](Complex z) { return data.g(z); }, p0, inward);
            f0 = radial_limit([&](Complex z) { return data.f(z); }, p0, inward);
        }
        if (std::abs(g0) < 1.0 - 1e-9 && std::abs(f0) < 1e-9)
            verdict.type = SingularityVerdict::Type::BranchPoint;
        else
            verdict.type = SingularityVerdict::Type::Regular;
        return verdict;
    }

    const int m = 256;
    double max_dev = 0.0, min_abs = 1e300, max_abs = 0.0;
    for (int k = 0; k < m; ++k) {
        const Complex z = std::polar(site.rho, kTwoPi * k / m);
        const double ga = std::abs(data.g(z));
        max_dev = std::max(max_dev, std::abs(ga - 1.0));
        min_abs = std::min(min_abs, ga);
        max_abs = std::max(max_abs, ga);
    }
    if (max_dev < 1e-6) {
        verdict.type = SingularityVerdict::Type::LightlikeLoop;
        const PhiTriple phi = make_phi(data);

        // Collapse test against the surface scale.
        const SurfaceMesh mesh = integrate_immersion(data);
        const double scale = mesh.euclid_diameter();
        std::vector<LVec3> loop(m);
        LVec3 lo{1e300, 1e300, 1e300}, hi{-1e300, -1e300, -1e300};
        for (int k = 0; k < m; ++k) {
            loop[k] = immersion_at(data, phi, std::polar(site.rho, kTwoPi * k / m));
            lo.x1 = std::min(lo.x1, loop[k].x1);
            lo.x2 = std::min(lo.x2, loop[k].x2);
            lo.x3 = std::min(lo.x3, loop[k].x3);
            hi.x1 = std::max(hi.x1, loop[k].x1);
            hi.x2 = std::max(hi.x2, loop[k].x2);
            hi.x3 = std::max(hi.x3, loop[k].x3);
        }
        const double diam = euclid_norm(hi - lo);
        verdict.collapsed = diam < 1e-6 * scale;

        if (verdict.collapsed) {
            Complex center{};
            for (const LVec3& p : loop) center += Complex(p.x1, p.x2);
            center /= static_cast<double>(m);
            // Covering degree on a nearby interior parameter circle.
            const double inner = data.domain.sample_r_min();
            const double outer = data.domain.sample_r_max();
            const double rho_near = std::abs(site.rho - inner) < std::abs(site.rho - outer)
                                        ? site.rho * 1.05
                                        : site.rho * 0.95;
            std::vector<Complex> proj(m);
            for (int k = 0; k < m; ++k) {
                const LVec3 p = immersion_at(data, phi, std::polar(rho_near, kTwoPi * k / m));
                proj[k] = Complex(p.x1, p.x2);
            }
            verdict.covering_degree = std::abs(winding_number(proj, center));
            verdict.conelike = verdict.covering_degree == 1;
        }
        return verdict;
    }
    if (max_abs < 1.0 - 1e-6) {
        verdict.type = SingularityVerdict::Type::Regular;
        return verdict;
    }
    throw InconclusiveClassification(
        "|g| on the loop is neither uniformly 1 nor uniformly below 1 (min " +
        std::to_string(min_abs) + ", max " + std::to_string(max_abs) + ")");
}

double path_independence_deviation(const WeierstrassData& data, int samples) {
    const PhiTriple phi = make_phi(data);
    const SurfaceMesh mesh = integrate_immersion(data);
    double worst = 0.0;
    const int total = static_cast<int>(mesh.vertices.size());
    const int stride = std::max(1, total / samples);
    for (int i = 0; i < total; i += stride) {
        const LVec3 alt = immersion_at(data, phi, mesh.vertices[i].param);
        worst = std::max(worst, euclid_norm(alt - mesh.vertices[i].position));
    }
    return worst;
}

}  // namespace maxsurf
