#include "maxsurf/minimal_bridge.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace maxsurf {

namespace {

LVec3 cross(const LVec3& a, const LVec3& b) {
    return {a.x2 * b.x3 - a.x3 * b.x2, a.x3 * b.x1 - a.x1 * b.x3, a.x1 * b.x2 - a.x2 * b.x1};
}

}  // namespace

MinimalImmersion MinimalImmersion::from_data(const WeierstrassData& data) {
    if (data.kind != SurfaceKind::Minimal)
        throw std::invalid_argument("minimal immersion requires kind minimal");
    return {data, integrate_immersion(data)};
}

WeierstrassData dual_with_conjugate_height(const WeierstrassData& data) {
    WeierstrassData dual = data;
    dual.kind = data.kind == SurfaceKind::Minimal ? SurfaceKind::Maximal : SurfaceKind::Minimal;
    dual.f = expr::AnalyticFn(expr::make_mul(expr::make_literal(Complex(0.0, -1.0)),
                                             data.f.value_ast()));
    dual.base_value = {data.base_value.x1, data.base_value.x2, 0.0};
    return dual;
}

ConjugateField harmonic_conjugate(const MinimalImmersion& immersion) {
    const WeierstrassData& data = immersion.data;
    ConjugateField field;
    if (data.domain.has_cycle()) {
        const double rho =
            std::sqrt(data.domain.sample_r_min() * data.domain.sample_r_max());
        const auto periods = cycle_periods(data, rho);
        field.period_defects.push_back(periods[2]);
        if (std::abs(periods[2].imag()) >= 1e-8)
            throw NotExact("psi is not exact: Im of the phi3 cycle period is nonzero",
                           periods[2]);
    }
    field.exact = true;
    field.x3.reserve(immersion.mesh.integrals.size());
    for (const auto& integral : immersion.mesh.integrals)
        field.x3.push_back(integral[2].imag());
    return field;
}

double conjugate_at(const WeierstrassData& data, const PhiTriple& phi, Complex z) {
    return integrate_to(data, phi, z)[2].imag();
}

PsiCheck psi_check(const MinimalImmersion& immersion, Complex z, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("step must be positive");
    const WeierstrassData& data = immersion.data;
    const PhiTriple phi = make_phi(data);

    const Complex eu(h, 0.0), ev(0.0, h);
    const LVec3 y_pu = immersion_at(data, phi, z + eu), y_mu = immersion_at(data, phi, z - eu);
    const LVec3 y_pv = immersion_at(data, phi, z + ev), y_mv = immersion_at(data, phi, z - ev);
    const LVec3 t_u = (1.0 / (2.0 * h)) * (y_pu - y_mu);
    const LVec3 t_v = (1.0 / (2.0 * h)) * (y_pv - y_mv);

    const LVec3 c = cross(t_u, t_v);
    const double cn = euclid_norm(c);
    if (cn < 1e-14) throw DegenerateFrame("degenerate tangent frame in psi check");
    const LVec3 n = (1.0 / cn) * c;
    const LVec3 n_ref = euclid_sphere_point(ExtComplex(data.g(z)));

    PsiCheck out;
    out.gauss_map_deviation = euclid_norm(n - n_ref);
    out.gauss_sign_mismatch = std::abs(n_ref.x3) > 1e-9 && n.x3 * n_ref.x3 < 0.0;

    const double dx3_u =
        (conjugate_at(data, phi, z + eu) - conjugate_at(data, phi, z - eu)) / (2.0 * h);
    const double dx3_v =
        (conjugate_at(data, phi, z + ev) - conjugate_at(data, phi, z - ev)) / (2.0 * h);
    const double lhs_u = n.x2 * t_u.x1 - n.x1 * t_u.x2;
    const double lhs_v = n.x2 * t_v.x1 - n.x1 * t_v.x2;
    out.residual = std::max(std::abs(lhs_u - dx3_u), std::abs(lhs_v - dx3_v));
    return out;
}

BoundedConjugateReport bounded_conjugate_criterion(std::span<const LVec3> y,
                                                   std::span<const double> x3, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("epsilon must be positive");
    if (y.size() != x3.size() || y.empty())
        throw std::invalid_argument("node and conjugate arrays must match and be nonempty");

    // |x3 + C| <= r - eps for all nodes; the worst violation as a function of
    // C is max(C + A, -C + B), minimized at C = (B - A) / 2.
    double a = -1e300, b = -1e300;
    for (std::size_t k = 0; k < y.size(); ++k) {
        const double r = planar_norm(y[k]);
        a = std::max(a, x3[k] - r + eps);
        b = std::max(b, -x3[k] - r + eps);
    }
    BoundedConjugateReport report;
    report.epsilon = eps;
    report.constant = (b - a) / 2.0;
    report.worst_slack = -(a + b) / 2.0;
    report.pass = report.worst_slack >= 0.0;

    report.dual_norm_margin = 1e300;
    for (std::size_t k = 0; k < y.size(); ++k) {
        const double r = planar_norm(y[k]);
        const double h3 = x3[k] + report.constant;
        if (std::abs(h3) > r - eps + 1e-12) report.violating_nodes.push_back(static_cast<int>(k));
        const double dual_norm = r * r - h3 * h3;
        report.dual_norm_margin =
            std::min(report.dual_norm_margin, dual_norm - eps * (2.0 * r - eps));
    }
    report.dual_bound_ok = report.pass && report.dual_norm_margin >= -1e-9;
    return report;
}

BoundedConjugateResult bounded_conjugate_criterion(const MinimalImmersion& immersion,
                                                   const ConjugateField& conj, double eps) {
    if (!conj.exact) throw NotExact("conjugate field is not exact", Complex{});
    std::vector<LVec3> y;
    y.reserve(immersion.mesh.vertices.size());
    for (const auto& v : immersion.mesh.vertices) y.push_back(v.position);

    BoundedConjugateResult out;
    out.report = bounded_conjugate_criterion(y, conj.x3, eps);
    if (out.report.pass) {
        WeierstrassData dual = dual_with_conjugate_height(immersion.data);
        dual.base_value.x3 = out.report.constant;
        out.dual = std::move(dual);
    }
    return out;
}

namespace {

// Resample boundary extents (rho_k at angle phi_k) onto n uniform angles.
std::vector<double> resample_extents(std::vector<std::pair<double, double>> samples, int n) {
    constexpr double kTwoPi = 2.0 * std::numbers::pi;
    std::sort(samples.begin(), samples.end());
    std::vector<double> out(n);
    const std::size_t m = samples.size();
    for (int j = 0; j < n; ++j) {
        const double theta = kTwoPi * j / n;
        std::size_t hi = 0;
        while (hi < m && samples[hi].first < theta) ++hi;
        const auto& s1 = samples[hi % m];
        const auto& s0 = samples[(hi + m - 1) % m];
        double span = s1.first - s0.first;
        double off = theta - s0.first;
        if (span <= 0.0) span += kTwoPi;
        if (off < 0.0) off += kTwoPi;
        const double frac = span > 1e-15 ? std::clamp(off / span, 0.0, 1.0) : 0.0;
        out[j] = s0.second * (1.0 - frac) + s1.second * frac;
    }
    return out;
}

}  // namespace

ExtractedGraph extract_graph(const WeierstrassData& data, const SurfaceMesh& mesh, Complex center,
                             std::function<double(Complex)> height) {
    auto project = [&](int node) {
        return Complex(mesh.vertices[node].position.x1, mesh.vertices[node].position.x2) - center;
    };

    // Injectivity certificate: a graph projection keeps one consistent,
    // nonvanishing quad orientation across the mesh.
    int positive = 0, negative = 0, degenerate = 0;
    double area_scale = 0.0;
    std::vector<double> areas;
    areas.reserve(mesh.faces.size());
    for (const auto& face : mesh.faces) {
        double area = 0.0;
        for (int e = 0; e < 4; ++e) {
            const Complex p = project(face[e]);
            const Complex q = project(face[(e + 1) % 4]);
            area += p.real() * q.imag() - q.real() * p.imag();
        }
        areas.push_back(area);
        area_scale = std::max(area_scale, std::abs(area));
    }
    // Quads with a fully collapsed edge ring (conelike loops) stay legitimate
    // triangles; only near-zero areas against the mesh scale count as overlap.
    for (double area : areas) {
        if (std::abs(area) <= 1e-12 * area_scale)
            ++degenerate;
        else if (area > 0.0)
            ++positive;
        else
            ++negative;
    }
    const int overlapping = degenerate + std::min(positive, negative);
    if (overlapping > 0)
        throw GraphExtractionFailure("projected mesh is not injective over the region",
                                     overlapping);

    // Starlike region: per-angle maximum of the projected boundary rings.
    constexpr double kTwoPi = 2.0 * std::numbers::pi;
    std::vector<double> extents(mesh.n_angular, 0.0);
    for (int ring : {0, mesh.n_radial}) {
        std::vector<std::pair<double, double>> boundary;
        double rho_max = 0.0;
        for (int k = 0; k < mesh.n_angular; ++k) {
            const Complex p = project(mesh.index(ring, k));
            double phi = std::arg(p);
            if (phi < 0.0) phi += kTwoPi;
            boundary.emplace_back(phi, std::abs(p));
            rho_max = std::max(rho_max, std::abs(p));
        }
        if (rho_max < 1e-12) continue;  // ring collapsed onto the center
        const auto ring_ext = resample_extents(std::move(boundary), mesh.n_angular);
        for (int k = 0; k < mesh.n_angular; ++k) extents[k] = std::max(extents[k], ring_ext[k]);
    }
    for (double& t : extents) t *= 1.0 - 1e-9;

    struct State {
        WeierstrassData data;
        PhiTriple phi;
        std::function<double(Complex)> height;
        Complex center;
        std::vector<std::pair<Complex, Complex>> seeds;  // (projected, param)
    };
    auto state = std::make_shared<State>();
    state->data = data;
    state->phi = make_phi(data);
    state->height = std::move(height);
    state->center = center;
    state->seeds.reserve(mesh.vertices.size());
    for (int node = 0; node < static_cast<int>(mesh.vertices.size()); ++node)
        state->seeds.emplace_back(project(node), mesh.vertices[node].param);

    ExtractedGraph out;
    out.overlapping_cells = 0;
    out.min_extent = *std::min_element(extents.begin(), extents.end());
    out.graph.region = StarlikeRegion::from_table(extents);
    out.graph.u = [state](Complex w) {
        Complex z = state->data.basepoint;
        double best = 1e300;
        for (const auto& [proj, param] : state->seeds) {
            const double d = std::abs(proj - w);
            if (d < best) {
                best = d;
                z = param;
            }
        }
        const Complex target = state->center + w;
        for (int it = 0; it < 60; ++it) {
            const LVec3 y = immersion_at(state->data, state->phi, z);
            const double f1 = y.x1 - target.real(), f2 = y.x2 - target.imag();
            if (std::hypot(f1, f2) < 1e-11) return state->height(z);
            const Complex p1 = state->phi.phi1(z), p2 = state->phi.phi2(z);
            const double j11 = p1.real(), j12 = -p1.imag();
            const double j21 = p2.real(), j22 = -p2.imag();
            const double det = j11 * j22 - j12 * j21;
            if (std::abs(det) < 1e-16)
                throw GraphExtractionFailure("singular projection Jacobian", 0);
            z -= Complex((j22 * f1 - j12 * f2) / det, (-j21 * f1 + j11 * f2) / det);
        }
        throw GraphExtractionFailure("graph inversion did not converge", 0);
    };
    return out;
}

MinimalPipelineReport minimal_starlike_pipeline(const MinimalImmersion& immersion, double delta,
                                                int rays, int samples, int chart_n) {
    const WeierstrassData& data = immersion.data;
    if (!data.domain.simply_connected())
        throw std::invalid_argument("pipeline requires a simply connected domain");

    MinimalPipelineReport report;
    const PhiTriple phi = make_phi(data);
    ExtractedGraph extracted =
        extract_graph(data, immersion.mesh, Complex(data.base_value.x1, data.base_value.x2),
                      [data, phi](Complex z) { return conjugate_at(data, phi, z); });
    report.graph_ok = true;
    report.delta = delta > 0.0 ? delta : 0.5 * extracted.min_extent;
    report.starlike = starlike_report(extracted.graph, report.delta, rays, samples);

    // Superharmonicity of the dual maximal piece on a rectangular chart
    // around the basepoint.
    const WeierstrassData dual = dual_with_conjugate_height(data);
    const double room = data.domain.sample_r_max() - std::abs(data.basepoint);
    const double halfwidth = 0.65 * room / std::numbers::sqrt2;
    ChartGrid chart = make_rect_chart(dual, data.basepoint, halfwidth, chart_n, 1e-12);
    double q_max = 0.0;
    for (const auto& node : chart.nodes)
        if (node.masked) q_max = std::max(q_max, minkowski_inner(node.X, node.X));
    const double threshold = std::max(1e-10, 1e-3 * q_max);
    chart.mask_threshold = threshold;
    for (auto& node : chart.nodes)
        node.masked = !node.singular && minkowski_inner(node.X, node.X) > threshold;
    report.superharmonic = superharmonic_report(chart);

    report.pass = report.graph_ok && report.starlike.pass && report.superharmonic.sign_ok;
    return report;
}

}  // namespace maxsurf
