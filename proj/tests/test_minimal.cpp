#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "maxsurf/catalog.hpp"
#include "maxsurf/minimal_bridge.hpp"

using namespace maxsurf;

namespace {

MinimalImmersion enneper(double radius = 0.5) {
    return MinimalImmersion::from_data(make_weierstrass(
        SurfaceKind::Minimal, ParamDomain::disc(radius), "z", "z", {0.1, 0.0}, {}));
}

MinimalImmersion minimal_catenoid() {
    return MinimalImmersion::from_data(make_weierstrass(
        SurfaceKind::Minimal, ParamDomain::annulus(0.05, 1.0), "z", "1/z", {0.5, 0.0}, {}));
}

}  // namespace

TEST_CASE("harmonic conjugate of enneper's third coordinate") {
    // Y3 = Re(z^2/2), so X3 = Im(z^2/2)
    const MinimalImmersion imm = enneper();
    const ConjugateField conj = harmonic_conjugate(imm);
    CHECK(conj.exact);
    CHECK(conj.period_defects.empty());
    REQUIRE(conj.x3.size() == imm.mesh.vertices.size());
    double worst = 0.0;
    const double base_im = (Complex(0.1, 0.0) * Complex(0.1, 0.0) / 2.0).imag();
    for (std::size_t k = 0; k < conj.x3.size(); ++k) {
        const Complex z = imm.mesh.vertices[k].param;
        const double expected = (z * z / 2.0).imag() - base_im;
        worst = std::max(worst, std::abs(conj.x3[k] - expected));
    }
    CHECK(worst < 1e-8);

    const PhiTriple phi = make_phi(imm.data);
    const Complex z(0.5, 0.5);
    CHECK(conjugate_at(imm.data, phi, z) == doctest::Approx((z * z / 2.0).imag()).epsilon(1e-10));
    CHECK(conjugate_at(imm.data, phi, {0.35, 0.35}) == doctest::Approx(0.1225).epsilon(1e-8));
}

TEST_CASE("multivalued conjugates are rejected with the period attached") {
    try {
        harmonic_conjugate(minimal_catenoid());
        FAIL("expected NotExact");
    } catch (const NotExact& e) {
        CHECK(std::abs(e.period.imag() - 2.0 * M_PI) < 1e-8);
        CHECK(std::abs(e.period.real()) < 1e-8);
    }
}

TEST_CASE("psi identity: N2 dY1 - N1 dY2 = dX3") {
    const MinimalImmersion imm = enneper();

    // second-order convergence of the centered-difference residual
    const Complex z(0.2, 0.15);
    const double r1 = psi_check(imm, z, 4e-3).residual;
    const double r2 = psi_check(imm, z, 2e-3).residual;
    const double r4 = psi_check(imm, z, 1e-3).residual;
    CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.35));
    CHECK(r2 / r4 == doctest::Approx(4.0).epsilon(0.35));

    std::mt19937 rng(41);
    std::uniform_real_distribution<double> rad(0.05, 0.4), ang(0.0, 6.28);
    for (int k = 0; k < 20; ++k) {
        const PsiCheck pc = psi_check(imm, std::polar(rad(rng), ang(rng)), 1e-3);
        CHECK(pc.residual < 1e-6);
        CHECK(pc.gauss_map_deviation < 1e-5);
        CHECK(!pc.gauss_sign_mismatch);
    }
}

TEST_CASE("bounded conjugate criterion on synthetic exterior data") {
    // flat graph over r >= 1 with X3 identically zero: passes for eps < 1
    std::vector<LVec3> y;
    std::vector<double> x3;
    for (int ir = 0; ir <= 20; ++ir) {
        for (int ia = 0; ia < 32; ++ia) {
            const double r = 1.0 + 0.25 * ir;
            const double a = 2.0 * M_PI * ia / 32;
            y.push_back({r * std::cos(a), r * std::sin(a), 0.0});
            x3.push_back(0.0);
        }
    }
    const BoundedConjugateReport rep = bounded_conjugate_criterion(y, x3, 0.5);
    CHECK(rep.pass);
    CHECK(rep.constant == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(rep.worst_slack == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(rep.violating_nodes.empty());
    CHECK(rep.dual_bound_ok);
    // certificate: <X,X> >= eps (2 ||pi0 Y||_0 - eps) at the worst node
    CHECK(rep.dual_norm_margin == doctest::Approx(1.0 - 0.5 * (2.0 - 0.5)).epsilon(1e-12));

    // heights growing faster than the planar radius defeat any choice of C
    std::vector<double> tilted(x3.size());
    for (std::size_t k = 0; k < y.size(); ++k)
        tilted[k] = 2.0 * std::hypot(y[k].x1, y[k].x2);
    const BoundedConjugateReport bad = bounded_conjugate_criterion(y, tilted, 0.5);
    CHECK(!bad.pass);
    CHECK(!bad.violating_nodes.empty());
}

TEST_CASE("bounded conjugate criterion on enneper fails near the puncture") {
    // X3 ~ Im(z^2)/2 is tiny, but ||pi0 Y||_0 - eps < 0 near z = 0
    const MinimalImmersion imm = enneper();
    const ConjugateField conj = harmonic_conjugate(imm);
    const BoundedConjugateResult res = bounded_conjugate_criterion(imm, conj, 0.4);
    CHECK(!res.report.pass);
    CHECK(res.report.worst_slack < -0.39);
    CHECK(!res.report.violating_nodes.empty());
    CHECK(!res.dual.has_value());
}

TEST_CASE("dual data flips f by -i") {
    const WeierstrassData data = enneper().data;
    const WeierstrassData dual = dual_with_conjugate_height(data);
    CHECK(dual.kind == SurfaceKind::Maximal);
    const Complex z(0.3, 0.2);
    CHECK(std::abs(dual.f(z) - Complex(0, -1) * data.f(z)) < 1e-14);
}

TEST_CASE("graph extraction from an integrated mesh") {
    const CatalogEntry cat = get_catalog_surface("lorentzian-catenoid");
    const SurfaceMesh mesh = integrate_immersion(cat.data);
    const PhiTriple phi = make_phi(cat.data);
    // projection center: the planar origin (the rotation axis)
    const ExtractedGraph ext = extract_graph(cat.data, mesh, Complex{},
                                             [&](Complex z) {
                                                 return immersion_at(cat.data, phi, z).x3;
                                             });
    CHECK(ext.overlapping_cells == 0);
    CHECK(ext.min_extent == doctest::Approx(9.975).epsilon(1e-3));

    // recovered height agrees with u(r) = -asinh(r) away from the puncture
    for (double r : {0.5, 1.0, 3.0})
        CHECK(ext.graph.u({r, 0.0}) == doctest::Approx(catenoid_graph_height(r)).epsilon(1e-6));

    const StarlikeReport star = starlike_report(ext.graph, 1.0, 16, 24, 0.9 * ext.min_extent);
    CHECK(star.pass);
    CHECK(star.epsilon == doctest::Approx(0.083882).epsilon(1e-3));
}

TEST_CASE("minimal pipeline end to end") {
    const MinimalImmersion small = MinimalImmersion::from_data(make_weierstrass(
        SurfaceKind::Minimal, ParamDomain::disc(0.3), "z", "z", {0.1, 0.0}, {}));
    const MinimalPipelineReport rep = minimal_starlike_pipeline(small);
    CHECK(rep.pass);
    CHECK(rep.graph_ok);
    CHECK(rep.overlapping_cells == 0);
    CHECK(rep.starlike.pass);
    CHECK(rep.starlike.epsilon > 0.0);
    CHECK(rep.superharmonic.sign_ok);
    CHECK(rep.superharmonic.evaluated_nodes > 100);

    // flat minimal graph: g constant, dual graph is a plane
    const MinimalImmersion flat = MinimalImmersion::from_data(make_weierstrass(
        SurfaceKind::Minimal, ParamDomain::disc(1.0), "0.2", "1", {0.1, 0.0}, {}));
    CHECK(minimal_starlike_pipeline(flat).graph_ok);

    // annular domains carry a conjugate period: precondition failure
    CHECK_THROWS_AS(minimal_starlike_pipeline(minimal_catenoid()), std::invalid_argument);
}
