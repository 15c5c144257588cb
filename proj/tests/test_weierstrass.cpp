#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "maxsurf/weierstrass.hpp"

using namespace maxsurf;

namespace {

WeierstrassData catenoid() {
    return make_weierstrass(SurfaceKind::Maximal, ParamDomain::annulus(0.05, 1.0), "z", "1/z",
                            {0.5, 0.0}, {0.0, 0.75, std::log(0.5)});
}

WeierstrassData plane_data() {
    return make_weierstrass(SurfaceKind::Maximal, ParamDomain::plane(1e2), "0.2", "1", {1.0, 0.0},
                            {0.0, 0.0, 0.0});
}

}  // namespace

TEST_CASE("validation rejects non-spacelike and degenerate data") {
    CHECK_NOTHROW(plane_data());
    CHECK_NOTHROW(make_weierstrass(SurfaceKind::Maximal, ParamDomain::annulus(0.1, 1.0), "z",
                                   "1/z", {0.5, 0.0}, {}));
    CHECK_THROWS_AS(make_weierstrass(SurfaceKind::Maximal, ParamDomain::disc(2.0), "z", "1",
                                     Complex{}, {}),
                    SpacelikeViolation);
    CHECK_THROWS_AS(make_weierstrass(SurfaceKind::Maximal, ParamDomain::disc(0.5), "z", "1",
                                     {2.0, 0.0}, {}),
                    std::invalid_argument);  // basepoint outside
}

TEST_CASE("phi formulas") {
    const WeierstrassData data = make_weierstrass(
        SurfaceKind::Maximal, ParamDomain::annulus(0.1, 0.9), "z", "1", {0.5, 0.0}, {});
    const PhiTriple phi = make_phi(data);
    CHECK(std::abs(phi.phi1({2, 0}) - Complex(0, -0.75)) < 1e-14);

    std::mt19937 rng(17);
    std::uniform_real_distribution<double> rad(0.15, 0.85), ang(0.0, 6.28);
    for (int k = 0; k < 100; ++k) {
        const Complex z = std::polar(rad(rng), ang(rng));
        const auto p = phi(z);
        const Complex null_id = p[0] * p[0] + p[1] * p[1] - p[2] * p[2];
        const double scale = std::norm(p[0]) + std::norm(p[1]) + std::norm(p[2]);
        CHECK(std::abs(null_id) < 1e-10 * (1.0 + scale));
    }
}

TEST_CASE("cycle periods") {
    const auto cat_periods = cycle_periods(catenoid(), 0.5);
    CHECK(std::abs(cat_periods[0]) < 1e-10);
    CHECK(std::abs(cat_periods[1]) < 1e-10);
    CHECK(std::abs(cat_periods[2] - Complex(0.0, 2.0 * M_PI)) < 1e-10);

    const auto plane_periods = cycle_periods(plane_data(), 2.0);
    for (const Complex& p : plane_periods) CHECK(std::abs(p) < 1e-10);

    // f = 1/z with constant g = 1/2: residues 3i/4, -5/4, 1 give periods
    // -3pi/2, -5pi i/2, 2pi i.
    const WeierstrassData mixed = make_weierstrass(
        SurfaceKind::Maximal, ParamDomain::annulus(0.1, 1.0), "0.5", "1/z", {0.5, 0.0}, {});
    const auto mixed_periods = cycle_periods(mixed, 0.5);
    CHECK(std::abs(mixed_periods[0] - Complex(-1.5 * M_PI, 0.0)) < 1e-9);
    CHECK(std::abs(mixed_periods[1] - Complex(0.0, -2.5 * M_PI)) < 1e-9);
    CHECK(std::abs(mixed_periods[2] - Complex(0.0, 2.0 * M_PI)) < 1e-9);
}

TEST_CASE("catenoid immersion matches the symbolic antiderivative") {
    const WeierstrassData data = catenoid();
    const SurfaceMesh mesh = integrate_immersion(data);
    REQUIRE(mesh.vertices.size() == std::size_t(33) * 64);

    auto closed_form = [](Complex z) -> LVec3 {
        const double rho = std::abs(z), theta = std::arg(z);
        const double c = 0.5 * (rho - 1.0 / rho);
        return {c * std::sin(theta), -c * std::cos(theta), std::log(rho)};
    };
    double worst = 0.0;
    for (const auto& v : mesh.vertices)
        worst = std::max(worst, euclid_norm(v.position - closed_form(v.param)));
    CHECK(worst < 1e-8);

    const PhiTriple phi = make_phi(data);
    const LVec3 at_base = immersion_at(data, phi, data.basepoint);
    CHECK(euclid_norm(at_base - data.base_value) < 1e-12);
    const LVec3 spot = immersion_at(data, phi, {0.5, 0.0});
    CHECK(spot.x1 == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(spot.x2 == doctest::Approx(0.75).epsilon(1e-10));
    CHECK(spot.x3 == doctest::Approx(std::log(0.5)).epsilon(1e-10));
}

TEST_CASE("constant gauss map integrates to a plane") {
    const SurfaceMesh mesh = integrate_immersion(plane_data());
    // Phi = (2.4 i, -2.6, 1): normal direction of the image plane
    // solves <n, X_u> = <n, X_v> = 0 in the Euclidean sense.
    // X(z) = (-2.4 Im w, -2.6 Re w, Re w), w = z - 1, so 2.6 x3 + x2 = 0 and x1 free? No:
    // x2 = -2.6 Re w, x3 = Re w -> x2 + 2.6 x3 = 0 exactly.
    double worst = 0.0;
    for (const auto& v : mesh.vertices)
        worst = std::max(worst, std::abs(v.position.x2 + 2.6 * v.position.x3));
    CHECK(worst < 1e-10);
}

TEST_CASE("frame contracts") {
    const WeierstrassData data = catenoid();
    const Frame fr = frame_at(data, {0.5, 0.0});
    CHECK(fr.lambda_sq == doctest::Approx(2.25).epsilon(1e-12));
    CHECK(fr.normal.x1 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(fr.normal.x2 == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    CHECK(fr.normal.x3 == doctest::Approx(-5.0 / 3.0).epsilon(1e-12));

    std::mt19937 rng(23);
    std::uniform_real_distribution<double> rad(0.1, 0.9), ang(0.0, 6.28);
    for (int k = 0; k < 100; ++k) {
        const Complex z = std::polar(rad(rng), ang(rng));
        const Frame f = frame_at(data, z);
        CHECK(std::abs(minkowski_inner(f.X_u, f.X_u) - f.lambda_sq) < 1e-10 * f.lambda_sq);
        CHECK(std::abs(minkowski_inner(f.X_v, f.X_v) - f.lambda_sq) < 1e-10 * f.lambda_sq);
        CHECK(std::abs(minkowski_inner(f.X_u, f.X_v)) < 1e-10 * f.lambda_sq);
        CHECK(std::abs(minkowski_inner(f.X_u, f.normal)) < 1e-10 * f.lambda_sq);
        CHECK(std::abs(minkowski_inner(f.X_v, f.normal)) < 1e-10 * f.lambda_sq);
        CHECK(std::abs(minkowski_inner(f.normal, f.normal) + 1.0) < 1e-9);
        CHECK(f.normal.x3 <= -1.0);
    }
}

TEST_CASE("duality") {
    const WeierstrassData data = catenoid();
    const WeierstrassData dual = dualize(data);
    CHECK(dual.kind == SurfaceKind::Minimal);
    CHECK(expr::structurally_equal(dual.g.value_ast(), data.g.value_ast()));
    const WeierstrassData twice = dualize(dual);
    CHECK(twice.kind == SurfaceKind::Maximal);
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> rad(0.1, 0.9), ang(0.0, 6.28);
    const PhiTriple p0 = make_phi(data);
    const PhiTriple p1 = make_phi(dual);
    for (int k = 0; k < 20; ++k) {
        const Complex z = std::polar(rad(rng), ang(rng));
        // dualize^2 negates f
        CHECK(std::abs(twice.f(z) + data.f(z)) < 1e-14 * (1.0 + std::abs(data.f(z))));
        // dualize^4 is the identity
        const WeierstrassData four = dualize(dualize(twice));
        CHECK(std::abs(four.f(z) - data.f(z)) < 1e-14 * (1.0 + std::abs(data.f(z))));
        // Re(phi1), Re(phi2) are shared between the dual pair
        CHECK(std::abs(p0.phi1(z).real() - p1.phi1(z).real()) < 1e-12);
        CHECK(std::abs(p0.phi2(z).real() - p1.phi2(z).real()) < 1e-12);
    }
}

TEST_CASE("path independence") {
    CHECK(path_independence_deviation(catenoid()) < 1e-8);
}

TEST_CASE("multivalued immersion is rejected") {
    // f = 1/z^2 with g = 0.5: phi2 = -1.25/z^2 has zero residue, but
    // f = (1+z)/z gives phi3 residue 1 -> real period 2 pi i is imaginary, fine;
    // instead use f with a residue producing a real period: f = i/z.
    CHECK_THROWS_AS(integrate_immersion(make_weierstrass(SurfaceKind::Maximal,
                                                         ParamDomain::annulus(0.1, 1.0), "0.5",
                                                         "i/z", {0.5, 0.0}, {})),
                    NonExactRealPart);
}

TEST_CASE("singularity classification") {
    const auto loop_verdict = classify_singularity(catenoid(), SingularitySite::loop(1.0));
    CHECK(loop_verdict.type == SingularityVerdict::Type::LightlikeLoop);
    CHECK(loop_verdict.collapsed);
    CHECK(loop_verdict.conelike);
    CHECK(loop_verdict.covering_degree == 1);

    const WeierstrassData branch = make_weierstrass(
        SurfaceKind::Maximal, ParamDomain::disc(0.5), "z/2", "z", {0.1, 0.0}, {});
    const auto point_verdict =
        classify_singularity(branch, SingularitySite::boundary_point(Complex{}));
    CHECK(point_verdict.type == SingularityVerdict::Type::BranchPoint);

    const WeierstrassData regular = make_weierstrass(
        SurfaceKind::Maximal, ParamDomain::disc(1.0), "0.2", "1", {0.1, 0.0}, {});
    const auto reg_verdict = classify_singularity(regular, SingularitySite::loop(1.0));
    CHECK(reg_verdict.type == SingularityVerdict::Type::Regular);
}

TEST_CASE("quadrature primitives") {
    // integral of z dz over the segment [0, 1+i] = (1+i)^2/2 = i
    const expr::AnalyticFn id = expr::AnalyticFn::from_text("z");
    CHECK(std::abs(quadrature::segment_integral(id, Complex{}, {1, 1}) - Complex(0, 1)) < 1e-10);
    // integral of dz/z over the unit circle = 2 pi i
    const expr::AnalyticFn inv = expr::AnalyticFn::from_text("1/z");
    CHECK(std::abs(quadrature::arc_integral(inv, 1.0, 0.0, 2.0 * M_PI) -
                   Complex(0, 2.0 * M_PI)) < 1e-9);
}
