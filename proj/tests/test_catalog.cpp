#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "maxsurf/catalog.hpp"

using namespace maxsurf;

TEST_CASE("catalog roster") {
    const auto& names = catalog_names();
    REQUIRE(names.size() == 4);
    CHECK(names[0] == "plane");
    CHECK(names[1] == "lorentzian-catenoid");
    CHECK(names[2] == "enneper");
    CHECK(names[3] == "minimal-catenoid");
    for (const auto& n : names) CHECK(get_catalog_surface(n).name == n);
    CHECK_THROWS_AS(get_catalog_surface("helicoid"), UnknownSurface);
}

TEST_CASE("integration reproduces every closed form") {
    std::mt19937 rng(53);
    for (const auto& name : catalog_names()) {
        const CatalogEntry entry = get_catalog_surface(name);
        REQUIRE(entry.reference);
        const PhiTriple phi = make_phi(entry.data);
        const double r_min = entry.data.domain.sample_r_min();
        const double r_max = entry.data.domain.sample_r_max();
        std::uniform_real_distribution<double> rad(1.05 * r_min, 0.95 * r_max);
        std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
        double worst = 0.0;
        for (int k = 0; k < 100; ++k) {
            const Complex z = std::polar(rad(rng), ang(rng));
            worst = std::max(worst,
                             euclid_norm(immersion_at(entry.data, phi, z) - entry.reference(z)));
        }
        INFO("surface ", name);
        CHECK(worst < 1e-8);
    }
}

TEST_CASE("catenoid spot values") {
    const CatalogEntry cat = get_catalog_surface("lorentzian-catenoid");
    const PhiTriple phi = make_phi(cat.data);
    const LVec3 x = immersion_at(cat.data, phi, {0.5, 0.0});
    CHECK(x.x1 == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(x.x2 == doctest::Approx(0.75).epsilon(1e-10));
    CHECK(x.x3 == doctest::Approx(std::log(0.5)).epsilon(1e-10));
}

TEST_CASE("plane image is contained in a spacelike plane through the origin") {
    const CatalogEntry plane = get_catalog_surface("plane");
    const SurfaceMesh mesh = integrate_immersion(plane.data);
    double worst = 0.0;
    for (const auto& v : mesh.vertices)
        worst = std::max(worst, std::abs(v.position.x2 + 2.6 * v.position.x3));
    CHECK(worst < 1e-10);
}

TEST_CASE("catenoid lorentz norm is positive on the interior") {
    // ||X(rho e^{i theta})||^2 = sinh^2(log rho) - log^2 rho > 0 for rho != 1
    const CatalogEntry cat = get_catalog_surface("lorentzian-catenoid");
    for (double rho : {0.06, 0.1, 0.3, 0.7, 0.95}) {
        for (double theta : {0.0, 1.0, 2.5, 4.0}) {
            const LVec3 x = cat.reference(std::polar(rho, theta));
            const double expected =
                std::pow(std::sinh(std::log(rho)), 2) - std::pow(std::log(rho), 2);
            CHECK(minkowski_inner(x, x) == doctest::Approx(expected).epsilon(1e-12));
            CHECK(minkowski_inner(x, x) > 0.0);
        }
    }
}

TEST_CASE("catenoid graph height inverts the reference") {
    const CatalogEntry cat = get_catalog_surface("lorentzian-catenoid");
    for (double rho : {0.1, 0.25, 0.5, 0.9}) {
        const LVec3 x = cat.reference(std::polar(rho, 1.3));
        const double r = std::hypot(x.x1, x.x2);
        CHECK(x.x3 == doctest::Approx(catenoid_graph_height(r)).epsilon(1e-12));
    }
    CHECK(catenoid_graph_height(0.0) == 0.0);
    CHECK(catenoid_graph_height(1.0) == doctest::Approx(-std::asinh(1.0)).epsilon(1e-15));
}

TEST_CASE("expected singularity verdicts hold") {
    for (const auto& name : catalog_names()) {
        const CatalogEntry entry = get_catalog_surface(name);
        for (const auto& expected : entry.singularities) {
            const SingularityVerdict v = classify_singularity(entry.data, expected.site);
            CHECK(v.type == expected.verdict.type);
            CHECK(v.collapsed == expected.verdict.collapsed);
            CHECK(v.conelike == expected.verdict.conelike);
            CHECK(v.covering_degree == expected.verdict.covering_degree);
        }
    }
    CHECK(!get_catalog_surface("lorentzian-catenoid").singularities.empty());
}

TEST_CASE("conjugate exactness flags") {
    CHECK(get_catalog_surface("enneper").conjugate_exact);
    CHECK(!get_catalog_surface("minimal-catenoid").conjugate_exact);
    CHECK(get_catalog_surface("lorentzian-catenoid").expected_type == "parabolic-evidence");
}
