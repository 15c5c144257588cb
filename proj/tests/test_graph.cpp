#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "maxsurf/graph_analysis.hpp"

using namespace maxsurf;

namespace {

SpacelikeGraph flat_graph() {
    return {StarlikeRegion::full_plane(), [](Complex) { return 0.0; }};
}

SpacelikeGraph catenoid_graph() {
    // Graph height of the Lorentzian catenoid over the punctured plane,
    // extended by u(0) = 0.
    return {StarlikeRegion::full_plane(), [](Complex z) { return -std::asinh(std::abs(z)); }};
}

}  // namespace

TEST_CASE("clearance profile along rays") {
    const auto flat = lightcone_clearance_profile(flat_graph(), 0.3, 40, 10.0);
    for (const auto& s : flat) {
        CHECK(s.f == doctest::Approx(s.t / std::sqrt(2.0)).epsilon(1e-12));
        CHECK(s.n == doctest::Approx(s.t * s.t).epsilon(1e-12));
    }

    const SpacelikeGraph tilted{StarlikeRegion::full_plane(),
                                [](Complex z) { return 0.5 * std::abs(z); }};
    const auto t_prof = lightcone_clearance_profile(tilted, 1.0, 40, 10.0);
    for (const auto& s : t_prof)
        CHECK(s.f == doctest::Approx(0.5 * s.t / std::sqrt(2.0)).epsilon(1e-12));

    const auto cat = lightcone_clearance_profile(catenoid_graph(), 0.0, 200, 4.0);
    for (const auto& s : cat) {
        if (std::abs(s.t - 1.0) < 1e-9) {
            const double expected = (1.0 - std::asinh(1.0)) / std::sqrt(2.0);
            CHECK(s.f == doctest::Approx(expected).epsilon(1e-9));
            CHECK(expected == doctest::Approx(0.083877).epsilon(1e-4));
        }
        // profile clearance agrees with the ambient cone distance
        const LVec3 p{s.t * std::cos(0.0), s.t * std::sin(0.0), s.u};
        CHECK(std::abs(s.f - dist_to_lightcone(p)) < 1e-12);
    }
}

TEST_CASE("starlike report on model graphs") {
    const StarlikeReport flat = starlike_report(flat_graph(), 1.0, 64, 200, 50.0);
    CHECK(flat.pass);
    CHECK(flat.epsilon == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(!flat.properness_trivial);

    const StarlikeReport cat = starlike_report(catenoid_graph(), 1.0, 64, 400, 50.0);
    CHECK(cat.pass);
    CHECK(cat.epsilon == doctest::Approx((1.0 - std::asinh(1.0)) / std::sqrt(2.0)).epsilon(1e-6));

    // |u| = t everywhere: violates strict spacelike position (condition i)
    const SpacelikeGraph lightlike{StarlikeRegion::full_plane(),
                                   [](Complex z) { return std::abs(z); }};
    const StarlikeReport bad = starlike_report(lightlike, 1.0, 16, 100, 50.0);
    CHECK(!bad.pass);
    bool some_interior_failure = false;
    for (const auto& ray : bad.rays) some_interior_failure |= !ray.interior_ok;
    CHECK(some_interior_failure);

    // bounded region: properness is trivial
    const SpacelikeGraph disc_graph{StarlikeRegion::disc(3.0), [](Complex) { return 0.0; }};
    const StarlikeReport bounded = starlike_report(disc_graph, 1.0, 16, 100);
    CHECK(bounded.pass);
    CHECK(bounded.properness_trivial);
}

TEST_CASE("starlike report invariances") {
    // dilation covariance: u_s(z) = s u(z/s) rescales epsilon by s
    const double s = 2.5;
    const SpacelikeGraph scaled{StarlikeRegion::full_plane(),
                                [s](Complex z) { return -s * std::asinh(std::abs(z) / s); }};
    const StarlikeReport base = starlike_report(catenoid_graph(), 1.0, 32, 400, 50.0);
    const StarlikeReport big = starlike_report(scaled, s, 32, 400, 50.0);
    CHECK(big.epsilon == doctest::Approx(s * base.epsilon).epsilon(1e-6));

    // flipping x3 leaves the clearance unchanged
    const SpacelikeGraph flipped{StarlikeRegion::full_plane(),
                                 [](Complex z) { return std::asinh(std::abs(z)); }};
    const StarlikeReport flip = starlike_report(flipped, 1.0, 32, 400, 50.0);
    CHECK(flip.epsilon == doctest::Approx(base.epsilon).epsilon(1e-12));
    CHECK(flip.pass == base.pass);
}

TEST_CASE("clearance is non-decreasing iff n is controlled") {
    // for the catenoid graph n(t) = t^2 - asinh(t)^2 is increasing, and so is f
    const auto prof = lightcone_clearance_profile(catenoid_graph(), 1.1, 300, 20.0);
    for (std::size_t k = 1; k < prof.size(); ++k) {
        CHECK(prof[k].f >= prof[k - 1].f - 1e-12);
        CHECK(prof[k].n >= prof[k - 1].n - 1e-12);
    }
}

TEST_CASE("cone region membership") {
    const LVec3 pts[] = {{3, 4, 2}, {0, 0, 1}, {1, 0, 0}};
    const double alpha = M_PI / 8.0;
    const auto res = cone_region_test(pts, alpha);
    REQUIRE(res.size() == 3);

    CHECK(res[0].inside);
    CHECK(res[0].margin == doctest::Approx(5.0 * std::tan(alpha) - 2.0).epsilon(1e-12));
    CHECK(res[0].lorentz_lower_bound ==
          doctest::Approx(25.0 * (1.0 - std::tan(alpha))).epsilon(1e-12));

    CHECK(!res[1].inside);
    CHECK(res[1].margin == doctest::Approx(-1.0).epsilon(1e-12));

    CHECK(res[2].inside);
    CHECK(res[2].margin == doctest::Approx(std::tan(alpha)).epsilon(1e-12));

    CHECK_THROWS_AS(cone_region_test(pts, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(cone_region_test(pts, M_PI / 4.0), std::invalid_argument);
    CHECK_THROWS_AS(cone_region_test(pts, -0.1), std::invalid_argument);
}

TEST_CASE("region constructors validate input") {
    CHECK_THROWS_AS(StarlikeRegion::disc(0.0), std::invalid_argument);
    CHECK_THROWS_AS(StarlikeRegion::from_table({1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(StarlikeRegion::from_table({1.0, -2.0, 1.0}), std::invalid_argument);
    CHECK(StarlikeRegion::disc(2.0).bounded());
    CHECK(!StarlikeRegion::full_plane().bounded());
    CHECK_THROWS_AS(starlike_report(flat_graph(), 0.0, 16, 50), std::invalid_argument);
    CHECK_THROWS_AS(starlike_report(flat_graph(), 1.0, 4, 50), std::invalid_argument);
}

TEST_CASE("profile csv") {
    std::ostringstream out;
    write_profile_csv(out, flat_graph(), 8, 5, 10.0);
    const std::string text = out.str();
    CHECK(text.rfind("theta,t,u,f,n\n", 0) == 0);
    // header + 8 rays x 5 samples
    std::size_t lines = 0;
    for (char c : text)
        if (c == '\n') ++lines;
    CHECK(lines == 1 + 8 * 5);
}
