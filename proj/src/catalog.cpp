#include "maxsurf/catalog.hpp"

#include <cmath>

namespace maxsurf {

namespace {

CatalogEntry make_plane() {
    CatalogEntry e;
    e.name = "plane";
    e.kind = SurfaceKind::Maximal;
    e.data = make_weierstrass(SurfaceKind::Maximal, ParamDomain::plane(1e2), "0.2", "1",
                              Complex(1.0, 0.0), {0.0, 0.0, 0.0});
    e.reference = [](Complex z) -> LVec3 {
        const Complex w = z - Complex(1.0, 0.0);
        return {-2.4 * w.imag(), -2.6 * w.real(), w.real()};
    };
    e.description = "spacelike plane (constant Gauss map)";
    return e;
}

CatalogEntry make_lorentzian_catenoid() {
    CatalogEntry e;
    e.name = "lorentzian-catenoid";
    e.kind = SurfaceKind::Maximal;
    e.data = make_weierstrass(SurfaceKind::Maximal, ParamDomain::annulus(0.05, 1.0), "z", "1/z",
                              Complex(0.5, 0.0), {0.0, 0.75, std::log(0.5)});
    e.reference = [](Complex z) -> LVec3 {
        const double rho = std::abs(z), theta = std::arg(z);
        const double c = 0.5 * (rho - 1.0 / rho);
        return {c * std::sin(theta), -c * std::cos(theta), std::log(rho)};
    };
    SingularityVerdict v;
    v.type = SingularityVerdict::Type::LightlikeLoop;
    v.collapsed = true;
    v.conelike = true;
    v.covering_degree = 1;
    e.singularities.push_back({SingularitySite::loop(1.0), v});
    e.expected_type = "parabolic-evidence";
    e.description = "entire maximal graph with a conelike singularity at the origin";
    return e;
}

CatalogEntry make_enneper() {
    CatalogEntry e;
    e.name = "enneper";
    e.kind = SurfaceKind::Minimal;
    const Complex p0(0.1, 0.0);
    auto closed_form = [](Complex z) -> LVec3 {
        const Complex a = z - z * z * z / 3.0;
        const Complex b = z + z * z * z / 3.0;
        const Complex c = z * z;
        return {0.5 * a.real(), -0.5 * b.imag(), 0.5 * c.real()};
    };
    e.data = make_weierstrass(SurfaceKind::Minimal, ParamDomain::disc(0.5), "z", "z", p0,
                              closed_form(p0));
    e.reference = closed_form;
    e.description = "Enneper piece, a simply connected minimal graph near the origin";
    return e;
}

CatalogEntry make_minimal_catenoid() {
    CatalogEntry e;
    e.name = "minimal-catenoid";
    e.kind = SurfaceKind::Minimal;
    auto closed_form = [](Complex z) -> LVec3 {
        const Complex inv = 1.0 / z;
        return {-0.5 * (z + inv).real(), -0.5 * (z - inv).imag(), std::log(std::abs(z))};
    };
    e.data = make_weierstrass(SurfaceKind::Minimal, ParamDomain::annulus(0.05, 1.0), "z", "1/z",
                              Complex(0.5, 0.0), closed_form(Complex(0.5, 0.0)));
    e.reference = closed_form;
    e.conjugate_exact = false;  // Im of the phi3 cycle period is 2 pi
    e.description = "minimal catenoid; psi is closed but not exact";
    return e;
}

}  // namespace

const std::vector<std::string>& catalog_names() {
    static const std::vector<std::string> names{"plane", "lorentzian-catenoid", "enneper",
                                                "minimal-catenoid"};
    return names;
}

CatalogEntry get_catalog_surface(const std::string& name) {
    if (name == "plane") return make_plane();
    if (name == "lorentzian-catenoid") return make_lorentzian_catenoid();
    if (name == "enneper") return make_enneper();
    if (name == "minimal-catenoid") return make_minimal_catenoid();
    throw UnknownSurface("unknown catalog surface: " + name);
}

double catenoid_graph_height(double r) { return -std::asinh(r); }

}  // namespace maxsurf
