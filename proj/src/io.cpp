#include "maxsurf/io.hpp"

#include <fstream>
#include <ostream>

#include "maxsurf/catalog.hpp"

namespace maxsurf {

namespace {

std::string shape_name(ParamDomain::Shape shape) {
    switch (shape) {
        case ParamDomain::Shape::Disc: return "disc";
        case ParamDomain::Shape::Annulus: return "annulus";
        case ParamDomain::Shape::PuncturedPlane: return "punctured-plane";
        case ParamDomain::Shape::Plane: return "plane";
    }
    return "";
}

Json domain_to_json(const ParamDomain& d) {
    Json j;
    j["shape"] = shape_name(d.shape);
    switch (d.shape) {
        case ParamDomain::Shape::Disc:
            j["radius"] = d.radius;
            break;
        case ParamDomain::Shape::Annulus:
            j["r_in"] = d.r_in;
            j["r_out"] = d.r_out;
            j["outer_included"] = d.outer_included;
            break;
        case ParamDomain::Shape::PuncturedPlane:
            j["window_r_in"] = d.window_r_in;
            j["window_r_out"] = d.window_r_out;
            break;
        case ParamDomain::Shape::Plane:
            j["window_r_out"] = d.window_r_out;
            break;
    }
    j["n_radial"] = d.n_radial;
    j["n_angular"] = d.n_angular;
    return j;
}

ParamDomain domain_from_json(const Json& j) {
    const std::string shape = j.at("shape").get<std::string>();
    const int nr = j.value("n_radial", 32);
    const int na = j.value("n_angular", 64);
    if (shape == "disc") return ParamDomain::disc(j.at("radius").get<double>(), nr, na);
    if (shape == "annulus")
        return ParamDomain::annulus(j.at("r_in").get<double>(), j.at("r_out").get<double>(),
                                    j.value("outer_included", true), nr, na);
    if (shape == "punctured-plane")
        return ParamDomain::punctured_plane(j.value("window_r_in", 1e-2),
                                            j.value("window_r_out", 1e2), nr, na);
    if (shape == "plane") return ParamDomain::plane(j.value("window_r_out", 1e2), nr, na);
    throw std::invalid_argument("unknown domain shape: " + shape);
}

}  // namespace

Json surface_to_json(const WeierstrassData& data) {
    Json j;
    j["kind"] = data.kind == SurfaceKind::Maximal ? "maximal" : "minimal";
    j["domain"] = domain_to_json(data.domain);
    j["g"] = data.g.text();
    j["phi3"] = data.f.text();
    j["basepoint"] = {data.basepoint.real(), data.basepoint.imag()};
    j["base_value"] = {data.base_value.x1, data.base_value.x2, data.base_value.x3};
    return j;
}

WeierstrassData surface_from_json(const Json& j) {
    const std::string kind_text = j.at("kind").get<std::string>();
    SurfaceKind kind;
    if (kind_text == "maximal")
        kind = SurfaceKind::Maximal;
    else if (kind_text == "minimal")
        kind = SurfaceKind::Minimal;
    else
        throw std::invalid_argument("kind must be \"maximal\" or \"minimal\"");

    const auto& bp = j.at("basepoint");
    const auto& bv = j.at("base_value");
    if (bp.size() != 2 || bv.size() != 3)
        throw std::invalid_argument("basepoint needs 2 entries, base_value needs 3");
    return make_weierstrass(kind, domain_from_json(j.at("domain")),
                            j.at("g").get<std::string>(), j.at("phi3").get<std::string>(),
                            Complex(bp[0].get<double>(), bp[1].get<double>()),
                            {bv[0].get<double>(), bv[1].get<double>(), bv[2].get<double>()});
}

WeierstrassData load_surface(const std::string& name_or_path) {
    for (const std::string& name : catalog_names())
        if (name == name_or_path) return get_catalog_surface(name).data;
    std::ifstream in(name_or_path);
    if (!in) throw std::invalid_argument("no catalog surface or readable file: " + name_or_path);
    Json j;
    in >> j;
    return surface_from_json(j);
}

void write_obj(std::ostream& out, const SurfaceMesh& mesh) {
    out << "# maxsurf mesh, " << mesh.vertices.size() << " vertices, " << mesh.faces.size()
        << " faces\n";
    for (const auto& v : mesh.vertices)
        out << "v " << v.position.x1 << ' ' << v.position.x2 << ' ' << v.position.x3 << '\n';
    for (const auto& v : mesh.vertices) {
        const double n = euclid_norm(v.normal);
        if (n < 1e-14)
            out << "vn 0 0 0\n";
        else
            out << "vn " << v.normal.x1 / n << ' ' << v.normal.x2 / n << ' ' << v.normal.x3 / n
                << '\n';
    }
    for (const auto& f : mesh.faces) {
        out << 'f';
        for (int idx : f) out << ' ' << idx + 1 << "//" << idx + 1;
        out << '\n';
    }
}

}  // namespace maxsurf
