#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "maxsurf/catalog.hpp"
#include "maxsurf/io.hpp"
#include "maxsurf/minimal_bridge.hpp"
#include "maxsurf/parabolicity.hpp"

namespace py = pybind11;
using namespace maxsurf;

namespace {

py::tuple vec(const LVec3& v) { return py::make_tuple(v.x1, v.x2, v.x3); }

py::dict mesh_dict(const SurfaceMesh& mesh) {
    py::list positions, normals, params, faces;
    for (const auto& v : mesh.vertices) {
        positions.append(vec(v.position));
        normals.append(vec(v.normal));
        params.append(v.param);
    }
    for (const auto& f : mesh.faces) faces.append(py::make_tuple(f[0], f[1], f[2], f[3]));
    py::dict d;
    d["positions"] = positions;
    d["normals"] = normals;
    d["params"] = params;
    d["faces"] = faces;
    d["n_radial"] = mesh.n_radial;
    d["n_angular"] = mesh.n_angular;
    return d;
}

py::dict superharmonic_dict(const SuperharmonicReport& r) {
    py::dict d;
    d["sign_ok"] = r.sign_ok;
    d["evaluated_nodes"] = r.evaluated_nodes;
    d["max_positive_closed"] = r.max_positive_closed;
    d["max_abs_residual"] = r.max_abs_residual;
    return d;
}

}  // namespace

PYBIND11_MODULE(_maxsurf, m) {
    m.doc() = "Maximal and minimal surfaces from Weierstrass data";

    py::class_<WeierstrassData>(m, "Surface")
        .def_static("from_catalog",
                    [](const std::string& name) { return get_catalog_surface(name).data; })
        .def_static("from_json",
                    [](const std::string& text) { return surface_from_json(Json::parse(text)); })
        .def("to_json", [](const WeierstrassData& d) { return surface_to_json(d).dump(2); })
        .def("dualize", [](const WeierstrassData& d) { return dualize(d); })
        .def_property_readonly(
            "kind",
            [](const WeierstrassData& d) {
                return d.kind == SurfaceKind::Maximal ? "maximal" : "minimal";
            })
        .def("mesh", [](const WeierstrassData& d) { return mesh_dict(integrate_immersion(d)); })
        .def("immersion_at",
             [](const WeierstrassData& d, Complex z) {
                 const PhiTriple phi = make_phi(d);
                 return vec(immersion_at(d, phi, z));
             })
        .def("phi_at",
             [](const WeierstrassData& d, Complex z) {
                 const auto p = make_phi(d)(z);
                 return py::make_tuple(p[0], p[1], p[2]);
             })
        .def("superharmonic",
             [](const WeierstrassData& d, int nr, int na, double mask) {
                 return superharmonic_dict(superharmonic_report(make_chart_grid(d, nr, na, mask)));
             },
             py::arg("n_radial") = 32, py::arg("n_angular") = 64, py::arg("mask") = 2.0)
        .def("classify_loop",
             [](const WeierstrassData& d, double rho) {
                 const auto v = classify_singularity(d, SingularitySite::loop(rho));
                 py::dict out;
                 out["type"] = v.type == SingularityVerdict::Type::BranchPoint ? "branch-point"
                               : v.type == SingularityVerdict::Type::LightlikeLoop
                                   ? "lightlike-loop"
                                   : "regular";
                 out["collapsed"] = v.collapsed;
                 out["conelike"] = v.conelike;
                 out["covering_degree"] = v.covering_degree;
                 return out;
             })
        .def("conjugate_check", [](const WeierstrassData& d, double eps) {
            if (d.kind != SurfaceKind::Minimal)
                throw std::invalid_argument("conjugate_check expects minimal data");
            const MinimalImmersion imm = MinimalImmersion::from_data(d);
            py::dict out;
            try {
                const ConjugateField field = harmonic_conjugate(imm);
                const auto result = bounded_conjugate_criterion(imm, field, eps);
                out["exact"] = true;
                out["pass"] = result.report.pass;
                out["constant"] = result.report.constant;
                out["worst_slack"] = result.report.worst_slack;
            } catch (const NotExact& e) {
                out["exact"] = false;
                out["pass"] = false;
                out["period"] = e.period;
            }
            return out;
        });

    m.def("catalog_names", [] { return catalog_names(); });
    m.def(
        "harmonic_measure",
        [](double fixed, const std::vector<double>& radii, Complex probe) {
            ExhaustionSpec spec;
            spec.fixed_radius = fixed;
            spec.stage_radii = radii;
            spec.probe = probe;
            const auto r = harmonic_measure_sequence(spec);
            py::dict out;
            out["verdict"] = r.verdict;
            out["fit_intercept"] = r.fit_intercept;
            out["limit_estimate"] = r.limit_estimate;
            out["limit_method"] = r.limit_method;
            py::list omegas;
            for (const auto& s : r.stages) omegas.append(s.omega);
            out["omegas"] = omegas;
            return out;
        },
        py::arg("fixed"), py::arg("radii"), py::arg("probe"));
    m.def("stereographic", [](Complex z) { return vec(stereographic(ExtComplex(z))); });
    m.def("dist_to_lightcone",
          [](double x1, double x2, double x3) { return dist_to_lightcone({x1, x2, x3}); });
}
