#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "maxsurf/catalog.hpp"
#include "maxsurf/graph_analysis.hpp"
#include "maxsurf/io.hpp"
#include "maxsurf/minimal_bridge.hpp"
#include "maxsurf/parabolicity.hpp"

namespace {

using namespace maxsurf;

constexpr int kExitPass = 0;
constexpr int kExitInput = 1;
constexpr int kExitFail = 2;

// Relative output paths resolve against MAXSURF_OUTPUT_DIR when set.
std::string resolve_out(const std::string& path) {
    if (path.empty() || path.front() == '/') return path;
    const char* dir = std::getenv("MAXSURF_OUTPUT_DIR");
    if (!dir || !*dir) return path;
    std::string resolved(dir);
    if (resolved.back() != '/') resolved += '/';
    return resolved + path;
}

void emit(const Json& report, const std::string& raw_path) {
    const std::string path = resolve_out(raw_path);
    if (path.empty()) {
        std::cout << report.dump(2) << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << report.dump(2) << '\n';
}

WeierstrassData load_with_overrides(const std::string& surface, int nr, int na) {
    WeierstrassData data = load_surface(surface);
    if (nr > 0) {
        if (nr < 8) throw std::invalid_argument("--nr must be >= 8");
        data.domain.n_radial = nr;
    }
    if (na > 0) {
        if (na < 8) throw std::invalid_argument("--na must be >= 8");
        data.domain.n_angular = na;
    }
    return data;
}

Json starlike_to_json(const StarlikeReport& r) {
    Json j;
    j["pass"] = r.pass;
    j["delta"] = r.delta;
    j["epsilon"] = r.epsilon;
    j["properness_trivial"] = r.properness_trivial;
    j["worst_interior_slack"] = r.worst_interior_slack;
    j["worst_monotone_slack"] = r.worst_monotone_slack;
    Json rays = Json::array();
    for (const auto& ray : r.rays) {
        Json e;
        e["theta"] = ray.theta;
        e["interior_ok"] = ray.interior_ok;
        e["monotone_ok"] = ray.monotone_ok;
        e["f_delta"] = ray.f_delta;
        e["flagged_boundary_samples"] = ray.flagged_boundary_samples;
        rays.push_back(e);
    }
    j["rays"] = rays;
    return j;
}

Json superharmonic_to_json(const SuperharmonicReport& r) {
    Json j;
    j["sign_ok"] = r.sign_ok;
    j["evaluated_nodes"] = r.evaluated_nodes;
    j["max_positive_closed"] = r.max_positive_closed;
    j["max_abs_residual"] = r.max_abs_residual;
    return j;
}

Json parabolicity_to_json(const ParabolicityReport& r) {
    Json j;
    j["verdict"] = r.verdict;
    j["fit_slope"] = r.fit_slope;
    j["fit_intercept"] = r.fit_intercept;
    j["limit_estimate"] = r.limit_estimate;
    j["limit_method"] = r.limit_method;
    Json stages = Json::array();
    for (const auto& s : r.stages) {
        Json e;
        e["radius"] = s.radius;
        e["omega"] = s.omega;
        e["iterations"] = s.iterations;
        stages.push_back(e);
    }
    j["stages"] = stages;
    return j;
}

void write_superharmonic_csv(const std::string& raw_path, const SuperharmonicReport& r) {
    const std::string path = resolve_out(raw_path);
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << "node,re_z,im_z,lap_fd,lap_closed,residual\n";
    for (const auto& e : r.entries)
        out << e.node << ',' << e.z.real() << ',' << e.z.imag() << ',' << e.lap_fd << ','
            << e.lap_closed << ',' << e.residual << '\n';
}

ExtractedGraph extract_for(const WeierstrassData& data, const SurfaceMesh& mesh, Complex center) {
    const PhiTriple phi = make_phi(data);
    std::function<double(Complex)> height;
    if (data.kind == SurfaceKind::Maximal)
        height = [data, phi](Complex z) { return immersion_at(data, phi, z).x3; };
    else
        height = [data, phi](Complex z) { return conjugate_at(data, phi, z); };
    return extract_graph(data, mesh, center, std::move(height));
}

ExhaustionSpec default_exhaustion(const WeierstrassData& data,
                                  const std::vector<double>& radii_flag, double fixed_flag,
                                  Complex probe_flag) {
    ExhaustionSpec spec;
    if (!radii_flag.empty()) {
        spec.stage_radii = radii_flag;
        spec.fixed_radius = fixed_flag > 0.0 ? fixed_flag : 1.0;
        spec.probe = probe_flag != Complex{} ? probe_flag
                                             : Complex(std::sqrt(spec.fixed_radius *
                                                                 spec.stage_radii.front()),
                                                       0.0);
        return spec;
    }
    // Default: exhaust the parameter domain toward its inner end.
    const double r_min = data.domain.sample_r_min();
    const double r_max = data.domain.sample_r_max();
    spec.fixed_radius = fixed_flag > 0.0 ? fixed_flag : std::sqrt(r_min * r_max);
    for (int k = 0; k < 4; ++k) spec.stage_radii.push_back(r_min * std::pow(10.0, -k));
    spec.probe = probe_flag != Complex{}
                     ? probe_flag
                     : Complex(std::sqrt(spec.fixed_radius * spec.stage_radii.front()), 0.0);
    return spec;
}

int run(int argc, char** argv) {
    CLI::App app{"Maximal and minimal surfaces from Weierstrass data"};
    app.require_subcommand(1);

    std::string surface, out_path, csv_path;
    int nr = 0, na = 0;
    double delta = 0.0, alpha = 0.0, epsilon = 0.0, mask = 2.0, fixed = 0.0;
    int rays = 16, samples = 24;
    std::vector<double> radii;
    std::pair<double, double> center{0.0, 0.0};
    std::pair<double, double> probe{0.0, 0.0};
    std::string site_kind, site_where;

    auto add_surface = [&](CLI::App* cmd) {
        cmd->add_option("surface", surface, "catalog name or JSON file")->required();
        cmd->add_option("-o,--output", out_path, "output path (default stdout)");
        cmd->add_option("--nr", nr, "radial resolution override");
        cmd->add_option("--na", na, "angular resolution override");
    };

    auto* mesh_cmd = app.add_subcommand("mesh", "integrate and export an OBJ mesh");
    add_surface(mesh_cmd);

    auto* check = app.add_subcommand("check", "run a verification report");
    check->require_subcommand(1);

    auto* sup = check->add_subcommand("superharmonic", "log-norm superharmonicity report");
    add_surface(sup);
    sup->add_option("--mask", mask, "Lorentzian-norm mask threshold");
    sup->add_option("--csv", csv_path, "per-node residual CSV path");

    auto* star = check->add_subcommand("starlike", "starlike spacelike-graph report");
    add_surface(star);
    star->add_option("--delta", delta, "clearance radius (default: half min extent)");
    star->add_option("--rays", rays, "ray count");
    star->add_option("--samples", samples, "samples per ray");
    star->add_option("--center", center, "graph center in the plane x3=0");

    auto* cone = check->add_subcommand("cone", "cone-region membership report");
    add_surface(cone);
    cone->add_option("--alpha", alpha, "half-angle in (0, pi/4)")->required();

    auto* para = check->add_subcommand("parabolicity", "harmonic-measure exhaustion report");
    add_surface(para);
    para->add_option("--radii", radii, "stage radii")->delimiter(',');
    para->add_option("--fixed", fixed, "fixed boundary radius");
    para->add_option("--probe", probe, "probe point");

    auto* conj = check->add_subcommand("conjugate", "bounded-conjugate criterion report");
    add_surface(conj);
    conj->add_option("--epsilon", epsilon, "clearance epsilon")->required();

    auto* pipe = check->add_subcommand("pipeline",
                                       "starlike + superharmonic + harmonic-measure pipeline");
    add_surface(pipe);
    pipe->add_option("--delta", delta, "clearance radius (default: half min extent)");
    pipe->add_option("--mask", mask, "Lorentzian-norm mask threshold");
    pipe->add_option("--center", center, "graph center in the plane x3=0");
    pipe->add_option("--radii", radii, "exhaustion stage radii")->delimiter(',');
    pipe->add_option("--fixed", fixed, "fixed boundary radius");

    auto* cls = app.add_subcommand("classify", "classify a boundary singularity");
    add_surface(cls);
    cls->add_option("--site", site_kind, "loop | point")->required();
    cls->add_option("--where", site_where, "loop radius, or re,im for a point")->required();

    auto* dual = app.add_subcommand("dualize", "emit the dual surface JSON");
    add_surface(dual);

    auto* cat = app.add_subcommand("catalog", "catalog operations");
    cat->add_subcommand("list", "list built-in surfaces");

    CLI11_PARSE(app, argc, argv);

    if (cat->parsed()) {
        for (const auto& name : catalog_names()) std::cout << name << '\n';
        return kExitPass;
    }

    const WeierstrassData data = load_with_overrides(surface, nr, na);

    if (mesh_cmd->parsed()) {
        const SurfaceMesh mesh = integrate_immersion(data);
        const std::string resolved = resolve_out(out_path);
        if (resolved.empty()) {
            write_obj(std::cout, mesh);
        } else {
            std::ofstream out(resolved);
            if (!out) throw std::invalid_argument("cannot write " + resolved);
            write_obj(out, mesh);
        }
        return kExitPass;
    }

    if (dual->parsed()) {
        emit(surface_to_json(dualize(data)), out_path);
        return kExitPass;
    }

    if (cls->parsed()) {
        SingularitySite site = [&] {
            if (site_kind == "loop") return SingularitySite::loop(std::stod(site_where));
            if (site_kind == "point") {
                std::istringstream in(site_where);
                double re = 0.0, im = 0.0;
                char comma = ',';
                in >> re;
                if (in.peek() == ',') in >> comma >> im;
                return SingularitySite::boundary_point(Complex(re, im));
            }
            throw std::invalid_argument("--site must be loop or point");
        }();
        const SingularityVerdict verdict = classify_singularity(data, site);
        Json j;
        j["type"] = verdict.type == SingularityVerdict::Type::BranchPoint ? "branch-point"
                    : verdict.type == SingularityVerdict::Type::LightlikeLoop ? "lightlike-loop"
                                                                              : "regular";
        j["collapsed"] = verdict.collapsed;
        j["conelike"] = verdict.conelike;
        j["covering_degree"] = verdict.covering_degree;
        emit(j, out_path);
        return kExitPass;
    }

    if (sup->parsed()) {
        const ChartGrid grid =
            make_chart_grid(data, data.domain.n_radial, data.domain.n_angular, mask);
        const SuperharmonicReport report = superharmonic_report(grid);
        if (!csv_path.empty()) write_superharmonic_csv(csv_path, report);
        emit(superharmonic_to_json(report), out_path);
        return report.sign_ok ? kExitPass : kExitFail;
    }

    if (star->parsed()) {
        const SurfaceMesh mesh = integrate_immersion(data);
        const ExtractedGraph g = extract_for(data, mesh, Complex(center.first, center.second));
        const double d = delta > 0.0 ? delta : 0.5 * g.min_extent;
        const StarlikeReport report = starlike_report(g.graph, d, rays, samples);
        emit(starlike_to_json(report), out_path);
        return report.pass ? kExitPass : kExitFail;
    }

    if (cone->parsed()) {
        const SurfaceMesh mesh = integrate_immersion(data);
        std::vector<LVec3> points;
        points.reserve(mesh.vertices.size());
        for (const auto& v : mesh.vertices) points.push_back(v.position);
        const auto results = cone_region_test(points, alpha);
        int inside = 0;
        double min_margin = 1e300;
        for (const auto& r : results) {
            inside += r.inside ? 1 : 0;
            min_margin = std::min(min_margin, r.margin);
        }
        Json j;
        j["alpha"] = alpha;
        j["points"] = static_cast<int>(results.size());
        j["inside"] = inside;
        j["min_margin"] = min_margin;
        j["pass"] = inside == static_cast<int>(results.size());
        emit(j, out_path);
        return j["pass"].get<bool>() ? kExitPass : kExitFail;
    }

    if (para->parsed()) {
        const ExhaustionSpec spec =
            default_exhaustion(data, radii, fixed, Complex(probe.first, probe.second));
        const ParabolicityReport report = harmonic_measure_sequence(spec);
        emit(parabolicity_to_json(report), out_path);
        return report.verdict == "inconclusive" ? kExitFail : kExitPass;
    }

    if (conj->parsed()) {
        if (data.kind != SurfaceKind::Minimal)
            throw std::invalid_argument("check conjugate expects minimal data");
        const MinimalImmersion immersion = MinimalImmersion::from_data(data);
        Json j;
        try {
            const ConjugateField field = harmonic_conjugate(immersion);
            const BoundedConjugateResult result =
                bounded_conjugate_criterion(immersion, field, epsilon);
            j["exact"] = true;
            j["pass"] = result.report.pass;
            j["epsilon"] = result.report.epsilon;
            j["constant"] = result.report.constant;
            j["worst_slack"] = result.report.worst_slack;
            j["violating_nodes"] = static_cast<int>(result.report.violating_nodes.size());
            j["dual_norm_margin"] = result.report.dual_norm_margin;
            if (result.dual) j["dual"] = surface_to_json(*result.dual);
            emit(j, out_path);
            return result.report.pass ? kExitPass : kExitFail;
        } catch (const NotExact& e) {
            j["exact"] = false;
            j["pass"] = false;
            j["error"] = "NotExact";
            j["period"] = {e.period.real(), e.period.imag()};
            emit(j, out_path);
            return kExitFail;
        }
    }

    if (pipe->parsed()) {
        Json j;
        bool pass = false;
        if (data.kind == SurfaceKind::Minimal) {
            const MinimalImmersion immersion = MinimalImmersion::from_data(data);
            const MinimalPipelineReport report = minimal_starlike_pipeline(immersion, delta);
            j["graph_ok"] = report.graph_ok;
            j["starlike"] = starlike_to_json(report.starlike);
            j["superharmonic"] = superharmonic_to_json(report.superharmonic);
            j["pass"] = report.pass;
            pass = report.pass;
        } else {
            const SurfaceMesh mesh = integrate_immersion(data);
            const ExtractedGraph g = extract_for(data, mesh, Complex(center.first, center.second));
            const double d = delta > 0.0 ? delta : 0.5 * g.min_extent;
            const StarlikeReport starlike = starlike_report(g.graph, d, rays, samples);
            const ChartGrid grid =
                make_chart_grid(data, data.domain.n_radial, data.domain.n_angular, mask);
            const SuperharmonicReport sup_report = superharmonic_report(grid);
            const ExhaustionSpec spec = default_exhaustion(data, radii, fixed, Complex{});
            const ParabolicityReport para_report = harmonic_measure_sequence(spec);
            j["starlike"] = starlike_to_json(starlike);
            j["superharmonic"] = superharmonic_to_json(sup_report);
            j["parabolicity"] = parabolicity_to_json(para_report);
            pass = starlike.pass && sup_report.sign_ok &&
                   para_report.verdict == "parabolic-evidence";
            j["pass"] = pass;
        }
        emit(j, out_path);
        return pass ? kExitPass : kExitFail;
    }

    return kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const GraphExtractionFailure& e) {
        std::cerr << "check failed: " << e.what() << '\n';
        return kExitFail;
    } catch (const SolverFailure& e) {
        std::cerr << "check failed: " << e.what() << '\n';
        return kExitFail;
    } catch (const MaskError& e) {
        std::cerr << "check failed: " << e.what() << '\n';
        return kExitFail;
    } catch (const InconclusiveClassification& e) {
        std::cerr << "check failed: " << e.what() << '\n';
        return kExitFail;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
}
