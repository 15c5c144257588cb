#include "maxsurf/parabolicity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace maxsurf {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

// ---------------------------------------------------------------------------
// Chart construction
// ---------------------------------------------------------------------------

namespace {

void fill_frame(const WeierstrassData& data, const PhiTriple& phi, ChartNode& node) {
    const Complex gz = data.g(node.z);
    const double ga = std::abs(gz);
    if (data.kind == SurfaceKind::Maximal && std::abs(ga - 1.0) < 1e-12) {
        node.singular = true;
        return;
    }
    const auto p = phi(node.z);
    node.X_u = {p[0].real(), p[1].real(), p[2].real()};
    node.X_v = {-p[0].imag(), -p[1].imag(), -p[2].imag()};
    const double fa = std::abs(data.f(node.z));
    const double factor = data.kind == SurfaceKind::Maximal ? (1.0 / ga - ga) : (1.0 / ga + ga);
    node.lambda_sq = 0.25 * fa * fa * factor * factor;
    node.N0 = data.kind == SurfaceKind::Maximal ? stereographic(ExtComplex(gz))
                                                : euclid_sphere_point(ExtComplex(gz));
}

}  // namespace

ChartGrid make_chart_grid(const WeierstrassData& data, int n_radial, int n_angular,
                          double mask_threshold) {
    WeierstrassData d = data;
    d.domain.n_radial = n_radial;
    d.domain.n_angular = n_angular;
    const SurfaceMesh mesh = integrate_immersion(d);
    const PhiTriple phi = make_phi(d);

    ChartGrid grid;
    grid.coords = ChartGrid::Coords::LogPolar;
    grid.nu = n_radial + 1;
    grid.nv = n_angular;
    grid.du = (std::log(mesh.radii.back()) - std::log(mesh.radii.front())) / n_radial;
    grid.dv = kTwoPi / n_angular;
    grid.mask_threshold = mask_threshold;
    grid.nodes.resize(grid.nu * grid.nv);

    for (int i = 0; i < grid.nu; ++i) {
        for (int j = 0; j < grid.nv; ++j) {
            ChartNode& node = grid.nodes[grid.index(i, j)];
            const MeshVertex& v = mesh.at(i, j);
            node.z = v.param;
            node.X = v.position;
            fill_frame(d, phi, node);
            node.masked = !node.singular && minkowski_inner(node.X, node.X) > mask_threshold;
        }
    }
    return grid;
}

ChartGrid make_rect_chart(const WeierstrassData& data, Complex center, double halfwidth, int n,
                          double mask_threshold) {
    if (!data.domain.simply_connected())
        throw std::invalid_argument("rectangular charts require a simply connected domain");
    const double h = 2.0 * halfwidth / n;
    const PhiTriple phi = make_phi(data);
    const expr::AnalyticFn* fns[3] = {&phi.phi1, &phi.phi2, &phi.phi3};

    ChartGrid grid;
    grid.coords = ChartGrid::Coords::Rectangular;
    grid.nu = n + 1;
    grid.nv = n + 1;
    grid.du = h;
    grid.dv = h;
    grid.mask_threshold = mask_threshold;
    grid.nodes.resize(grid.nu * grid.nv);

    auto node_z = [&](int i, int j) {
        return center + Complex((i - n / 2.0) * h, (j - n / 2.0) * h);
    };
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
            if (!data.domain.is_interior(node_z(i, j)))
                throw std::invalid_argument("rectangular chart leaves the parameter domain");

    // Spanning tree: basepoint -> center node, then along the center row,
    // then up/down each column.
    const int ic = n / 2, jc = n / 2;
    std::array<Complex, 3> seg{};
    for (int c = 0; c < 3; ++c)
        seg[c] = quadrature::segment_integral(*fns[c], data.basepoint, node_z(ic, jc));

    std::vector<std::array<Complex, 3>> row(grid.nu);
    row[ic] = {};
    for (int i = ic + 1; i <= n; ++i) {
        row[i] = row[i - 1];
        for (int c = 0; c < 3; ++c)
            row[i][c] += quadrature::segment_integral(*fns[c], node_z(i - 1, jc), node_z(i, jc));
    }
    for (int i = ic - 1; i >= 0; --i) {
        row[i] = row[i + 1];
        for (int c = 0; c < 3; ++c)
            row[i][c] += quadrature::segment_integral(*fns[c], node_z(i + 1, jc), node_z(i, jc));
    }

    for (int i = 0; i <= n; ++i) {
        auto store = [&](int j, const std::array<Complex, 3>& acc) {
            ChartNode& node = grid.nodes[grid.index(i, j)];
            node.z = node_z(i, j);
            node.X = data.base_value +
                     LVec3{(seg[0] + acc[0]).real(), (seg[1] + acc[1]).real(), (seg[2] + acc[2]).real()};
            fill_frame(data, phi, node);
            node.masked = !node.singular && minkowski_inner(node.X, node.X) > mask_threshold;
        };
        std::array<Complex, 3> acc = row[i];
        store(jc, acc);
        for (int j = jc + 1; j <= n; ++j) {
            for (int c = 0; c < 3; ++c)
                acc[c] += quadrature::segment_integral(*fns[c], node_z(i, j - 1), node_z(i, j));
            store(j, acc);
        }
        acc = row[i];
        for (int j = jc - 1; j >= 0; --j) {
            for (int c = 0; c < 3; ++c)
                acc[c] += quadrature::segment_integral(*fns[c], node_z(i, j + 1), node_z(i, j));
            store(j, acc);
        }
    }
    return grid;
}

// ---------------------------------------------------------------------------
// Superharmonicity
// ---------------------------------------------------------------------------

SuperharmonicReport superharmonic_report(const ChartGrid& grid) {
    SuperharmonicReport report;
    report.max_positive_closed = -1e300;

    auto masked = [&](int i, int j) -> const ChartNode* {
        if (i < 0 || i >= grid.nu) return nullptr;
        if (grid.periodic_v())
            j = (j % grid.nv + grid.nv) % grid.nv;
        else if (j < 0 || j >= grid.nv)
            return nullptr;
        const ChartNode& n = grid.nodes[grid.index(i, j)];
        return n.masked ? &n : nullptr;
    };
    auto log_q = [](const ChartNode& n) { return std::log(minkowski_inner(n.X, n.X)); };

    for (int i = 0; i < grid.nu; ++i) {
        for (int j = 0; j < grid.nv; ++j) {
            const ChartNode* c = masked(i, j);
            if (!c) continue;
            const ChartNode* e = masked(i + 1, j);
            const ChartNode* w = masked(i - 1, j);
            const ChartNode* nn = masked(i, j + 1);
            const ChartNode* ss = masked(i, j - 1);
            if (!e || !w || !nn || !ss) continue;

            const double hc = log_q(*c);
            const double lap_grid = (log_q(*e) - 2.0 * hc + log_q(*w)) / (grid.du * grid.du) +
                                    (log_q(*nn) - 2.0 * hc + log_q(*ss)) / (grid.dv * grid.dv);
            const double q = minkowski_inner(c->X, c->X);
            const double xn = minkowski_inner(c->X, c->N0);
            SuperharmonicEntry entry;
            entry.node = grid.index(i, j);
            entry.z = c->z;
            entry.lap_fd = lap_grid * grid.laplacian_scale(*c);
            entry.lap_closed = -4.0 * c->lambda_sq * xn * xn / (q * q);
            entry.residual = entry.lap_fd - entry.lap_closed;
            report.max_abs_residual = std::max(report.max_abs_residual, std::abs(entry.residual));
            report.max_positive_closed = std::max(report.max_positive_closed, entry.lap_closed);
            report.entries.push_back(entry);
        }
    }
    if (report.entries.empty())
        throw MaskError("no masked node has a full 5-point stencil inside the mask");
    report.evaluated_nodes = static_cast<int>(report.entries.size());
    report.sign_ok = report.max_positive_closed <= 1e-12;
    return report;
}

TangentDecomposition tangent_decomposition_check(const ChartGrid& grid, int node) {
    const ChartNode& n = grid.nodes.at(node);
    if (!n.masked || n.singular) throw MaskError("node is not a masked regular node");
    const double lam2 = n.lambda_sq;
    if (lam2 < 1e-14) throw DegenerateFrame("degenerate frame in tangent decomposition");

    const double xu = minkowski_inner(n.X, n.X_u);
    const double xv = minkowski_inner(n.X, n.X_v);
    const double xn = minkowski_inner(n.X, n.N0);
    const LVec3 recon = (xu / lam2) * n.X_u + (xv / lam2) * n.X_v + (-xn) * n.N0;
    const double q = minkowski_inner(n.X, n.X);
    const double q_recon = (xu * xu + xv * xv) / lam2 - xn * xn;

    TangentDecomposition out;
    out.vector_residual = euclid_norm(recon - n.X) / (1.0 + euclid_norm(n.X));
    out.scalar_residual = std::abs(q_recon - q) / (1.0 + std::abs(q));
    return out;
}

// ---------------------------------------------------------------------------
// Conjugate-gradient Dirichlet solver
// ---------------------------------------------------------------------------

namespace {

struct CgOutcome {
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
};

CgOutcome conjugate_gradient(std::size_t n,
                             const std::function<void(const std::vector<double>&, std::vector<double>&)>& apply,
                             const std::vector<double>& b, std::vector<double>& x, double tol,
                             int max_iter) {
    std::vector<double> r = b, p, Ap(n);
    x.assign(n, 0.0);
    p = r;
    double rr = 0.0;
    for (double v : r) rr += v * v;
    double b_norm = std::sqrt(rr);
    const double stop = tol * std::max(1.0, b_norm);

    CgOutcome out;
    for (int it = 0; it < max_iter; ++it) {
        if (std::sqrt(rr) <= stop) {
            out.converged = true;
            break;
        }
        apply(p, Ap);
        double pAp = 0.0;
        for (std::size_t i = 0; i < n; ++i) pAp += p[i] * Ap[i];
        const double alpha = rr / pAp;
        double rr_new = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * Ap[i];
            rr_new += r[i] * r[i];
        }
        const double beta = rr_new / rr;
        for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
        rr = rr_new;
        out.iterations = it + 1;
    }
    if (std::sqrt(rr) <= stop) out.converged = true;
    out.residual = std::sqrt(rr);
    return out;
}

void finish_result(DirichletResult& res, const std::vector<double>& boundary_vals,
                   const std::vector<double>& interior_vals) {
    res.boundary_min = *std::min_element(boundary_vals.begin(), boundary_vals.end());
    res.boundary_max = *std::max_element(boundary_vals.begin(), boundary_vals.end());
    res.interior_min = interior_vals.empty()
                           ? res.boundary_min
                           : *std::min_element(interior_vals.begin(), interior_vals.end());
    res.interior_max = interior_vals.empty()
                           ? res.boundary_max
                           : *std::max_element(interior_vals.begin(), interior_vals.end());
    res.max_principle_ok = res.interior_min >= res.boundary_min - 1e-9 &&
                           res.interior_max <= res.boundary_max + 1e-9;
}

}  // namespace

DirichletResult solve_dirichlet_annulus(double r_in, double r_out, int n_s, int n_theta,
                                        const std::function<double(double)>& inner_bc,
                                        const std::function<double(double)>& outer_bc,
                                        double tol) {
    if (!(0.0 < r_in && r_in < r_out)) throw std::invalid_argument("bad annulus radii");
    if (n_s < 4 || n_theta < 4) throw std::invalid_argument("grid too coarse");
    const double ds = (std::log(r_out) - std::log(r_in)) / n_s;
    const double dth = kTwoPi / n_theta;
    const double ratio = (ds * ds) / (dth * dth);

    const int rows = n_s - 1;  // interior rings
    const std::size_t unknowns = static_cast<std::size_t>(rows) * n_theta;
    auto idx = [&](int i, int j) { return static_cast<std::size_t>(i - 1) * n_theta + j; };

    std::vector<double> inner(n_theta), outer(n_theta);
    for (int j = 0; j < n_theta; ++j) {
        inner[j] = inner_bc(dth * j);
        outer[j] = outer_bc(dth * j);
    }

    // Scaled 5-point operator: A u = -(u_E - 2u + u_W) - ratio*(u_N - 2u + u_S).
    auto apply = [&](const std::vector<double>& u, std::vector<double>& out) {
        for (int i = 1; i <= rows; ++i) {
            for (int j = 0; j < n_theta; ++j) {
                const double c = u[idx(i, j)];
                const double e = i + 1 <= rows ? u[idx(i + 1, j)] : 0.0;
                const double w = i - 1 >= 1 ? u[idx(i - 1, j)] : 0.0;
                const double nn = u[idx(i, (j + 1) % n_theta)];
                const double ss = u[idx(i, (j - 1 + n_theta) % n_theta)];
                out[idx(i, j)] = -(e - 2.0 * c + w) - ratio * (nn - 2.0 * c + ss);
            }
        }
    };
    std::vector<double> b(unknowns, 0.0);
    for (int j = 0; j < n_theta; ++j) {
        b[idx(1, j)] += inner[j];
        b[idx(rows, j)] += outer[j];
    }

    std::vector<double> x;
    const int max_iter = 40 * (n_s + n_theta) + 2000;
    const CgOutcome cg = conjugate_gradient(unknowns, apply, b, x, tol, max_iter);

    DirichletResult res;
    res.residual = cg.residual;
    res.iterations = cg.iterations;
    res.converged = cg.converged;
    res.values.resize(static_cast<std::size_t>(n_s + 1) * n_theta);
    for (int j = 0; j < n_theta; ++j) {
        res.values[j] = inner[j];
        res.values[static_cast<std::size_t>(n_s) * n_theta + j] = outer[j];
    }
    for (int i = 1; i <= rows; ++i)
        for (int j = 0; j < n_theta; ++j)
            res.values[static_cast<std::size_t>(i) * n_theta + j] = x[idx(i, j)];

    std::vector<double> bvals = inner;
    bvals.insert(bvals.end(), outer.begin(), outer.end());
    finish_result(res, bvals, x);
    return res;
}

double annulus_value_at(const DirichletResult& sol, double r_in, double r_out, int n_s,
                        int n_theta, Complex probe) {
    const double s0 = std::log(r_in), s1 = std::log(r_out);
    const double ds = (s1 - s0) / n_s;
    const double dth = kTwoPi / n_theta;
    const double s = std::log(std::abs(probe));
    double th = std::arg(probe);
    if (th < 0.0) th += kTwoPi;
    double fi = (s - s0) / ds;
    fi = std::clamp(fi, 0.0, static_cast<double>(n_s));
    const double fj = th / dth;
    const int i0 = std::min(static_cast<int>(fi), n_s - 1);
    const int j0 = static_cast<int>(fj) % n_theta;
    const double a = fi - i0, bfrac = fj - std::floor(fj);
    auto v = [&](int i, int j) {
        return sol.values[static_cast<std::size_t>(i) * n_theta + (j % n_theta)];
    };
    return (1.0 - a) * ((1.0 - bfrac) * v(i0, j0) + bfrac * v(i0, j0 + 1)) +
           a * ((1.0 - bfrac) * v(i0 + 1, j0) + bfrac * v(i0 + 1, j0 + 1));
}

DirichletResult solve_dirichlet_rect(double x0, double y0, double x1, double y1, int nx, int ny,
                                     const std::function<double(double, double)>& bc,
                                     double tol) {
    if (!(x0 < x1 && y0 < y1) || nx < 4 || ny < 4) throw std::invalid_argument("bad rectangle");
    const double hx = (x1 - x0) / nx, hy = (y1 - y0) / ny;
    const double ratio = (hx * hx) / (hy * hy);
    const int rows = nx - 1, cols = ny - 1;
    const std::size_t unknowns = static_cast<std::size_t>(rows) * cols;
    auto idx = [&](int i, int j) { return static_cast<std::size_t>(i - 1) * cols + (j - 1); };
    auto gx = [&](int i) { return x0 + hx * i; };
    auto gy = [&](int j) { return y0 + hy * j; };

    auto bvalue = [&](int i, int j) { return bc(gx(i), gy(j)); };
    auto apply = [&](const std::vector<double>& u, std::vector<double>& out) {
        for (int i = 1; i <= rows; ++i) {
            for (int j = 1; j <= cols; ++j) {
                const double c = u[idx(i, j)];
                const double e = i + 1 <= rows ? u[idx(i + 1, j)] : 0.0;
                const double w = i - 1 >= 1 ? u[idx(i - 1, j)] : 0.0;
                const double nn = j + 1 <= cols ? u[idx(i, j + 1)] : 0.0;
                const double ss = j - 1 >= 1 ? u[idx(i, j - 1)] : 0.0;
                out[idx(i, j)] = -(e - 2.0 * c + w) - ratio * (nn - 2.0 * c + ss);
            }
        }
    };
    std::vector<double> b(unknowns, 0.0);
    for (int j = 1; j <= cols; ++j) {
        b[idx(1, j)] += bvalue(0, j);
        b[idx(rows, j)] += bvalue(nx, j);
    }
    for (int i = 1; i <= rows; ++i) {
        b[idx(i, 1)] += ratio * bvalue(i, 0);
        b[idx(i, cols)] += ratio * bvalue(i, ny);
    }

    std::vector<double> x;
    const CgOutcome cg = conjugate_gradient(unknowns, apply, b, x, tol, 40 * (nx + ny) + 2000);

    DirichletResult res;
    res.residual = cg.residual;
    res.iterations = cg.iterations;
    res.converged = cg.converged;
    res.values.resize(static_cast<std::size_t>(nx + 1) * (ny + 1));
    std::vector<double> bvals;
    for (int i = 0; i <= nx; ++i) {
        for (int j = 0; j <= ny; ++j) {
            const bool boundary = i == 0 || i == nx || j == 0 || j == ny;
            double v;
            if (boundary) {
                v = bvalue(i, j);
                bvals.push_back(v);
            } else {
                v = x[idx(i, j)];
            }
            res.values[static_cast<std::size_t>(i) * (ny + 1) + j] = v;
        }
    }
    finish_result(res, bvals, x);
    return res;
}

// ---------------------------------------------------------------------------
// Harmonic measure
// ---------------------------------------------------------------------------

namespace {

struct LinearFit {
    double slope = 0.0, intercept = 0.0;
};

LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    LinearFit fit;
    const double denom = n * sxx - sx * sx;
    if (std::abs(denom) > 1e-300) {
        fit.slope = (n * sxy - sx * sy) / denom;
        fit.intercept = (sy - fit.slope * sx) / n;
    } else {
        fit.intercept = sy / n;
    }
    return fit;
}

}  // namespace

ParabolicityReport harmonic_measure_sequence(const ExhaustionSpec& spec) {
    ParabolicityReport report;
    const std::size_t n = spec.stage_radii.size();
    if (n < 3) {
        report.verdict = "inconclusive";
        return report;
    }

    // All stages on one side of the fixed circle, strictly nested.
    std::vector<double> moduli;
    bool nested = true;
    const bool outward = spec.stage_radii.front() > spec.fixed_radius;
    for (double R : spec.stage_radii) {
        if ((R > spec.fixed_radius) != outward || R == spec.fixed_radius) nested = false;
        moduli.push_back(std::abs(std::log(R / spec.fixed_radius)));
    }
    for (std::size_t k = 0; k + 1 < n && nested; ++k)
        if (moduli[k + 1] <= moduli[k] * (1.0 + 1e-12)) nested = false;

    for (double R : spec.stage_radii) {
        const double r_lo = std::min(spec.fixed_radius, R);
        const double r_hi = std::max(spec.fixed_radius, R);
        auto zero = [](double) { return 0.0; };
        auto one = [](double) { return 1.0; };
        const DirichletResult sol =
            outward ? solve_dirichlet_annulus(r_lo, r_hi, spec.n_s, spec.n_theta, zero, one,
                                              spec.solver_tol)
                    : solve_dirichlet_annulus(r_lo, r_hi, spec.n_s, spec.n_theta, one, zero,
                                              spec.solver_tol);
        if (!sol.converged)
            throw SolverFailure("Dirichlet solve did not converge at stage R = " + std::to_string(R),
                                sol.residual);
        StageResult stage;
        stage.radius = R;
        stage.omega =
            annulus_value_at(sol, r_lo, r_hi, spec.n_s, spec.n_theta, spec.probe);
        stage.residual = sol.residual;
        stage.iterations = sol.iterations;
        report.stages.push_back(stage);
    }

    std::vector<double> x, omega;
    for (std::size_t k = 0; k < n; ++k) {
        x.push_back(1.0 / moduli[k]);
        omega.push_back(report.stages[k].omega);
    }
    const LinearFit fit = least_squares(x, omega);
    report.fit_slope = fit.slope;
    report.fit_intercept = fit.intercept;

    if (!nested) {
        report.verdict = "inconclusive";
        return report;
    }

    bool decreasing = true;
    for (std::size_t k = 0; k + 1 < n; ++k)
        if (omega[k + 1] > omega[k] + 1e-8) decreasing = false;

    // Does the conformal modulus of the exhausted annuli keep growing, or is
    // the exhaustion stalling against a finite ideal boundary?
    const double gap_first = moduli[1] - moduli[0];
    const double gap_last = moduli[n - 1] - moduli[n - 2];
    const bool growing_modulus = gap_last >= 0.5 * gap_first;

    // Aitken delta-squared limit estimate from the last three stages.
    double aitken = omega[n - 1];
    bool aitken_ok = false;
    {
        const double d1 = omega[n - 2] - omega[n - 3];
        const double d2 = omega[n - 1] - omega[n - 2];
        if (std::abs(d2 - d1) > 1e-14) {
            aitken = omega[n - 1] - d2 * d2 / (d2 - d1);
            aitken_ok = true;
        }
    }

    const double hyperbolic_floor = 10.0 * spec.solver_tol;
    if (decreasing && growing_modulus && fit.intercept <= 1e-3) {
        report.verdict = "parabolic-evidence";
        report.limit_estimate = std::max(0.0, fit.intercept);
        report.limit_method = "fit-intercept";
    } else if (decreasing && !growing_modulus && aitken_ok && aitken >= hyperbolic_floor) {
        report.verdict = "hyperbolic-evidence";
        report.limit_estimate = aitken;
        report.limit_method = "aitken";
    } else if (decreasing && !growing_modulus && omega[n - 1] >= hyperbolic_floor) {
        report.verdict = "hyperbolic-evidence";
        report.limit_estimate = omega[n - 1];
        report.limit_method = "last-stage";
    } else {
        report.verdict = "inconclusive";
        report.limit_estimate = aitken_ok ? aitken : omega[n - 1];
        report.limit_method = aitken_ok ? "aitken" : "last-stage";
    }
    return report;
}

}  // namespace maxsurf
