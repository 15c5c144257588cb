#pragma once

#include <optional>
#include <span>
#include <vector>

#include "maxsurf/graph_analysis.hpp"
#include "maxsurf/parabolicity.hpp"
#include "maxsurf/weierstrass.hpp"

namespace maxsurf {

/// Minimal immersion Y in Euclidean 3-space with its integrated mesh.
struct MinimalImmersion {
    WeierstrassData data;
    SurfaceMesh mesh;

    static MinimalImmersion from_data(const WeierstrassData& data);
};

struct NotExact : std::runtime_error {
    Complex period;  // the offending Im-period carrier (full complex cycle integral)
    NotExact(const std::string& what, Complex p) : std::runtime_error(what), period(p) {}
};

/// Harmonic conjugate X3 of Y3 together with the additive constant C.
struct ConjugateField {
    std::vector<double> x3;  // per mesh vertex, X3(basepoint) = 0
    double constant = 0.0;
    bool exact = false;
    std::vector<Complex> period_defects;  // cycle integrals of phi3 (empty when simply connected)
};

/// X3 = Im of the tree integral of phi3. Throws NotExact when a domain cycle
/// carries a nonzero Im-period (|Im period| >= 1e-8).
ConjugateField harmonic_conjugate(const MinimalImmersion& immersion);

/// X3 at an arbitrary point, along the canonical basepoint path.
double conjugate_at(const WeierstrassData& data, const PhiTriple& phi, Complex z);

struct PsiCheck {
    double residual = 0.0;             // max over the two grid directions
    double gauss_map_deviation = 0.0;  // cross-product normal vs stereographic image of g
    bool gauss_sign_mismatch = false;  // N3 sign disagreement, reported not flipped
};

/// Compares N2 dY1 - N1 dY2 against dX3 by centered differences of step h in
/// both grid directions; N comes from the normalized cross product of the
/// coordinate tangents and is cross-checked against the sphere image of g.
PsiCheck psi_check(const MinimalImmersion& immersion, Complex z, double h);

struct BoundedConjugateReport {
    bool pass = false;
    double epsilon = 0.0;
    double constant = 0.0;     // optimal additive constant C
    double worst_slack = 0.0;  // min over nodes of ||pi0 Y||_0 - eps - |X3 + C|
    std::vector<int> violating_nodes;
    double dual_norm_margin = 0.0;  // min over nodes of <X,X> - eps(2||pi0 Y||_0 - eps)
    bool dual_bound_ok = false;
};

/// Core inequality check |X3(p) + C| <= ||pi0 Y(p)||_0 - eps at the supplied
/// nodes, with C chosen to minimize the worst violation.
BoundedConjugateReport bounded_conjugate_criterion(std::span<const LVec3> y,
                                                   std::span<const double> x3, double eps);

/// Mesh-node version; on PASS carries the dual maximal data (f -> -i f, so the
/// dual third coordinate equals +X3).
struct BoundedConjugateResult {
    BoundedConjugateReport report;
    std::optional<WeierstrassData> dual;
};
BoundedConjugateResult bounded_conjugate_criterion(const MinimalImmersion& immersion,
                                                   const ConjugateField& conj, double eps);

struct GraphExtractionFailure : std::runtime_error {
    int overlapping_cells;
    GraphExtractionFailure(const std::string& what, int cells)
        : std::runtime_error(what), overlapping_cells(cells) {}
};

/// Spacelike graph recovered from an integrated mesh: the mesh is projected
/// to {x3=0} around `center`, injectivity is certified by uniform quad
/// orientation, the starlike region comes from the projected boundary rings,
/// and heights are evaluated by Newton inversion of the planar projection.
struct ExtractedGraph {
    SpacelikeGraph graph;  // self-contained; owns copies of the data
    int overlapping_cells = 0;
    double min_extent = 0.0;  // smallest radial extent of the region
};

/// `height(z)` supplies the graph value at parameter z (e.g. the immersion's
/// third coordinate, or the harmonic conjugate for minimal data). Throws
/// GraphExtractionFailure when the projection is not injective.
ExtractedGraph extract_graph(const WeierstrassData& data, const SurfaceMesh& mesh, Complex center,
                             std::function<double(Complex)> height);

struct MinimalPipelineReport {
    bool pass = false;
    bool graph_ok = false;
    int overlapping_cells = 0;
    double delta = 0.0;
    StarlikeReport starlike;
    SuperharmonicReport superharmonic;
};

/// Builds X3 (simply connected domain required), forms the dual maximal graph
/// (Y1, Y2, X3), and runs the starlike and superharmonicity checks on it.
/// delta <= 0 picks half the smallest projected boundary extent. Throws
/// GraphExtractionFailure when the projected mesh is not injective.
MinimalPipelineReport minimal_starlike_pipeline(const MinimalImmersion& immersion,
                                                double delta = 0.0, int rays = 16,
                                                int samples = 24, int chart_n = 24);

/// Dual maximal data with f -> -i f (third coordinate +X3 rather than -X3).
WeierstrassData dual_with_conjugate_height(const WeierstrassData& data);

}  // namespace maxsurf
