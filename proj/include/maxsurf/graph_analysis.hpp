#pragma once

#include <functional>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "maxsurf/lorentz.hpp"

namespace maxsurf {

/// Planar region starlike about the origin, described by its radial extent.
struct StarlikeRegion {
    /// t_theta(theta) in (0, +inf]; +inf marks an unbounded ray.
    std::function<double(double)> t_theta;

    static StarlikeRegion full_plane();
    static StarlikeRegion disc(double radius);
    static StarlikeRegion from_table(std::vector<double> extents);  // piecewise linear in theta

    bool bounded(int probes = 64) const;
};

/// Height function u over a starlike region; u(0) = 0 normalization expected.
struct SpacelikeGraph {
    StarlikeRegion region;
    std::function<double(Complex)> u;

    double u_polar(double t, double theta) const { return u(std::polar(t, theta)); }
    LVec3 embed(double t, double theta) const {
        const Complex z = std::polar(t, theta);
        return {z.real(), z.imag(), u(z)};
    }
};

struct ProfileSample {
    double t;
    double u;
    double f;  // Euclidean distance to the light cone
    double n;  // Lorentzian norm t^2 - u^2
};

/// f_theta(t) = min(|t-u|, |t+u|)/sqrt(2) along the ray of direction theta.
/// Geometric sampling when the ray is unbounded (up to cutoff), linear
/// otherwise.
std::vector<ProfileSample> lightcone_clearance_profile(const SpacelikeGraph& graph, double theta,
                                                       int samples, double cutoff = 1e3);

struct RayVerdict {
    double theta = 0.0;
    bool interior_ok = true;    // |u(t)| < t for t > 0
    bool monotone_ok = true;    // f non-decreasing
    double f_delta = 0.0;       // clearance at radius delta
    double worst_interior_slack = std::numeric_limits<double>::infinity();  // min over t of t - |u|
    double worst_monotone_slack = std::numeric_limits<double>::infinity();  // min forward increment
    double worst_t = 0.0;
    int flagged_boundary_samples = 0;  // |u| = t within 1e-9 (non-strict, flagged not failed)
};

struct StarlikeReport {
    bool pass = false;
    double delta = 0.0;
    double epsilon = 0.0;  // min over rays of f_theta(delta)
    bool properness_trivial = false;  // bounded region: compact graph
    std::vector<RayVerdict> rays;
    double worst_interior_slack = 0.0;
    double worst_interior_theta = 0.0, worst_interior_t = 0.0;
    double worst_monotone_slack = 0.0;
    double worst_monotone_theta = 0.0, worst_monotone_t = 0.0;
};

/// Checks the three starlike-graph conditions on sampled rays:
/// (i) strict spacelike position |u| < t, (ii) f_theta non-decreasing,
/// (iii) a positive clearance certificate epsilon = min_theta f_theta(delta).
StarlikeReport starlike_report(const SpacelikeGraph& graph, double delta, int rays, int samples,
                               double cutoff = 1e3);

struct ConePointResult {
    bool inside = false;
    double margin = 0.0;              // ||pi0 x||_0 tan(alpha) - |x3|
    double lorentz_lower_bound = 0.0; // ||pi0 x||_0^2 (1 - tan(alpha))
};

/// Membership in the cone region W_alpha = { |x3| <= ||(x1,x2)||_0 tan(alpha) }.
std::vector<ConePointResult> cone_region_test(std::span<const LVec3> points, double alpha);

/// CSV profile: theta,t,u,f,n rows over a fan of rays.
void write_profile_csv(std::ostream& out, const SpacelikeGraph& graph, int rays, int samples,
                       double cutoff = 1e3);

}  // namespace maxsurf
