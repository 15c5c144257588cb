#include "maxsurf/graph_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace maxsurf {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

StarlikeRegion StarlikeRegion::full_plane() {
    return {[](double) { return kInf; }};
}

StarlikeRegion StarlikeRegion::disc(double radius) {
    if (radius <= 0.0) throw std::invalid_argument("disc radius must be positive");
    return {[radius](double) { return radius; }};
}

StarlikeRegion StarlikeRegion::from_table(std::vector<double> extents) {
    if (extents.size() < 3) throw std::invalid_argument("extent table needs >= 3 entries");
    for (double t : extents)
        if (!(t > 0.0)) throw std::invalid_argument("radial extents must be positive");
    return {[table = std::move(extents)](double theta) {
        const std::size_t n = table.size();
        double x = std::fmod(theta, kTwoPi);
        if (x < 0.0) x += kTwoPi;
        const double pos = x / kTwoPi * static_cast<double>(n);
        const std::size_t i = static_cast<std::size_t>(pos) % n;
        const double frac = pos - std::floor(pos);
        return table[i] * (1.0 - frac) + table[(i + 1) % n] * frac;
    }};
}

bool StarlikeRegion::bounded(int probes) const {
    for (int k = 0; k < probes; ++k)
        if (!std::isfinite(t_theta(kTwoPi * k / probes))) return false;
    return true;
}

std::vector<ProfileSample> lightcone_clearance_profile(const SpacelikeGraph& graph, double theta,
                                                       int samples, double cutoff) {
    if (samples < 2) throw std::invalid_argument("samples must be >= 2");
    const double extent = graph.region.t_theta(theta);
    const bool unbounded = !std::isfinite(extent);
    const double t_max = unbounded ? cutoff : extent;

    std::vector<ProfileSample> out;
    out.reserve(samples);
    for (int s = 1; s <= samples; ++s) {
        double t;
        if (unbounded) {
            // geometric from t_max * q^(samples-1) up to t_max
            const double t_min = t_max * 1e-6;
            t = t_min * std::pow(t_max / t_min, static_cast<double>(s - 1) / (samples - 1));
        } else {
            t = t_max * static_cast<double>(s) / samples;
        }
        const double u = graph.u_polar(t, theta);
        const double f = std::min(std::abs(t - u), std::abs(t + u)) / std::sqrt(2.0);
        out.push_back({t, u, f, t * t - u * u});
    }
    return out;
}

StarlikeReport starlike_report(const SpacelikeGraph& graph, double delta, int rays, int samples,
                               double cutoff) {
    if (rays < 8) throw std::invalid_argument("rays must be >= 8");
    StarlikeReport report;
    report.delta = delta;
    report.epsilon = kInf;
    report.worst_interior_slack = kInf;
    report.worst_monotone_slack = kInf;
    report.properness_trivial = graph.region.bounded();

    double inf_extent = kInf;
    for (int r = 0; r < rays; ++r)
        inf_extent = std::min(inf_extent, graph.region.t_theta(kTwoPi * r / rays));
    if (!(0.0 < delta && delta < inf_extent))
        throw std::invalid_argument("delta must satisfy 0 < delta < inf_theta t_theta");

    bool all_ok = true;
    for (int r = 0; r < rays; ++r) {
        const double theta = kTwoPi * r / rays;
        RayVerdict ray;
        ray.theta = theta;
        const auto profile = lightcone_clearance_profile(graph, theta, samples, cutoff);
        const double extent = graph.region.t_theta(theta);

        double prev_f = -kInf;
        double prev_t = 0.0;
        for (const auto& p : profile) {
            const double slack = p.t - std::abs(p.u);
            const bool boundary = std::isfinite(extent) && p.t >= extent * (1.0 - 1e-12);
            if (slack < ray.worst_interior_slack) {
                ray.worst_interior_slack = slack;
                ray.worst_t = p.t;
            }
            if (boundary && std::abs(slack) <= 1e-9) {
                ++ray.flagged_boundary_samples;  // singular boundary sample, flagged not failed
            } else if (slack <= 0.0) {
                ray.interior_ok = false;
            }
            if (prev_f > -kInf) {
                const double inc = p.f - prev_f;
                if (inc < ray.worst_monotone_slack) ray.worst_monotone_slack = inc;
                if (inc < -1e-9 * (1.0 + std::abs(p.f))) {
                    ray.monotone_ok = false;
                    ray.worst_t = p.t;
                }
            }
            prev_f = p.f;
            prev_t = p.t;
        }
        (void)prev_t;

        // clearance certificate at radius delta
        const double u_delta = graph.u_polar(delta, theta);
        ray.f_delta = std::min(std::abs(delta - u_delta), std::abs(delta + u_delta)) / std::sqrt(2.0);
        report.epsilon = std::min(report.epsilon, ray.f_delta);

        if (ray.worst_interior_slack < report.worst_interior_slack) {
            report.worst_interior_slack = ray.worst_interior_slack;
            report.worst_interior_theta = theta;
            report.worst_interior_t = ray.worst_t;
        }
        if (ray.worst_monotone_slack < report.worst_monotone_slack) {
            report.worst_monotone_slack = ray.worst_monotone_slack;
            report.worst_monotone_theta = theta;
            report.worst_monotone_t = ray.worst_t;
        }
        all_ok = all_ok && ray.interior_ok && ray.monotone_ok;
        report.rays.push_back(ray);
    }

    report.pass = all_ok && report.epsilon > 0.0;
    return report;
}

std::vector<ConePointResult> cone_region_test(std::span<const LVec3> points, double alpha) {
    if (!(0.0 < alpha && alpha < std::numbers::pi / 4.0))
        throw std::invalid_argument("alpha must lie in (0, pi/4)");
    const double tan_a = std::tan(alpha);
    std::vector<ConePointResult> out;
    out.reserve(points.size());
    for (const LVec3& p : points) {
        const double r = planar_norm(p);
        ConePointResult res;
        res.margin = r * tan_a - std::abs(p.x3);
        res.inside = res.margin >= 0.0;
        res.lorentz_lower_bound = r * r * (1.0 - tan_a);
        out.push_back(res);
    }
    return out;
}

void write_profile_csv(std::ostream& out, const SpacelikeGraph& graph, int rays, int samples,
                       double cutoff) {
    out << "theta,t,u,f,n\n";
    for (int r = 0; r < rays; ++r) {
        const double theta = kTwoPi * r / rays;
        for (const auto& p : lightcone_clearance_profile(graph, theta, samples, cutoff))
            out << theta << ',' << p.t << ',' << p.u << ',' << p.f << ',' << p.n << '\n';
    }
}

}  // namespace maxsurf
