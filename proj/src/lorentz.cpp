#include "maxsurf/lorentz.hpp"

namespace maxsurf {

CausalClass causal_character(const LVec3& v) {
    const double q = minkowski_inner(v, v);
    if (q > 0.0) return CausalClass::Spacelike;
    if (q < 0.0) return CausalClass::Timelike;
    if (v.x1 == 0.0 && v.x2 == 0.0 && v.x3 == 0.0) return CausalClass::Spacelike;
    return CausalClass::Lightlike;
}

double dist_to_lightcone(const LVec3& p) {
    // In the (r, x3) half-plane the cone is the pair of diagonals r = |x3|;
    // the planar distance to them is also the spatial distance.
    const double r = planar_norm(p);
    return std::abs(r - std::abs(p.x3)) / std::sqrt(2.0);
}

LVec3 stereographic(const ExtComplex& z) {
    if (z.infinite) return {0.0, 0.0, 1.0};
    const double n = std::norm(z.value);
    if (n == 1.0) throw std::domain_error("stereographic: |z| = 1 is not in the domain");
    const double d = 1.0 - n;
    return {-2.0 * z.value.imag() / d, 2.0 * z.value.real() / d, (n + 1.0) / (n - 1.0)};
}

ExtComplex stereographic_inv(const LVec3& p) {
    const double q = minkowski_inner(p, p);
    if (std::abs(q + 1.0) > 1e-6)
        throw std::domain_error("stereographic_inv: point is not on H^2");
    if (p.x1 == 0.0 && p.x2 == 0.0 && p.x3 == 1.0) return ExtComplex::infinity();
    // x3 = (|z|^2+1)/(|z|^2-1)  =>  1 - |z|^2 = -2/(x3-1).
    const double d = -2.0 / (p.x3 - 1.0);
    return ExtComplex(Complex(p.x2 * d / 2.0, -p.x1 * d / 2.0));
}

LVec3 euclid_sphere_point(const ExtComplex& z) {
    if (z.infinite) return {0.0, 0.0, 1.0};
    const double n = std::norm(z.value);
    const double d = 1.0 + n;
    return {2.0 * z.value.real() / d, 2.0 * z.value.imag() / d, (n - 1.0) / d};
}

}  // namespace maxsurf
