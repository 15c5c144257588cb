#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

namespace maxsurf {

using Complex = std::complex<double>;

/// Point or vector of Lorentz-Minkowski 3-space. x3 is the timelike axis.
struct LVec3 {
    double x1 = 0.0;
    double x2 = 0.0;
    double x3 = 0.0;

    friend LVec3 operator+(const LVec3& a, const LVec3& b) {
        return {a.x1 + b.x1, a.x2 + b.x2, a.x3 + b.x3};
    }
    friend LVec3 operator-(const LVec3& a, const LVec3& b) {
        return {a.x1 - b.x1, a.x2 - b.x2, a.x3 - b.x3};
    }
    friend LVec3 operator*(double s, const LVec3& v) {
        return {s * v.x1, s * v.x2, s * v.x3};
    }
    friend bool operator==(const LVec3& a, const LVec3& b) {
        return a.x1 == b.x1 && a.x2 == b.x2 && a.x3 == b.x3;
    }
};

enum class CausalClass { Spacelike, Timelike, Lightlike };

/// <a,b> = a1*b1 + a2*b2 - a3*b3.
inline double minkowski_inner(const LVec3& a, const LVec3& b) {
    return a.x1 * b.x1 + a.x2 * b.x2 - a.x3 * b.x3;
}

inline double euclid_inner(const LVec3& a, const LVec3& b) {
    return a.x1 * b.x1 + a.x2 * b.x2 + a.x3 * b.x3;
}

inline double euclid_norm(const LVec3& v) { return std::sqrt(euclid_inner(v, v)); }

/// Euclidean norm of the projection to {x3=0}.
inline double planar_norm(const LVec3& v) { return std::hypot(v.x1, v.x2); }

/// Zero vector classifies spacelike. The zero test is exact on the computed
/// inner product; callers needing tolerance pre-round their inputs.
CausalClass causal_character(const LVec3& v);

/// Euclidean distance from p to the light cone C0 = {x1^2+x2^2 = x3^2}.
double dist_to_lightcone(const LVec3& p);

/// Extended complex plane: a finite value or the point at infinity.
struct ExtComplex {
    Complex value{};
    bool infinite = false;

    ExtComplex() = default;
    ExtComplex(Complex v) : value(v) {}
    static ExtComplex infinity() {
        ExtComplex e;
        e.infinite = true;
        return e;
    }
};

/// Stereographic parameterization of the hyperbolic sphere H^2
/// (||sigma(z)||^2 = -1); |z| < 1 lands in the lower sheet H^2_-.
/// Throws std::domain_error on |z| = 1.
LVec3 stereographic(const ExtComplex& z);

/// Inverse of stereographic; requires ||p||^2 = -1 (checked loosely).
ExtComplex stereographic_inv(const LVec3& p);

/// Image of z on the Euclidean unit sphere S^2 under the stereographic
/// projection from the north pole (Gauss map convention for minimal surfaces).
LVec3 euclid_sphere_point(const ExtComplex& z);

}  // namespace maxsurf
