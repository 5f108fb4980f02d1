#pragma once

// Minkowski 3-space vector algebra with signature (+, +, -):
//   <u, v> = u1 v1 + u2 v2 - u3 v3.

#include <cmath>
#include <complex>

#include "lw/errors.hpp"

namespace lw {

template <typename T>
struct Vec3T {
    T x1{}, x2{}, x3{};

    friend Vec3T operator+(const Vec3T& a, const Vec3T& b) {
        return {a.x1 + b.x1, a.x2 + b.x2, a.x3 + b.x3};
    }
    friend Vec3T operator-(const Vec3T& a, const Vec3T& b) {
        return {a.x1 - b.x1, a.x2 - b.x2, a.x3 - b.x3};
    }
    friend Vec3T operator*(T s, const Vec3T& v) { return {s * v.x1, s * v.x2, s * v.x3}; }
    friend Vec3T operator*(const Vec3T& v, T s) { return s * v; }
    friend Vec3T operator-(const Vec3T& v) { return {-v.x1, -v.x2, -v.x3}; }
};

using MVec3 = Vec3T<double>;
using MVec3C = Vec3T<std::complex<double>>;

enum class CausalClass { Spacelike, Timelike, Lightlike };

constexpr const char* to_string(CausalClass c) {
    switch (c) {
        case CausalClass::Spacelike: return "spacelike";
        case CausalClass::Timelike: return "timelike";
        case CausalClass::Lightlike: return "lightlike";
    }
    return "?";
}

template <typename T>
constexpr T minkowski_dot(const Vec3T<T>& u, const Vec3T<T>& v) {
    return u.x1 * v.x1 + u.x2 * v.x2 - u.x3 * v.x3;
}

template <typename T>
constexpr T det3(const Vec3T<T>& u, const Vec3T<T>& v, const Vec3T<T>& w) {
    return u.x1 * (v.x2 * w.x3 - v.x3 * w.x2) - u.x2 * (v.x1 * w.x3 - v.x3 * w.x1) +
           u.x3 * (v.x1 * w.x2 - v.x2 * w.x1);
}

// Sum of the absolute values of the six determinant terms; a cancellation-free
// magnitude used for relative thresholds.
inline double det3_abs_bound(const MVec3& u, const MVec3& v, const MVec3& w) {
    return std::fabs(u.x1 * v.x2 * w.x3) + std::fabs(u.x1 * v.x3 * w.x2) +
           std::fabs(u.x2 * v.x1 * w.x3) + std::fabs(u.x2 * v.x3 * w.x1) +
           std::fabs(u.x3 * v.x1 * w.x2) + std::fabs(u.x3 * v.x2 * w.x1);
}

// Lorentzian cross product: the unique w with <w, z> = det(u, v, z) for all z.
// In components the third entry of the Euclidean cross product flips sign.
template <typename T>
constexpr Vec3T<T> lorentz_cross(const Vec3T<T>& u, const Vec3T<T>& v) {
    return {u.x2 * v.x3 - u.x3 * v.x2, u.x3 * v.x1 - u.x1 * v.x3, u.x2 * v.x1 - u.x1 * v.x2};
}

inline double euclid_norm2(const MVec3& v) { return v.x1 * v.x1 + v.x2 * v.x2 + v.x3 * v.x3; }
inline double euclid_norm(const MVec3& v) { return std::sqrt(euclid_norm2(v)); }

// sqrt(|<v, v>|); vanishes exactly on the light cone.
inline double lorentz_norm(const MVec3& v) { return std::sqrt(std::fabs(minkowski_dot(v, v))); }

// Banded classification: |<v,v>| below tol * max(1, |v|_E^2) counts as lightlike.
inline CausalClass causal_character(const MVec3& v, double tol = 1e-10) {
    const double q = minkowski_dot(v, v);
    const double band = tol * std::fmax(1.0, euclid_norm2(v));
    if (q > band) return CausalClass::Spacelike;
    if (q < -band) return CausalClass::Timelike;
    return CausalClass::Lightlike;
}

// A plane is spacelike/timelike/lightlike iff its normal is timelike/spacelike/lightlike.
inline CausalClass plane_character(const MVec3& normal, double tol = 1e-10) {
    if (euclid_norm2(normal) == 0.0) throw DomainError("plane_character: zero normal");
    switch (causal_character(normal, tol)) {
        case CausalClass::Timelike: return CausalClass::Spacelike;
        case CausalClass::Spacelike: return CausalClass::Timelike;
        case CausalClass::Lightlike: return CausalClass::Lightlike;
    }
    return CausalClass::Lightlike;
}

inline bool all_finite(const MVec3& v) {
    return std::isfinite(v.x1) && std::isfinite(v.x2) && std::isfinite(v.x3);
}

}  // namespace lw
