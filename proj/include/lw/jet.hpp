#pragma once

// Forward-mode second-order jets in two variables (u, v): a value together
// with du, dv, duu, duv, dvv. Propagation is exact (no finite differences),
// which is all the curvature formulas need.
//
// The scalar type is a template parameter so the same arithmetic can run on
// std::complex<double>; the coefficient extraction for hyperbolic-angle
// parametrizations evaluates the residual at v = i*theta.

#include <cmath>
#include <complex>
#include <numbers>
#include <type_traits>

#include "lw/errors.hpp"
#include "lw/lorentz.hpp"

namespace lw {

template <typename T>
struct ScalarJet2T {
    T val{}, du{}, dv{}, duu{}, duv{}, dvv{};

    friend ScalarJet2T operator+(const ScalarJet2T& a, const ScalarJet2T& b) {
        return {a.val + b.val, a.du + b.du, a.dv + b.dv, a.duu + b.duu, a.duv + b.duv,
                a.dvv + b.dvv};
    }
    friend ScalarJet2T operator-(const ScalarJet2T& a, const ScalarJet2T& b) {
        return {a.val - b.val, a.du - b.du, a.dv - b.dv, a.duu - b.duu, a.duv - b.duv,
                a.dvv - b.dvv};
    }
    friend ScalarJet2T operator-(const ScalarJet2T& a) {
        return {-a.val, -a.du, -a.dv, -a.duu, -a.duv, -a.dvv};
    }
    friend ScalarJet2T operator*(const ScalarJet2T& a, const ScalarJet2T& b) {
        return {a.val * b.val,
                a.du * b.val + a.val * b.du,
                a.dv * b.val + a.val * b.dv,
                a.duu * b.val + T(2) * a.du * b.du + a.val * b.duu,
                a.duv * b.val + a.du * b.dv + a.dv * b.du + a.val * b.duv,
                a.dvv * b.val + T(2) * a.dv * b.dv + a.val * b.dvv};
    }
    // Quotient rule via q = a/b, a'' = q''b + 2q'b' + qb''.
    friend ScalarJet2T operator/(const ScalarJet2T& a, const ScalarJet2T& b) {
        if (b.val == T(0)) throw DomainError("jet division by zero-valued jet");
        ScalarJet2T q;
        q.val = a.val / b.val;
        q.du = (a.du - q.val * b.du) / b.val;
        q.dv = (a.dv - q.val * b.dv) / b.val;
        q.duu = (a.duu - T(2) * q.du * b.du - q.val * b.duu) / b.val;
        q.duv = (a.duv - q.du * b.dv - q.dv * b.du - q.val * b.duv) / b.val;
        q.dvv = (a.dvv - T(2) * q.dv * b.dv - q.val * b.dvv) / b.val;
        return q;
    }

    friend ScalarJet2T operator*(T s, const ScalarJet2T& a) {
        return {s * a.val, s * a.du, s * a.dv, s * a.duu, s * a.duv, s * a.dvv};
    }
    friend ScalarJet2T operator*(const ScalarJet2T& a, T s) { return s * a; }
    friend ScalarJet2T operator+(const ScalarJet2T& a, T s) {
        return {a.val + s, a.du, a.dv, a.duu, a.duv, a.dvv};
    }
    friend ScalarJet2T operator+(T s, const ScalarJet2T& a) { return a + s; }
    friend ScalarJet2T operator-(const ScalarJet2T& a, T s) { return a + (-s); }
    friend ScalarJet2T operator-(T s, const ScalarJet2T& a) { return (-a) + s; }
};

using ScalarJet2 = ScalarJet2T<double>;
using ScalarJet2C = ScalarJet2T<std::complex<double>>;

template <typename T>
ScalarJet2T<T> jet_constant(T c) {
    return {c, T(0), T(0), T(0), T(0), T(0)};
}
template <typename T>
ScalarJet2T<T> jet_var_u(T u0) {
    return {u0, T(1), T(0), T(0), T(0), T(0)};
}
template <typename T>
ScalarJet2T<T> jet_var_v(T v0) {
    return {v0, T(0), T(1), T(0), T(0), T(0)};
}

inline bool all_finite(const ScalarJet2& a) {
    return std::isfinite(a.val) && std::isfinite(a.du) && std::isfinite(a.dv) &&
           std::isfinite(a.duu) && std::isfinite(a.duv) && std::isfinite(a.dvv);
}

namespace detail {

// Chain rule through second order from f(a.val), f'(a.val), f''(a.val).
template <typename T>
ScalarJet2T<T> compose(const ScalarJet2T<T>& a, T f, T d1, T d2) {
    return {f,
            d1 * a.du,
            d1 * a.dv,
            d2 * a.du * a.du + d1 * a.duu,
            d2 * a.du * a.dv + d1 * a.duv,
            d2 * a.dv * a.dv + d1 * a.dvv};
}

inline void require_away_from_pole(double x, double offset, const char* fn) {
    // poles of tan at pi/2 + k pi (offset = pi/2), of cot at k pi (offset = 0)
    const double d = std::remainder(x - offset, std::numbers::pi);
    if (std::fabs(d) < 1e-8) throw DomainError(std::string(fn) + ": argument within 1e-8 of a pole");
}

}  // namespace detail

template <typename T>
ScalarJet2T<T> sin(const ScalarJet2T<T>& a) {
    using std::cos;
    using std::sin;
    return detail::compose(a, sin(a.val), cos(a.val), -sin(a.val));
}
template <typename T>
ScalarJet2T<T> cos(const ScalarJet2T<T>& a) {
    using std::cos;
    using std::sin;
    return detail::compose(a, cos(a.val), -sin(a.val), -cos(a.val));
}
template <typename T>
ScalarJet2T<T> sinh(const ScalarJet2T<T>& a) {
    using std::cosh;
    using std::sinh;
    return detail::compose(a, sinh(a.val), cosh(a.val), sinh(a.val));
}
template <typename T>
ScalarJet2T<T> cosh(const ScalarJet2T<T>& a) {
    using std::cosh;
    using std::sinh;
    return detail::compose(a, cosh(a.val), sinh(a.val), cosh(a.val));
}
template <typename T>
ScalarJet2T<T> exp(const ScalarJet2T<T>& a) {
    using std::exp;
    const T e = exp(a.val);
    return detail::compose(a, e, e, e);
}

inline ScalarJet2 tan(const ScalarJet2& a) {
    detail::require_away_from_pole(a.val, std::numbers::pi / 2, "tan");
    const double t = std::tan(a.val);
    const double d1 = 1.0 + t * t;
    return detail::compose(a, t, d1, 2.0 * t * d1);
}

inline ScalarJet2 cot(const ScalarJet2& a) {
    detail::require_away_from_pole(a.val, 0.0, "cot");
    const double c = 1.0 / std::tan(a.val);
    const double d1 = -(1.0 + c * c);
    return detail::compose(a, c, d1, -2.0 * c * d1);
}

inline ScalarJet2 sqrt(const ScalarJet2& a) {
    if (!(a.val > 0.0)) throw DomainError("jet sqrt: value must be positive");
    const double s = std::sqrt(a.val);
    return detail::compose(a, s, 0.5 / s, -0.25 / (s * a.val));
}

// x^k for integer and half-integer k only (covers r^2, r^4, W^{3/2}).
inline ScalarJet2 pow(const ScalarJet2& a, double k) {
    const double twok = 2.0 * k;
    if (twok != std::nearbyint(twok))
        throw DomainError("jet pow: exponent must be integer or half-integer");
    const bool integral = (k == std::nearbyint(k));
    if (integral) {
        if (a.val == 0.0 && k < 0.0) throw DomainError("jet pow: zero base with negative exponent");
    } else if (!(a.val > 0.0)) {
        throw DomainError("jet pow: half-integer exponent needs positive base");
    }
    const double f = std::pow(a.val, k);
    const double d1 = k * std::pow(a.val, k - 1.0);
    const double d2 = k * (k - 1.0) * std::pow(a.val, k - 2.0);
    return detail::compose(a, f, d1, d2);
}

// Vector-valued jet: position and all first/second partials of X(u, v).
template <typename T>
struct VecJet2T {
    ScalarJet2T<T> x1, x2, x3;

    Vec3T<T> pos() const { return {x1.val, x2.val, x3.val}; }
    Vec3T<T> xu() const { return {x1.du, x2.du, x3.du}; }
    Vec3T<T> xv() const { return {x1.dv, x2.dv, x3.dv}; }
    Vec3T<T> xuu() const { return {x1.duu, x2.duu, x3.duu}; }
    Vec3T<T> xuv() const { return {x1.duv, x2.duv, x3.duv}; }
    Vec3T<T> xvv() const { return {x1.dvv, x2.dvv, x3.dvv}; }
};

using VecJet2 = VecJet2T<double>;
using VecJet2C = VecJet2T<std::complex<double>>;

inline bool all_finite(const VecJet2& j) {
    return all_finite(j.x1) && all_finite(j.x2) && all_finite(j.x3);
}

}  // namespace lw
