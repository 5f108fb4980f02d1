#pragma once

// Shared helpers for the test suites: seeded RNG, random Minkowski vectors,
// Lorentz isometries, and a finite-difference probe for jet checks.

#include <array>
#include <cmath>
#include <functional>
#include <random>

#include "lw/jet.hpp"
#include "lw/lorentz.hpp"

namespace lwtest {

using rng_t = std::mt19937_64;

inline double uniform(rng_t& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline lw::MVec3 random_vec(rng_t& rng, double lo = -2.0, double hi = 2.0) {
    return {uniform(rng, lo, hi), uniform(rng, lo, hi), uniform(rng, lo, hi)};
}

// Row-major 3x3 linear map; composition of boosts and rotations stays here.
struct Mat3 {
    std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

    lw::MVec3 apply(const lw::MVec3& v) const {
        return {m[0] * v.x1 + m[1] * v.x2 + m[2] * v.x3,
                m[3] * v.x1 + m[4] * v.x2 + m[5] * v.x3,
                m[6] * v.x1 + m[7] * v.x2 + m[8] * v.x3};
    }
    friend Mat3 operator*(const Mat3& a, const Mat3& b) {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0;
                for (int k = 0; k < 3; ++k) s += a.m[3 * i + k] * b.m[3 * k + j];
                r.m[3 * i + j] = s;
            }
        return r;
    }
};

// Boost of rapidity phi in the (x1, x3) plane.
inline Mat3 boost_x1(double phi) {
    Mat3 b;
    b.m = {std::cosh(phi), 0, std::sinh(phi), 0, 1, 0, std::sinh(phi), 0, std::cosh(phi)};
    return b;
}

// Boost of rapidity phi in the (x2, x3) plane.
inline Mat3 boost_x2(double phi) {
    Mat3 b;
    b.m = {1, 0, 0, 0, std::cosh(phi), std::sinh(phi), 0, std::sinh(phi), std::cosh(phi)};
    return b;
}

// Spatial rotation about the x3 axis.
inline Mat3 rotation_x3(double theta) {
    Mat3 r;
    r.m = {std::cos(theta), -std::sin(theta), 0, std::sin(theta), std::cos(theta), 0, 0, 0, 1};
    return r;
}

inline Mat3 random_isometry(rng_t& rng, double max_rapidity) {
    return rotation_x3(uniform(rng, 0, 6.28)) * boost_x1(uniform(rng, -max_rapidity, max_rapidity)) *
           boost_x2(uniform(rng, -max_rapidity, max_rapidity)) * rotation_x3(uniform(rng, 0, 6.28));
}

// Central differences of a plain-value function, for validating jet slots.
struct FdDerivs {
    double du, dv, duu, duv, dvv;
};

inline FdDerivs central_differences(const std::function<double(double, double)>& f, double u,
                                    double v, double h = 1e-5) {
    FdDerivs d;
    d.du = (f(u + h, v) - f(u - h, v)) / (2 * h);
    d.dv = (f(u, v + h) - f(u, v - h)) / (2 * h);
    d.duu = (f(u + h, v) - 2 * f(u, v) + f(u - h, v)) / (h * h);
    d.dvv = (f(u, v + h) - 2 * f(u, v) + f(u, v - h)) / (h * h);
    d.duv = (f(u + h, v + h) - f(u + h, v - h) - f(u - h, v + h) + f(u - h, v - h)) / (4 * h * h);
    return d;
}

inline double rel_err(double got, double want, double floor = 1.0) {
    return std::fabs(got - want) / std::fmax(std::fabs(want), floor);
}

}  // namespace lwtest
