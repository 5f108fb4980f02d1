#pragma once

// Pointwise surface machinery: fundamental forms, Gauss map, mean and Gauss
// curvature, the linear Weingarten residual aH + bK - c, and the rationalized
// residual
//
//     Phi = a^2 P^2 W - 4 (c W^2 - b Q)^2,
//
// where P and Q are the bracket combinations with P = 2 H W^{3/2} and
// Q = K W^2 on spacelike patches. Phi is polynomial in the jet entries, so it
// extends to complexified evaluation points; the coefficient extraction for
// hyperbolic-angle families relies on that.

#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <string>

#include "lw/errors.hpp"
#include "lw/jet.hpp"
#include "lw/lorentz.hpp"

namespace lw {

struct FundamentalForms {
    double E, F, G;  // first fundamental form
    double e, f, g;  // second fundamental form w.r.t. the canonical Gauss map
    double W;        // E G - F^2
};

struct CurvaturePair {
    double H, K;
};

struct WeingartenCoeffs {
    double a, b, c;
};

// How the circles of the foliation enter the parametrization; this decides
// which coefficient basis the rationalized residual expands in.
enum class Foliation {
    Circular,    // cos v / sin v       -> cos(jv), sin(jv)
    Hyperbolic,  // sinh v / cosh v     -> cosh(jv), sinh(jv)
    Parabolic,   // v, v^2              -> v^j
};

struct Domain {
    double umin, umax, vmin, vmax;
};

// An evaluable surface patch. `eval` must be total on the declared domain.
// `eval_at_iv`, when present, evaluates the same analytic parametrization at
// v = i*theta (only the Hyperbolic families need it).
struct Surface {
    Domain domain{};
    Foliation foliation = Foliation::Circular;
    std::string family;
    std::function<VecJet2(double u, double v)> eval;
    std::function<VecJet2C(double u, double theta)> eval_at_iv;
};

// Euclidean magnitude scale of |Xu ^ Xv| used for degeneracy thresholds.
inline double jet_cross_scale(const VecJet2& j) {
    return std::sqrt(euclid_norm2(j.xu()) * euclid_norm2(j.xv()));
}

constexpr double kDegeneracyTol = 1e-12;

// Unit normal Xu ^ Xv / |Xu ^ Xv|; timelike (|G|^2 = -1) on spacelike patches.
MVec3 gauss_map(const VecJet2& j);

FundamentalForms fundamental_forms(const VecJet2& j);

// H = (eG - 2fF + gE) / (2W), K = (eg - f^2) / W with the canonical
// orientation. Requires a non-degenerate metric (|W| above tolerance); both
// signs of W are served since the formulas only need W != 0.
CurvaturePair curvatures(const VecJet2& j);

double weingarten_residual(const CurvaturePair& cp, const WeingartenCoeffs& wc);

double bracket_P(const VecJet2& j);
double bracket_Q(const VecJet2& j);

// Which power of W multiplies the squared mean-curvature bracket. Clearing
// denominators in aH + bK = c forces the single power; the alternative is
// kept so the coefficient oracle can document the choice.
enum class WPower { Single, Squared };

double rationalized_residual(const VecJet2& j, const WeingartenCoeffs& wc,
                             WPower wp = WPower::Single);

struct SpacelikeScan {
    bool all_spacelike;
    double min_w;
};

// W at every node of an (nu x nv) grid over the declared domain.
SpacelikeScan spacelike_check(const Surface& s, int nu, int nv);

// Largest full-width v-band of an n x n scan on which W > 0 at every node,
// shrunk by one grid cell on both sides. Empty when no such band exists.
std::optional<Domain> find_spacelike_subgrid(const Surface& s, int n = 200);

namespace detail {
inline double mag(double x) { return std::fabs(x); }
inline double mag(const std::complex<double>& x) { return std::abs(x); }

template <typename T>
double det3_mag_bound(const Vec3T<T>& u, const Vec3T<T>& v, const Vec3T<T>& w) {
    return mag(u.x1 * v.x2 * w.x3) + mag(u.x1 * v.x3 * w.x2) + mag(u.x2 * v.x1 * w.x3) +
           mag(u.x2 * v.x3 * w.x1) + mag(u.x3 * v.x1 * w.x2) + mag(u.x3 * v.x2 * w.x1);
}
}  // namespace detail

// Everything the coefficient extraction needs from one evaluation point:
// the exact P, Q, W, Phi values plus cancellation-free magnitude bounds that
// give the normalization its scale.
template <typename T>
struct ResidualParts {
    T E, F, G, W;
    T P, Q;
    T phi;
    double p_bound;  // |G||[..uu]| + 2|F||[..uv]| + |E||[..vv]|
    double q_bound;  // |[..uu]||[..vv]| + |[..uv]|^2
};

template <typename T>
ResidualParts<T> residual_parts(const VecJet2T<T>& j, const WeingartenCoeffs& wc,
                                WPower wp = WPower::Single) {
    ResidualParts<T> r;
    const Vec3T<T> xu = j.xu(), xv = j.xv();
    r.E = minkowski_dot(xu, xu);
    r.F = minkowski_dot(xu, xv);
    r.G = minkowski_dot(xv, xv);
    r.W = r.E * r.G - r.F * r.F;
    const T duu = det3(xu, xv, j.xuu());
    const T duv = det3(xu, xv, j.xuv());
    const T dvv = det3(xu, xv, j.xvv());
    r.P = r.G * duu - T(2) * r.F * duv + r.E * dvv;
    r.Q = duu * dvv - duv * duv;
    const T wfac = (wp == WPower::Single) ? r.W : r.W * r.W;
    const T inner = T(wc.c) * r.W * r.W - T(wc.b) * r.Q;
    r.phi = T(wc.a * wc.a) * r.P * r.P * wfac - T(4) * inner * inner;
    using detail::mag;
    r.p_bound = mag(r.G) * mag(duu) + 2 * mag(r.F) * mag(duv) + mag(r.E) * mag(dvv);
    r.q_bound = mag(duu) * mag(dvv) + mag(duv) * mag(duv);
    return r;
}

}  // namespace lw
