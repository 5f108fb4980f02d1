#include "lw/surface.hpp"

#include <cmath>
#include <vector>

namespace lw {

MVec3 gauss_map(const VecJet2& j) {
    const MVec3 n = lorentz_cross(j.xu(), j.xv());
    const double norm = lorentz_norm(n);
    if (norm <= kDegeneracyTol * jet_cross_scale(j))
        throw DegeneratePointError("gauss_map: Xu ^ Xv is numerically lightlike or zero");
    return (1.0 / norm) * n;
}

FundamentalForms fundamental_forms(const VecJet2& j) {
    const MVec3 xu = j.xu(), xv = j.xv();
    const MVec3 n = gauss_map(j);
    FundamentalForms ff;
    ff.E = minkowski_dot(xu, xu);
    ff.F = minkowski_dot(xu, xv);
    ff.G = minkowski_dot(xv, xv);
    ff.e = minkowski_dot(n, j.xuu());
    ff.f = minkowski_dot(n, j.xuv());
    ff.g = minkowski_dot(n, j.xvv());
    ff.W = ff.E * ff.G - ff.F * ff.F;
    return ff;
}

CurvaturePair curvatures(const VecJet2& j) {
    const FundamentalForms ff = fundamental_forms(j);
    const double scale = jet_cross_scale(j);
    if (std::fabs(ff.W) <= kDegeneracyTol * kDegeneracyTol * scale * scale)
        throw DegeneratePointError("curvatures: degenerate metric (W ~ 0)");
    return {0.5 * (ff.e * ff.G - 2.0 * ff.f * ff.F + ff.g * ff.E) / ff.W,
            (ff.e * ff.g - ff.f * ff.f) / ff.W};
}

double weingarten_residual(const CurvaturePair& cp, const WeingartenCoeffs& wc) {
    return wc.a * cp.H + wc.b * cp.K - wc.c;
}

double bracket_P(const VecJet2& j) {
    const MVec3 xu = j.xu(), xv = j.xv();
    const double E = minkowski_dot(xu, xu);
    const double F = minkowski_dot(xu, xv);
    const double G = minkowski_dot(xv, xv);
    return G * det3(xu, xv, j.xuu()) - 2.0 * F * det3(xu, xv, j.xuv()) +
           E * det3(xu, xv, j.xvv());
}

double bracket_Q(const VecJet2& j) {
    const MVec3 xu = j.xu(), xv = j.xv();
    return det3(xu, xv, j.xuu()) * det3(xu, xv, j.xvv()) -
           det3(xu, xv, j.xuv()) * det3(xu, xv, j.xuv());
}

double rationalized_residual(const VecJet2& j, const WeingartenCoeffs& wc, WPower wp) {
    return residual_parts(j, wc, wp).phi;
}

SpacelikeScan spacelike_check(const Surface& s, int nu, int nv) {
    if (nu < 2 || nv < 2) throw PreconditionError("spacelike_check: grid must be at least 2x2");
    SpacelikeScan out{true, std::numeric_limits<double>::infinity()};
    for (int i = 0; i < nu; ++i) {
        const double u = s.domain.umin + (s.domain.umax - s.domain.umin) * i / (nu - 1);
        for (int k = 0; k < nv; ++k) {
            const double v = s.domain.vmin + (s.domain.vmax - s.domain.vmin) * k / (nv - 1);
            const VecJet2 j = s.eval(u, v);
            const MVec3 xu = j.xu(), xv = j.xv();
            const double E = minkowski_dot(xu, xu);
            const double F = minkowski_dot(xu, xv);
            const double G = minkowski_dot(xv, xv);
            const double W = E * G - F * F;
            const double scale = jet_cross_scale(j);
            if (!(W > kDegeneracyTol * kDegeneracyTol * scale * scale)) out.all_spacelike = false;
            out.min_w = std::fmin(out.min_w, W);
        }
    }
    return out;
}

std::optional<Domain> find_spacelike_subgrid(const Surface& s, int n) {
    std::vector<bool> row_ok(static_cast<size_t>(n), true);
    for (int i = 0; i < n; ++i) {
        const double u = s.domain.umin + (s.domain.umax - s.domain.umin) * i / (n - 1);
        for (int k = 0; k < n; ++k) {
            if (!row_ok[k]) continue;
            const double v = s.domain.vmin + (s.domain.vmax - s.domain.vmin) * k / (n - 1);
            const VecJet2 j = s.eval(u, v);
            const MVec3 xu = j.xu(), xv = j.xv();
            const double W = minkowski_dot(xu, xu) * minkowski_dot(xv, xv) -
                             minkowski_dot(xu, xv) * minkowski_dot(xu, xv);
            const double scale = jet_cross_scale(j);
            if (!(W > kDegeneracyTol * kDegeneracyTol * scale * scale)) row_ok[k] = false;
        }
    }
    // longest all-positive run of v-rows, shrunk by one cell on each side
    int best_lo = -1, best_len = 0;
    int run_lo = -1;
    for (int k = 0; k <= n; ++k) {
        if (k < n && row_ok[k]) {
            if (run_lo < 0) run_lo = k;
        } else if (run_lo >= 0) {
            if (k - run_lo > best_len) {
                best_len = k - run_lo;
                best_lo = run_lo;
            }
            run_lo = -1;
        }
    }
    if (best_len < 4) return std::nullopt;
    const double dv = (s.domain.vmax - s.domain.vmin) / (n - 1);
    return Domain{s.domain.umin, s.domain.umax, s.domain.vmin + (best_lo + 1) * dv,
                  s.domain.vmin + (best_lo + best_len - 2) * dv};
}

}  // namespace lw
