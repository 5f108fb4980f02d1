#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lw/catalog.hpp"
#include "lw/surface.hpp"
#include "support.hpp"

using namespace lw;

namespace {

VecJet2 plane_jet(double u, double v) {
    return {jet_var_u(u), jet_var_v(v), jet_constant(0.0)};
}

VecJet2 graph_jet(double u, double v) {
    const ScalarJet2 uj = jet_var_u(u), vj = jet_var_v(v);
    return {uj, vj, 0.1 * (uj * uj + vj * vj)};
}

Surface unit_plane() {
    Surface s;
    s.domain = {-1, 1, -1, 1};
    s.eval = [](double u, double v) { return plane_jet(u, v); };
    s.family = "plane";
    return s;
}

// steep-radius flat instance; spacelike on the full period
Surface flat_spacelike_instance() {
    FlatParams p;
    p.f1 = 0.2;
    p.g1 = 0.1;
    p.r0 = 1;
    p.r1 = 1.5;
    return flat_family(CausalClass::Spacelike, p, {0, 1, 0, 2 * std::numbers::pi});
}

VecJet2 apply_isometry(const lwtest::Mat3& L, const MVec3& shift, const VecJet2& j) {
    auto tov = [&](const MVec3& m) { return m; };
    const MVec3 p = L.apply(tov(j.pos())) + shift;
    const MVec3 xu = L.apply(j.xu()), xv = L.apply(j.xv());
    const MVec3 xuu = L.apply(j.xuu()), xuv = L.apply(j.xuv()), xvv = L.apply(j.xvv());
    return {{p.x1, xu.x1, xv.x1, xuu.x1, xuv.x1, xvv.x1},
            {p.x2, xu.x2, xv.x2, xuu.x2, xuv.x2, xvv.x2},
            {p.x3, xu.x3, xv.x3, xuu.x3, xuv.x3, xvv.x3}};
}

VecJet2 scale_jet(double rho, const VecJet2& j) {
    auto s = [rho](const ScalarJet2& a) { return rho * a; };
    return {s(j.x1), s(j.x2), s(j.x3)};
}

VecJet2 swap_uv(const VecJet2& j) {
    auto s = [](const ScalarJet2& a) {
        return ScalarJet2{a.val, a.dv, a.du, a.dvv, a.duv, a.duu};
    };
    return {s(j.x1), s(j.x2), s(j.x3)};
}

}  // namespace

TEST_CASE("gauss_map on the plane, the hyperboloid, and a graph") {
    const MVec3 gp = gauss_map(plane_jet(0.3, -0.2));
    CHECK(std::fabs(gp.x1) < 1e-15);
    CHECK(std::fabs(gp.x2) < 1e-15);
    CHECK(std::fabs(std::fabs(gp.x3) - 1.0) < 1e-15);
    CHECK(minkowski_dot(gp, gp) == doctest::Approx(-1.0).epsilon(1e-14));

    const Surface hyp = pseudohyperbolic(1.0, {0, 0, 0}, {0.25, 2.0, 0.0, 6.3});
    const VecJet2 j = hyp.eval(1.0, 0.0);
    const MVec3 g = gauss_map(j);
    CHECK(minkowski_dot(g, g) == doctest::Approx(-1.0).epsilon(1e-13));
    CHECK(std::fabs(g.x1) == doctest::Approx(std::sinh(1.0)).epsilon(1e-13));
    CHECK(std::fabs(g.x2) < 1e-14);
    CHECK(std::fabs(g.x3) == doctest::Approx(std::cosh(1.0)).epsilon(1e-13));
    // orthogonal to both tangent directions
    CHECK(std::fabs(minkowski_dot(g, j.xu())) < 1e-13);
    CHECK(std::fabs(minkowski_dot(g, j.xv())) < 1e-13);

    const MVec3 gg = gauss_map(graph_jet(0, 0));
    CHECK(std::fabs(gg.x1) < 1e-15);
    CHECK(std::fabs(std::fabs(gg.x3) - 1.0) < 1e-15);

    // degenerate: Xu parallel Xv
    VecJet2 degenerate{jet_var_u(0.0) + jet_var_v(0.0), jet_var_u(0.0) + jet_var_v(0.0),
                       jet_constant(0.0)};
    CHECK_THROWS_AS(gauss_map(degenerate), DegeneratePointError);
}

TEST_CASE("fundamental forms of the standard examples") {
    const Surface hyp = pseudohyperbolic(1.0, {0, 0, 0}, {0.25, 2.0, 0.0, 6.3});
    const FundamentalForms ff = fundamental_forms(hyp.eval(1.0, 0.0));
    CHECK(ff.E == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ff.F == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(ff.G == doctest::Approx(std::sinh(1.0) * std::sinh(1.0)).epsilon(1e-12));
    CHECK(ff.W == doctest::Approx(ff.E * ff.G - ff.F * ff.F).epsilon(1e-14));

    const FundamentalForms fp = fundamental_forms(plane_jet(0.1, 0.7));
    CHECK(fp.E == 1.0);
    CHECK(fp.F == 0.0);
    CHECK(fp.G == 1.0);
    CHECK(fp.e == 0.0);
    CHECK(fp.f == 0.0);
    CHECK(fp.g == 0.0);

    // circle-foliated surface with f = g = 0, r = 1: G = r^2 = 1, F = 0
    const Surface cyl = cyclic_parallel(CausalClass::Spacelike, ProfileFn::constant(0),
                                        ProfileFn::constant(0), ProfileFn::constant(1),
                                        {-1, 1, 0, 6.3});
    const FundamentalForms fc = fundamental_forms(cyl.eval(0.3, 1.1));
    CHECK(fc.G == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(fc.F == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("curvatures: pseudohyperbolic anchor, plane, flat family") {
    const Surface hyp = pseudohyperbolic(2.0, {0, 0, 0}, {0.25, 2.0, 0.0, 6.3});
    lwtest::rng_t rng(3);
    for (int i = 0; i < 25; ++i) {
        const double u = lwtest::uniform(rng, 0.3, 1.9);
        const double v = lwtest::uniform(rng, 0.0, 6.28);
        const CurvaturePair cp = curvatures(hyp.eval(u, v));
        CHECK(cp.K == doctest::Approx(0.25).epsilon(1e-11));
        CHECK(std::fabs(cp.H) == doctest::Approx(0.5).epsilon(1e-11));
    }
    const CurvaturePair cpl = curvatures(plane_jet(0.2, 0.4));
    CHECK(cpl.H == 0.0);
    CHECK(cpl.K == 0.0);

    const Surface flat = flat_spacelike_instance();
    bool h_nonzero = false;
    for (int i = 0; i < 10; ++i) {
        const CurvaturePair cf = curvatures(flat.eval(0.1 * i, 0.5 + 0.3 * i));
        CHECK(std::fabs(cf.K) < 1e-10);
        h_nonzero = h_nonzero || std::fabs(cf.H) > 1e-4;
    }
    CHECK(h_nonzero);
}

TEST_CASE("weingarten_residual is plain arithmetic") {
    CHECK(weingarten_residual({0.5, 0.25}, {2, -4, 0}) == doctest::Approx(0.0));
    CHECK(weingarten_residual({0, 0}, {1.3, -0.2, 0}) == 0.0);
    const Surface hyp = pseudohyperbolic(0.5, {0, 0, 0}, {0.25, 2.0, 0.0, 6.3});
    for (int i = 1; i <= 8; ++i) {
        const CurvaturePair cp = curvatures(hyp.eval(0.25 + 0.2 * i, 0.7 * i));
        CHECK(std::fabs(weingarten_residual(cp, {1, -0.5, 0})) < 1e-9);
    }
}

TEST_CASE("bracket identities P = 2 H W^{3/2} and Q = K W^2 on spacelike points") {
    const Surface hyp = pseudohyperbolic(2.0, {0.3, -0.1, 0.2}, {0.25, 2.0, 0.0, 6.3});
    const Surface flat = flat_spacelike_instance();
    lwtest::rng_t rng(11);
    for (const Surface* s : {&hyp, &flat}) {
        for (int i = 0; i < 50; ++i) {
            const double u = lwtest::uniform(rng, s->domain.umin + 0.05, s->domain.umax - 0.05);
            const double v = lwtest::uniform(rng, s->domain.vmin, s->domain.vmax);
            const VecJet2 j = s->eval(u, v);
            const FundamentalForms ff = fundamental_forms(j);
            REQUIRE(ff.W > 0);
            const CurvaturePair cp = curvatures(j);
            const double P = bracket_P(j);
            const double Q = bracket_Q(j);
            const double scaleP = std::fmax(std::fabs(P), 2 * std::pow(ff.W, 1.5));
            const double scaleQ = std::fmax(std::fabs(Q), ff.W * ff.W);
            CHECK(std::fabs(P - 2 * cp.H * std::pow(ff.W, 1.5)) <= 1e-9 * scaleP);
            CHECK(std::fabs(Q - cp.K * ff.W * ff.W) <= 1e-9 * scaleQ);
        }
    }
    // plane: both brackets vanish identically
    CHECK(bracket_P(plane_jet(0.4, 0.8)) == 0.0);
    CHECK(bracket_Q(plane_jet(0.4, 0.8)) == 0.0);
}

TEST_CASE("rationalized residual vanishes exactly where the relation holds") {
    // plane with (a,b,c) = (0,1,1): Phi = -4 W^4 = -4
    CHECK(rationalized_residual(plane_jet(0.0, 0.0), {0, 1, 1}) ==
          doctest::Approx(-4.0).epsilon(1e-14));

    const Surface hyp = pseudohyperbolic(0.5, {0, 0, 0}, {0.25, 2.0, 0.0, 6.3});
    const Surface maximal = riemann_maximal(1, 0.2, 0.3, 1.0, 0.0, {-0.6, 0.6, 0.0, 6.3});
    lwtest::rng_t rng(19);
    for (int i = 0; i < 30; ++i) {
        const double v = lwtest::uniform(rng, 0.0, 6.28);
        const VecJet2 jh = hyp.eval(lwtest::uniform(rng, 0.3, 1.9), v);
        const ResidualParts<double> ph = residual_parts(jh, {1, -0.5, 0});
        const double scale_h = std::fmax(ph.p_bound * ph.p_bound * std::fabs(ph.W), 1.0);
        CHECK(std::fabs(ph.phi) <= 1e-10 * scale_h);

        const VecJet2 jm = maximal.eval(lwtest::uniform(rng, -0.5, 0.5), v);
        const ResidualParts<double> pm = residual_parts(jm, {1, 0, 0});
        const double scale_m = std::fmax(pm.p_bound * pm.p_bound * std::fabs(pm.W), 1.0);
        CHECK(std::fabs(pm.phi) <= 1e-10 * scale_m);
    }
}

TEST_CASE("weingarten residual zero implies rationalized residual zero") {
    const Surface hyp = pseudohyperbolic(1.0, {0, 0, 0}, {0.25, 2.0, 0.0, 6.3});
    lwtest::rng_t rng(23);
    for (int i = 0; i < 40; ++i) {
        const double u = lwtest::uniform(rng, 0.3, 1.9), v = lwtest::uniform(rng, 0.0, 6.28);
        const VecJet2 j = hyp.eval(u, v);
        const CurvaturePair cp = curvatures(j);
        // pick (a, b, c) that the point satisfies exactly: a H + b K = c
        const WeingartenCoeffs wc{1.5, 2.0, 1.5 * cp.H + 2.0 * cp.K};
        const ResidualParts<double> parts = residual_parts(j, wc);
        const double t2 = std::fabs(wc.c) * parts.W * parts.W + std::fabs(wc.b) * parts.q_bound;
        const double scale = std::fmax(parts.p_bound * parts.p_bound * std::fabs(parts.W),
                                       4 * t2 * t2);
        CHECK(std::fabs(parts.phi) <= 1e-9 * scale);
    }
}

TEST_CASE("isometry invariance and scaling covariance of H, K") {
    const Surface hyp = pseudohyperbolic(2.0, {0, 0, 0}, {0.25, 2.0, 0.0, 6.3});
    const Surface flat = flat_spacelike_instance();
    lwtest::rng_t rng(31);
    for (const Surface* s : {&hyp, &flat}) {
        for (int i = 0; i < 60; ++i) {
            const double u = lwtest::uniform(rng, s->domain.umin + 0.05, s->domain.umax - 0.05);
            const double v = lwtest::uniform(rng, s->domain.vmin, s->domain.vmax);
            const VecJet2 j = s->eval(u, v);
            const CurvaturePair cp = curvatures(j);

            const lwtest::Mat3 iso = lwtest::random_isometry(rng, 1.0);
            const MVec3 shift = lwtest::random_vec(rng);
            const CurvaturePair ci = curvatures(apply_isometry(iso, shift, j));
            CHECK(lwtest::rel_err(ci.H, cp.H) < 1e-9);
            CHECK(lwtest::rel_err(ci.K, cp.K) < 1e-9);

            const double rho = lwtest::uniform(rng, 0.5, 3.0);
            const CurvaturePair cs = curvatures(scale_jet(rho, j));
            CHECK(lwtest::rel_err(cs.H, cp.H / rho) < 1e-9);
            CHECK(lwtest::rel_err(cs.K, cp.K / (rho * rho)) < 1e-9);

            const CurvaturePair cr = curvatures(swap_uv(j));
            CHECK(lwtest::rel_err(cr.H, -cp.H) < 1e-9);
            CHECK(lwtest::rel_err(cr.K, cp.K) < 1e-9);
        }
    }
}

TEST_CASE("spacelike_check") {
    const Surface hyp = pseudohyperbolic(1.0, {0, 0, 0}, {0.5, 2.0, 0.0, 6.3});
    const SpacelikeScan ok = spacelike_check(hyp, 12, 12);
    CHECK(ok.all_spacelike);
    CHECK(ok.min_w > 0);

    const Surface plane = unit_plane();
    const SpacelikeScan pl = spacelike_check(plane, 5, 5);
    CHECK(pl.all_spacelike);
    CHECK(pl.min_w == doctest::Approx(1.0));

    const Surface llm = lightlike_maximal(1.0, 0.0,
                                          {1e-3, std::numbers::pi / 4 - 1e-3, -2.0, 2.0});
    const SpacelikeScan bad = spacelike_check(llm, 30, 30);
    CHECK_FALSE(bad.all_spacelike);
    CHECK(bad.min_w < 0);

    // but a spacelike sub-band exists
    const auto sub = find_spacelike_subgrid(llm, 100);
    REQUIRE(sub.has_value());
    Surface clipped = llm;
    clipped.domain = *sub;
    CHECK(spacelike_check(clipped, 25, 25).all_spacelike);
}
