#include "lw/catalog.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <utility>

namespace lw {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTau_catalog = 2.0 * std::numbers::pi;

template <typename T>
ScalarJet2T<T> promote(const ScalarJet2& a) {
    return {T(a.val), T(a.du), T(a.dv), T(a.duu), T(a.duv), T(a.dvv)};
}

template <typename T>
VecJet2T<T> assemble_cyclic(CausalClass kind, const ScalarJet2& fj, const ScalarJet2& gj,
                            const ScalarJet2& rj, double u, const ScalarJet2T<T>& vj) {
    const ScalarJet2T<T> f = promote<T>(fj), g = promote<T>(gj), r = promote<T>(rj);
    const ScalarJet2T<T> uj = jet_var_u(T(u));
    switch (kind) {
        case CausalClass::Spacelike:
            return {f + r * cos(vj), g + r * sin(vj), uj};
        case CausalClass::Timelike:
            return {uj, f + r * sinh(vj), g + r * cosh(vj)};
        case CausalClass::Lightlike: {
            const ScalarJet2T<T> q = r * vj * vj * T(0.5);
            return {f + vj, g + uj + q, g - uj + q};
        }
    }
    throw DomainError("cyclic_parallel: bad plane kind");
}

void require_inside(const Domain& d, double u, double v, const char* who) {
    const double eps = 1e-9 * (1.0 + std::fabs(d.umax - d.umin) + std::fabs(d.vmax - d.vmin));
    if (u < d.umin - eps || u > d.umax + eps)
        throw DomainError(std::string(who) + ": u outside the declared domain");
    (void)v;  // all families are entire in v; only u is restricted
}

}  // namespace

ProfileFn ProfileFn::constant(double c) {
    return {[c](double) { return jet_constant(c); }};
}

ProfileFn ProfileFn::linear(double c0, double c1) {
    return {[c0, c1](double u) {
        ScalarJet2 j = jet_var_u(u) * c1;
        j.val += c0;
        return j;
    }};
}

ProfileFn ProfileFn::poly(std::vector<double> coeffs) {
    return {[c = std::move(coeffs)](double u) {
        ScalarJet2 acc = jet_constant(0.0);
        const ScalarJet2 x = jet_var_u(u);
        for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
        return acc;
    }};
}

ProfileFn ProfileFn::sin_bump(ProfileFn base, double amp) {
    return {[base = std::move(base), amp](double u) {
        return base(u) + amp * sin(jet_var_u(u));
    }};
}

std::function<CurveJet(double)> circle(CausalClass plane_kind, double r) {
    if (!(r > 0)) throw DomainError("circle: radius must be positive");
    switch (plane_kind) {
        case CausalClass::Spacelike:
            return [r](double s) {
                const double c = std::cos(s / r), sn = std::sin(s / r);
                return CurveJet{{r * c, r * sn, 0}, {-sn, c, 0}, {-c / r, -sn / r, 0}};
            };
        case CausalClass::Timelike:
            return [r](double s) {
                const double ch = std::cosh(s / r), sh = std::sinh(s / r);
                return CurveJet{{0, r * sh, r * ch}, {0, ch, sh}, {0, sh / r, ch / r}};
            };
        case CausalClass::Lightlike:
            return [r](double s) {
                return CurveJet{{s, r * s * s / 2, r * s * s / 2}, {1, r * s, r * s}, {0, r, r}};
            };
    }
    throw DomainError("circle: bad plane kind");
}

Surface cyclic_parallel(CausalClass plane_kind, ProfileFn f, ProfileFn g, ProfileFn r,
                        Domain domain) {
    Surface s;
    s.domain = domain;
    switch (plane_kind) {
        case CausalClass::Spacelike:
            s.foliation = Foliation::Circular;
            s.family = "cyclic-spacelike";
            break;
        case CausalClass::Timelike:
            s.foliation = Foliation::Hyperbolic;
            s.family = "cyclic-timelike";
            break;
        case CausalClass::Lightlike:
            s.foliation = Foliation::Parabolic;
            s.family = "cyclic-lightlike";
            break;
    }
    auto profiles = std::make_shared<std::array<ProfileFn, 3>>(
        std::array<ProfileFn, 3>{std::move(f), std::move(g), std::move(r)});
    s.eval = [profiles, plane_kind, domain](double u, double v) {
        require_inside(domain, u, v, "cyclic_parallel");
        const ScalarJet2 fj = (*profiles)[0](u), gj = (*profiles)[1](u), rj = (*profiles)[2](u);
        if (!(rj.val > 0)) throw DomainError("cyclic_parallel: r(u) must stay positive");
        return assemble_cyclic<double>(plane_kind, fj, gj, rj, u, jet_var_v(v));
    };
    if (plane_kind == CausalClass::Timelike) {
        s.eval_at_iv = [profiles, plane_kind, domain](double u, double theta) {
            using C = std::complex<double>;
            const ScalarJet2 fj = (*profiles)[0](u), gj = (*profiles)[1](u),
                             rj = (*profiles)[2](u);
            if (!(rj.val > 0)) throw DomainError("cyclic_parallel: r(u) must stay positive");
            return assemble_cyclic<C>(plane_kind, fj, gj, rj, u, jet_var_v(C(0.0, theta)));
        };
    }
    return s;
}

Surface pseudohyperbolic_radial(ProfileFn radius, MVec3 x0, Domain domain) {
    if (domain.umin <= 0.0 && domain.umax >= 0.0)
        throw DomainError("pseudohyperbolic: domain contains the parametrization pole u = 0");
    Surface s;
    s.domain = domain;
    s.foliation = Foliation::Circular;
    s.family = "pseudohyperbolic";
    s.eval = [radius = std::move(radius), x0, domain](double u, double v) {
        require_inside(domain, u, v, "pseudohyperbolic");
        const ScalarJet2 rho = radius(u);
        if (!(rho.val > 0)) throw DomainError("pseudohyperbolic: radius must stay positive");
        const ScalarJet2 uj = jet_var_u(u), vj = jet_var_v(v);
        return VecJet2{x0.x1 + rho * sinh(uj) * cos(vj), x0.x2 + rho * sinh(uj) * sin(vj),
                       x0.x3 + rho * cosh(uj)};
    };
    return s;
}

Surface pseudohyperbolic(double r, MVec3 x0, Domain domain) {
    if (!(r > 0)) throw DomainError("pseudohyperbolic: radius must be positive");
    return pseudohyperbolic_radial(ProfileFn::constant(r), x0, domain);
}

RiemannProfiles riemann_profiles(int eps, double lambda, double mu, double r0, double r0p,
                                 Domain domain, double rtol, double atol) {
    if (!(r0 > 0)) throw DomainError("riemann_maximal: r(0) must be positive");
    if (eps != 1 && eps != -1) throw DomainError("riemann_maximal: eps must be +1 or -1");
    const double k4 = (eps == 1 ? 1.0 : -1.0) * lambda * lambda + mu * mu;

    auto rhs = [lambda, mu, k4](double, const std::vector<double>& y, std::vector<double>& dy) {
        const double r = y[0], rp = y[1];
        dy[0] = rp;
        dy[1] = (k4 * r * r * r * r + rp * rp - 1.0) / r;
        dy[2] = lambda * r * r;
        dy[3] = mu * r * r;
    };
    auto guard = [](const std::vector<double>& y) { return y[0]; };

    auto solve_leg = [&](double target) -> std::shared_ptr<DenseSolution> {
        if (target == 0.0) return nullptr;
        IvpProblem p;
        p.dim = 4;
        p.rhs = rhs;
        p.t0 = 0.0;
        p.t1 = target;
        p.y0 = {r0, r0p, 0.0, 0.0};
        p.rtol = rtol;
        p.atol = atol;
        return std::make_shared<DenseSolution>(event_stop(p, guard));
    };

    // integrate past the requested span so profile evaluation at the domain
    // edges never lands on the last interpolation cell
    const double pad = 0.05 * (domain.umax - domain.umin) + 1e-6;
    std::shared_ptr<DenseSolution> fwd = solve_leg(domain.umax > 0 ? domain.umax + pad : pad);
    std::shared_ptr<DenseSolution> bwd =
        domain.umin < 0 ? solve_leg(domain.umin - pad) : nullptr;

    const double hi = fwd ? fwd->t_end() : 0.0;
    const double lo = bwd ? bwd->t_end() : 0.0;
    if (domain.umax > hi || domain.umin < lo)
        throw IntegrationError("riemann_maximal: r reached 0 before covering the requested span",
                               lo, hi);

    RiemannProfiles out;
    out.reachable = {lo, hi, domain.vmin, domain.vmax};

    auto state_at = [fwd, bwd](double u) {
        const DenseSolution& sol = (u >= 0.0 || !bwd) ? *fwd : *bwd;
        std::vector<double> y;
        sol.eval(u, y);
        return y;
    };
    out.r = ProfileFn{[state_at, k4](double u) {
        const std::vector<double> y = state_at(u);
        const double rpp = (k4 * y[0] * y[0] * y[0] * y[0] + y[1] * y[1] - 1.0) / y[0];
        return ScalarJet2{y[0], y[1], 0, rpp, 0, 0};
    }};
    out.f = ProfileFn{[state_at, lambda](double u) {
        const std::vector<double> y = state_at(u);
        return ScalarJet2{y[2], lambda * y[0] * y[0], 0, 2 * lambda * y[0] * y[1], 0, 0};
    }};
    out.g = ProfileFn{[state_at, mu](double u) {
        const std::vector<double> y = state_at(u);
        return ScalarJet2{y[3], mu * y[0] * y[0], 0, 2 * mu * y[0] * y[1], 0, 0};
    }};
    return out;
}

Surface riemann_maximal(int eps, double lambda, double mu, double r0, double r0p, Domain domain,
                        double rtol, double atol) {
    RiemannProfiles pr = riemann_profiles(eps, lambda, mu, r0, r0p, domain, rtol, atol);
    Surface s = cyclic_parallel(eps == 1 ? CausalClass::Spacelike : CausalClass::Timelike,
                                std::move(pr.f), std::move(pr.g), std::move(pr.r), domain);
    s.family = "riemann-maximal";
    return s;
}

LightlikeMaximalProfiles lightlike_maximal_profiles(double lambda, double mu) {
    LightlikeMaximalProfiles out;
    out.r = ProfileFn{[](double u) { return tan(2.0 * jet_var_u(u)); }};
    out.f = ProfileFn{[lambda](double u) {
        const ScalarJet2 uj = jet_var_u(u);
        return lambda * (uj + 0.5 * cot(2.0 * uj));
    }};
    out.g = ProfileFn{[lambda, mu](double u) {
        const ScalarJet2 uj = jet_var_u(u);
        const double l2 = lambda * lambda;
        return (1.0 / 32.0) * (4.0 * (mu - 3.0 * l2) * uj - 4.0 * l2 * cot(2.0 * uj) -
                               (l2 - 4.0 * mu) * sin(4.0 * uj));
    }};
    return out;
}

Surface lightlike_maximal(double lambda, double mu, Domain domain) {
    if (!(domain.umin >= 1e-3 && domain.umax <= kPi / 4 - 1e-3 && domain.umin < domain.umax))
        throw DomainError(
            "lightlike_maximal: domain must sit inside (0, pi/4), at least 1e-3 from the poles");
    LightlikeMaximalProfiles pr = lightlike_maximal_profiles(lambda, mu);
    Surface s = cyclic_parallel(CausalClass::Lightlike, std::move(pr.f), std::move(pr.g),
                                std::move(pr.r), domain);
    s.family = "lightlike-maximal";
    return s;
}

Surface flat_family(CausalClass plane_kind, const FlatParams& p, Domain domain) {
    Surface s;
    if (plane_kind == CausalClass::Lightlike) {
        // r = lam / (u + mu); keep the pole of the radius outside the domain
        const double lo = domain.umin + p.mu, hi = domain.umax + p.mu;
        if (lo <= 1e-6 && hi >= -1e-6)
            throw DomainError("flat_family: u + mu crosses zero on the domain");
        ProfileFn r{[lam = p.lam, mu = p.mu](double u) {
            return jet_constant(lam) / (jet_var_u(u) + mu);
        }};
        s = cyclic_parallel(plane_kind, ProfileFn::linear(p.f0, p.f1),
                            ProfileFn::linear(p.g0, p.g1), std::move(r), domain);
    } else {
        s = cyclic_parallel(plane_kind, ProfileFn::linear(p.f0, p.f1),
                            ProfileFn::linear(p.g0, p.g1), ProfileFn::linear(p.r0, p.r1), domain);
    }
    s.family = "flat-" + std::string(to_string(plane_kind));
    return s;
}

void validate_frenet_state(FrenetKind kind, const FrenetState& s, double tol) {
    auto expect = [&](double got, double want, const char* what) {
        if (std::fabs(got - want) > tol)
            throw PreconditionError(std::string("frenet init frame: ") + what +
                                    " out of tolerance");
    };
    if (kind == FrenetKind::SpacelikePlanes) {
        expect(minkowski_dot(s.t, s.t), -1.0, "<t,t> != -1");
        expect(minkowski_dot(s.n, s.n), 1.0, "<n,n> != 1");
        expect(minkowski_dot(s.b, s.b), 1.0, "<b,b> != 1");
        expect(minkowski_dot(s.t, s.n), 0.0, "<t,n> != 0");
        expect(minkowski_dot(s.t, s.b), 0.0, "<t,b> != 0");
        expect(minkowski_dot(s.n, s.b), 0.0, "<n,b> != 0");
        expect(std::fabs(det3(s.t, s.n, s.b)), 1.0, "det(t,n,b) != +-1");
    } else {
        expect(minkowski_dot(s.t, s.t), 0.0, "<t,t> != 0");
        expect(minkowski_dot(s.b, s.b), 0.0, "<b,b> != 0");
        expect(minkowski_dot(s.t, s.b), 1.0, "<t,b> != 1");
        expect(minkowski_dot(s.n, s.n), 1.0, "<n,n> != 1");
        expect(minkowski_dot(s.t, s.n), 0.0, "<t,n> != 0");
        expect(minkowski_dot(s.b, s.n), 0.0, "<b,n> != 0");
        expect(det3(s.t, s.n, s.b), 1.0, "det(t,n,b) != 1");
    }
}

namespace {

struct FrameJets {
    MVec3 t, n, b, c;
    MVec3 tp, np, bp, cp;
    MVec3 tpp, npp, bpp, cpp;
};

MVec3 take(const std::vector<double>& y, int at) { return {y[at], y[at + 1], y[at + 2]}; }

FrameJets frame_jets(FrenetKind kind, const std::vector<double>& y, const ScalarJet2& k,
                     const ScalarJet2& s, const ScalarJet2& a, const ScalarJet2& b,
                     const ScalarJet2& g) {
    FrameJets fj;
    fj.t = take(y, 0);
    fj.n = take(y, 3);
    fj.b = take(y, 6);
    fj.c = take(y, 9);
    if (kind == FrenetKind::SpacelikePlanes) {
        fj.tp = k.val * fj.n;
        fj.np = k.val * fj.t + s.val * fj.b;
        fj.bp = -s.val * fj.n;
        fj.tpp = (k.val * k.val) * fj.t + k.du * fj.n + (k.val * s.val) * fj.b;
        fj.npp = k.du * fj.t + (k.val * k.val - s.val * s.val) * fj.n + s.du * fj.b;
        fj.bpp = -(s.val * k.val) * fj.t - s.du * fj.n - (s.val * s.val) * fj.b;
        fj.cp = a.val * fj.t + b.val * fj.n + g.val * fj.b;
        fj.cpp = (a.du + b.val * k.val) * fj.t + (a.val * k.val + b.du - g.val * s.val) * fj.n +
                 (b.val * s.val + g.du) * fj.b;
    } else {
        fj.tp = k.val * fj.n;
        fj.np = s.val * fj.t - k.val * fj.b;
        fj.bp = -s.val * fj.n;
        fj.tpp = (k.val * s.val) * fj.t + k.du * fj.n - (k.val * k.val) * fj.b;
        fj.npp = s.du * fj.t + (2.0 * k.val * s.val) * fj.n - k.du * fj.b;
        fj.bpp = -(s.val * s.val) * fj.t - s.du * fj.n + (s.val * k.val) * fj.b;
        fj.cp = a.val * fj.t + b.val * fj.n + g.val * fj.b;
        fj.cpp = (a.du + b.val * s.val) * fj.t + (a.val * k.val + b.du - g.val * s.val) * fj.n +
                 (g.du - b.val * k.val) * fj.b;
    }
    return fj;
}

// Pull the drifted frame back onto the exact Gram relations (one pass).
void reorthonormalize_frame(FrenetKind kind, std::vector<double>& y) {
    MVec3 t = take(y, 0), n = take(y, 3), b = take(y, 6);
    if (kind == FrenetKind::SpacelikePlanes) {
        t = (1.0 / std::sqrt(-minkowski_dot(t, t))) * t;
        n = n + minkowski_dot(n, t) * t;
        n = (1.0 / std::sqrt(minkowski_dot(n, n))) * n;
        b = b + minkowski_dot(b, t) * t - minkowski_dot(b, n) * n;
        b = (1.0 / std::sqrt(minkowski_dot(b, b))) * b;
    } else {
        // null frame: fix <t,n>, <b,n> with b/t shifts, then the null and
        // pairing conditions
        const double tb = minkowski_dot(t, b);
        n = n - (minkowski_dot(n, t) / tb) * b - (minkowski_dot(n, b) / tb) * t;
        n = (1.0 / std::sqrt(minkowski_dot(n, n))) * n;
        t = t - (0.5 * minkowski_dot(t, t) / tb) * b;
        b = b - (0.5 * minkowski_dot(b, b) / minkowski_dot(t, b)) * t;
        b = (1.0 / minkowski_dot(t, b)) * b;
    }
    y[0] = t.x1; y[1] = t.x2; y[2] = t.x3;
    y[3] = n.x1; y[4] = n.x2; y[5] = n.x3;
    y[6] = b.x1; y[7] = b.x2; y[8] = b.x3;
}

double gram_drift(FrenetKind kind, const std::vector<double>& y) {
    const MVec3 t = take(y, 0), n = take(y, 3), b = take(y, 6);
    double d = 0;
    auto acc = [&](double got, double want) { d = std::fmax(d, std::fabs(got - want)); };
    if (kind == FrenetKind::SpacelikePlanes) {
        acc(minkowski_dot(t, t), -1);
        acc(minkowski_dot(n, n), 1);
        acc(minkowski_dot(b, b), 1);
        acc(minkowski_dot(t, n), 0);
        acc(minkowski_dot(t, b), 0);
        acc(minkowski_dot(n, b), 0);
    } else {
        acc(minkowski_dot(t, t), 0);
        acc(minkowski_dot(b, b), 0);
        acc(minkowski_dot(t, b), 1);
        acc(minkowski_dot(n, n), 1);
        acc(minkowski_dot(t, n), 0);
        acc(minkowski_dot(n, b), 0);
    }
    return d;
}

// X component jets out of frame data and v-jets: pos/d-slots built by hand
// because the u-dependence lives in the frame, not in a u-seed.
VecJet2 combine(const MVec3& val, const MVec3& du, const MVec3& dv, const MVec3& duu,
                const MVec3& duv, const MVec3& dvv) {
    return {{val.x1, du.x1, dv.x1, duu.x1, duv.x1, dvv.x1},
            {val.x2, du.x2, dv.x2, duu.x2, duv.x2, dvv.x2},
            {val.x3, du.x3, dv.x3, duu.x3, duv.x3, dvv.x3}};
}

}  // namespace

FrenetSurface frenet_cyclic(FrenetKind kind, ProfileFn kappa, ProfileFn sigma, ProfileFn alpha,
                            ProfileFn beta, ProfileFn gamma, ProfileFn r, FrenetState init,
                            Domain domain, FrenetOptions opts) {
    validate_frenet_state(kind, init);

    // kappa must stay away from zero: the normal congruence must actually turn
    {
        const double k0 = kappa(domain.umin).val;
        if (k0 == 0) throw PreconditionError("frenet_cyclic: kappa vanishes at umin");
        for (int i = 0; i <= 200; ++i) {
            const double u = domain.umin + (domain.umax - domain.umin) * i / 200.0;
            const double k = kappa(u).val;
            if (k == 0 || (k > 0) != (k0 > 0))
                throw PreconditionError("frenet_cyclic: kappa crosses zero on the domain");
        }
    }

    auto profs = std::make_shared<std::array<ProfileFn, 6>>(std::array<ProfileFn, 6>{
        std::move(kappa), std::move(sigma), std::move(alpha), std::move(beta), std::move(gamma),
        std::move(r)});

    IvpProblem p;
    p.dim = 12;
    p.rtol = opts.rtol;
    p.atol = opts.atol;
    p.t0 = domain.umin;
    p.t1 = domain.umax;
    p.y0 = {init.t.x1, init.t.x2, init.t.x3, init.n.x1, init.n.x2, init.n.x3,
            init.b.x1, init.b.x2, init.b.x3, init.c.x1, init.c.x2, init.c.x3};
    p.rhs = [profs, kind](double u, const std::vector<double>& y, std::vector<double>& dy) {
        const double k = (*profs)[0](u).val, s = (*profs)[1](u).val;
        const double a = (*profs)[2](u).val, b = (*profs)[3](u).val, g = (*profs)[4](u).val;
        const MVec3 t = take(y, 0), n = take(y, 3), bb = take(y, 6);
        const MVec3 tp = k * n;
        const MVec3 np = (kind == FrenetKind::SpacelikePlanes) ? MVec3{k * t + s * bb}
                                                               : MVec3{s * t - k * bb};
        const MVec3 bp = -s * n;
        const MVec3 cp = a * t + b * n + g * bb;
        dy = {tp.x1, tp.x2, tp.x3, np.x1, np.x2, np.x3, bp.x1, bp.x2, bp.x3, cp.x1, cp.x2, cp.x3};
    };

    auto sol = std::make_shared<DenseSolution>(integrate_ivp(p));

    double drift = 0;
    {
        std::vector<double> y;
        for (int i = 0; i <= 200; ++i) {
            const double u = domain.umin + (domain.umax - domain.umin) * i / 200.0;
            sol->eval(u, y);
            drift = std::fmax(drift, gram_drift(kind, y));
        }
        if (drift > opts.max_gram_drift)
            throw IntegrationError("frenet_cyclic: frame Gram drift beyond tolerance",
                                   domain.umin, domain.umax);
    }

    FrenetSurface out;
    out.max_gram_drift = drift;
    out.frame_at = [sol, kind, reorth = opts.reorthonormalize](double u) {
        std::vector<double> y;
        sol->eval(u, y);
        if (reorth) reorthonormalize_frame(kind, y);
        return FrenetState{take(y, 0), take(y, 3), take(y, 6), take(y, 9)};
    };

    Surface& s = out.surface;
    s.domain = domain;
    s.foliation =
        (kind == FrenetKind::SpacelikePlanes) ? Foliation::Circular : Foliation::Parabolic;
    s.family = (kind == FrenetKind::SpacelikePlanes) ? "frenet-spacelike" : "frenet-lightlike";
    s.eval = [sol, profs, kind, domain, reorth = opts.reorthonormalize](double u, double v) {
        require_inside(domain, u, v, "frenet_cyclic");
        std::vector<double> y;
        sol->eval(u, y);
        if (reorth) reorthonormalize_frame(kind, y);
        const ScalarJet2 k = (*profs)[0](u), sg = (*profs)[1](u), a = (*profs)[2](u),
                         b = (*profs)[3](u), g = (*profs)[4](u), rr = (*profs)[5](u);
        if (!(rr.val > 0)) throw DomainError("frenet_cyclic: r(u) must stay positive");
        const FrameJets fj = frame_jets(kind, y, k, sg, a, b, g);
        if (kind == FrenetKind::SpacelikePlanes) {
            const double cv = std::cos(v), sv = std::sin(v);
            const MVec3 ring = cv * fj.n + sv * fj.b;
            const MVec3 ring_u = cv * fj.np + sv * fj.bp;
            const MVec3 ring_uu = cv * fj.npp + sv * fj.bpp;
            const MVec3 ring_v = -sv * fj.n + cv * fj.b;
            const MVec3 ring_uv = -sv * fj.np + cv * fj.bp;
            return combine(
                fj.c + rr.val * ring,
                fj.cp + rr.du * ring + rr.val * ring_u,
                rr.val * ring_v,
                fj.cpp + rr.duu * ring + 2.0 * rr.du * ring_u + rr.val * ring_uu,
                rr.du * ring_v + rr.val * ring_uv,
                -rr.val * ring);
        }
        const double v2 = v * v;
        return combine(
            fj.c + v * fj.n + (rr.val * v2) * fj.t,
            fj.cp + v * fj.np + (rr.du * v2) * fj.t + (rr.val * v2) * fj.tp,
            fj.n + (2.0 * rr.val * v) * fj.t,
            fj.cpp + v * fj.npp + (rr.duu * v2) * fj.t + (2.0 * rr.du * v2) * fj.tp +
                (rr.val * v2) * fj.tpp,
            fj.np + (2.0 * rr.du * v) * fj.t + (2.0 * rr.val * v) * fj.tp,
            (2.0 * rr.val) * fj.t);
    };
    return out;
}

FrenetReconstruction frenet_pseudohyperbolic_spacelike(double a, ProfileFn r, ProfileFn kappa,
                                                       ProfileFn sigma, Domain domain,
                                                       FrenetOptions opts) {
    if (!(a != 0)) throw DomainError("frenet_pseudohyperbolic_spacelike: a must be nonzero");
    const double inv4a2 = 1.0 / (4.0 * a * a);
    auto rr = std::make_shared<ProfileFn>(std::move(r));
    auto kk = std::make_shared<ProfileFn>(std::move(kappa));
    ProfileFn beta{[rr, kk, inv4a2](double u) {
        return (*kk)(u)*sqrt(jet_constant(inv4a2) + (*rr)(u) * (*rr)(u));
    }};
    ProfileFn alpha{[rr, inv4a2](double u) {
        const ScalarJet2 rj = (*rr)(u);
        return rj * ScalarJet2{rj.du, rj.duu, 0, 0, 0, 0} /
               sqrt(jet_constant(inv4a2) + rj * rj);
    }};

    FrenetState init;
    init.t = {0, 0, 1};
    init.n = {1, 0, 0};
    init.b = {0, 1, 0};
    const double s0 = std::sqrt(inv4a2 + (*rr)(domain.umin).val * (*rr)(domain.umin).val);
    init.c = s0 * init.t;

    FrenetReconstruction rec;
    rec.built = frenet_cyclic(FrenetKind::SpacelikePlanes, *kk, std::move(sigma),
                              std::move(alpha), std::move(beta), ProfileFn::constant(0.0), *rr,
                              init, domain, opts);
    rec.c0 = {0, 0, 0};
    rec.expected_quadric = -inv4a2;
    return rec;
}

const std::vector<std::string>& known_families() {
    static const std::vector<std::string> fams = {
        "pseudohyperbolic", "riemann-maximal",  "lightlike-maximal", "flat-spacelike",
        "flat-timelike",    "flat-lightlike",   "cyclic-spacelike",  "cyclic-timelike",
        "cyclic-lightlike", "frenet-spacelike", "frenet-lightlike"};
    return fams;
}

namespace {

double poly_at(const std::vector<double>& c, size_t k) { return k < c.size() ? c[k] : 0.0; }

ProfileFn spec_profile(const std::vector<double>& coeffs, double bump) {
    ProfileFn p = ProfileFn::poly(coeffs);
    return bump != 0.0 ? ProfileFn::sin_bump(std::move(p), bump) : p;
}

}  // namespace

BuiltSurface build_surface(const SurfaceSpec& spec) {
    BuiltSurface out;
    const std::string& fam = spec.family;
    Domain d = spec.domain;

    if (fam == "pseudohyperbolic") {
        if (!spec.domain_set) d = {0.25, 1.75, 0.0, kTau_catalog};
        ProfileFn rad = ProfileFn::constant(spec.radius);
        if (spec.perturb_r != 0.0) rad = ProfileFn::sin_bump(std::move(rad), spec.perturb_r);
        out.surface = pseudohyperbolic_radial(std::move(rad), spec.x0, d);
        if (spec.perturb_r != 0.0) out.surface.family = "pseudohyperbolic-perturbed";
        out.pseudo_radius = spec.radius;
        out.pseudo_center = spec.x0;
        return out;
    }
    if (fam == "riemann-maximal") {
        if (!spec.domain_set)
            d = (spec.eps == 1) ? Domain{-0.8, 0.8, 0.0, kTau_catalog}
                                : Domain{-0.5, 0.5, -1.0, 1.5};
        RiemannProfiles pr = riemann_profiles(spec.eps, spec.lambda, spec.mu, spec.r0, spec.r0p,
                                              d, spec.ode_rtol, spec.ode_atol);
        ProfileFn r = spec.perturb_r != 0.0 ? ProfileFn::sin_bump(std::move(pr.r), spec.perturb_r)
                                            : std::move(pr.r);
        out.surface =
            cyclic_parallel(spec.eps == 1 ? CausalClass::Spacelike : CausalClass::Timelike,
                            std::move(pr.f), std::move(pr.g), std::move(r), d);
        out.surface.family =
            spec.perturb_r != 0.0 ? "riemann-maximal-perturbed" : "riemann-maximal";
        return out;
    }
    if (fam == "lightlike-maximal") {
        if (!spec.domain_set) d = {kPi / 16, 3 * kPi / 16, -2.0, 2.0};
        if (!(d.umin >= 1e-3 && d.umax <= kPi / 4 - 1e-3 && d.umin < d.umax))
            throw DomainError(
                "lightlike_maximal: domain must sit inside (0, pi/4), at least 1e-3 from the "
                "poles");
        LightlikeMaximalProfiles pr = lightlike_maximal_profiles(spec.lambda, spec.mu);
        ProfileFn r = spec.perturb_r != 0.0 ? ProfileFn::sin_bump(std::move(pr.r), spec.perturb_r)
                                            : std::move(pr.r);
        out.surface = cyclic_parallel(CausalClass::Lightlike, std::move(pr.f), std::move(pr.g),
                                      std::move(r), d);
        out.surface.family =
            spec.perturb_r != 0.0 ? "lightlike-maximal-perturbed" : "lightlike-maximal";
        return out;
    }

    auto plane_of = [&](const std::string& prefix) -> std::optional<CausalClass> {
        if (fam == prefix + "-spacelike") return CausalClass::Spacelike;
        if (fam == prefix + "-timelike") return CausalClass::Timelike;
        if (fam == prefix + "-lightlike") return CausalClass::Lightlike;
        return std::nullopt;
    };

    if (auto kind = plane_of("flat")) {
        if (!spec.domain_set) {
            if (*kind == CausalClass::Spacelike) d = {0.0, 1.0, 0.0, kTau_catalog};
            else if (*kind == CausalClass::Timelike) d = {0.0, 1.0, -1.0, 1.0};
            else d = {0.0, 1.0, -1.0, 1.0};
        }
        ProfileFn f = ProfileFn::linear(poly_at(spec.f_poly, 0), poly_at(spec.f_poly, 1));
        ProfileFn g = ProfileFn::linear(poly_at(spec.g_poly, 0), poly_at(spec.g_poly, 1));
        ProfileFn r;
        if (*kind == CausalClass::Lightlike) {
            const double lo = d.umin + spec.flat_mu, hi = d.umax + spec.flat_mu;
            if (lo <= 1e-6 && hi >= -1e-6)
                throw DomainError("flat_family: u + mu crosses zero on the domain");
            r = ProfileFn{[lam = spec.flat_lam, mu = spec.flat_mu](double u) {
                return jet_constant(lam) / (jet_var_u(u) + mu);
            }};
        } else {
            r = ProfileFn::linear(poly_at(spec.r_poly, 0), poly_at(spec.r_poly, 1));
        }
        if (spec.perturb_r != 0.0) r = ProfileFn::sin_bump(std::move(r), spec.perturb_r);
        out.surface = cyclic_parallel(*kind, std::move(f), std::move(g), std::move(r), d);
        out.surface.family = "flat-" + std::string(to_string(*kind)) +
                             (spec.perturb_r != 0.0 ? "-perturbed" : "");
        return out;
    }
    if (auto kind = plane_of("cyclic")) {
        if (!spec.domain_set)
            d = {0.0, 1.0, *kind == CausalClass::Spacelike ? 0.0 : -1.0,
                 *kind == CausalClass::Spacelike ? kTau_catalog : 1.0};
        out.surface = cyclic_parallel(*kind, spec_profile(spec.f_poly, 0.0),
                                      spec_profile(spec.g_poly, 0.0),
                                      spec_profile(spec.r_poly, spec.perturb_r), d);
        if (spec.perturb_r != 0.0) out.surface.family += "-perturbed";
        return out;
    }
    if (fam == "frenet-spacelike" || fam == "frenet-lightlike") {
        FrenetOptions opts;
        opts.rtol = spec.ode_rtol;
        opts.atol = spec.ode_atol;
        FrenetReconstruction rec;
        if (fam == "frenet-spacelike") {
            if (!spec.domain_set) d = {0.0, 1.5, 0.0, kTau_catalog};
            rec = frenet_pseudohyperbolic_spacelike(spec.a, spec_profile(spec.r_poly, 0.0),
                                                    ProfileFn::poly(spec.kappa_poly),
                                                    ProfileFn::poly(spec.sigma_poly), d, opts);
        } else {
            if (!spec.domain_set) d = {0.0, 1.0, -1.0, 1.0};
            rec = frenet_pseudohyperbolic_lightlike(spec.a, spec_profile(spec.r_poly, 0.0),
                                                    ProfileFn::poly(spec.kappa_poly),
                                                    ProfileFn::poly(spec.beta_poly), d, opts);
        }
        out.surface = std::move(rec.built.surface);
        out.has_frenet = true;
        out.frenet_c0 = rec.c0;
        out.frenet_quadric = rec.expected_quadric;
        out.gram_drift = rec.built.max_gram_drift;
        return out;
    }
    throw DomainError("build_surface: unknown family '" + fam + "'");
}

FrenetReconstruction frenet_pseudohyperbolic_lightlike(double a, ProfileFn r, ProfileFn kappa,
                                                       ProfileFn beta, Domain domain,
                                                       FrenetOptions opts) {
    if (!(a != 0)) throw DomainError("frenet_pseudohyperbolic_lightlike: a must be nonzero");
    const double a2 = a * a;
    auto rr = std::make_shared<ProfileFn>(std::move(r));
    auto kk = std::make_shared<ProfileFn>(std::move(kappa));
    auto bb = std::make_shared<ProfileFn>(std::move(beta));
    // 2 a^2 sigma = 4 a^2 r beta - r^2 kappa;  2 a^2 alpha = r^2 gamma;  r' = 2 r^2 gamma
    ProfileFn gamma{[rr](double u) {
        const ScalarJet2 rj = (*rr)(u);
        return ScalarJet2{rj.du, rj.duu, 0, 0, 0, 0} / (2.0 * rj * rj);
    }};
    ProfileFn alpha{[rr, a2](double u) {
        const ScalarJet2 rj = (*rr)(u);
        return ScalarJet2{rj.du, rj.duu, 0, 0, 0, 0} * (1.0 / (4.0 * a2));
    }};
    ProfileFn sigma{[rr, kk, bb, a2](double u) {
        const ScalarJet2 rj = (*rr)(u);
        return 2.0 * rj * (*bb)(u) - rj * rj * (*kk)(u) * (1.0 / (2.0 * a2));
    }};

    FrenetState init;
    init.t = {0, 1, 1};
    init.n = {1, 0, 0};
    init.b = {0, 0.5, -0.5};
    const double rA = (*rr)(domain.umin).val;
    init.c = (rA / (4.0 * a2)) * init.t - (1.0 / (2.0 * rA)) * init.b;

    FrenetReconstruction rec;
    rec.built = frenet_cyclic(FrenetKind::LightlikePlanes, *kk, std::move(sigma),
                              std::move(alpha), *bb, std::move(gamma), *rr, init, domain, opts);
    rec.c0 = {0, 0, 0};
    rec.expected_quadric = -1.0 / (4.0 * a2);
    return rec;
}

}  // namespace lw
