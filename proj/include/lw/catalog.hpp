#pragma once

// Constructors for every surface and curve family used by the verification
// suite: circles of the three causal plane types, cyclic surfaces over
// parallel planes, pseudohyperbolic surfaces, the ODE-defined maximal
// families, flat families, and Frenet-frame foliated surfaces.

#include <functional>
#include <memory>
#include <vector>

#include "lw/errors.hpp"
#include "lw/jet.hpp"
#include "lw/lorentz.hpp"
#include "lw/ode.hpp"
#include "lw/surface.hpp"

namespace lw {

// A scalar profile of u alone (f, g, r, kappa, sigma, alpha, beta, gamma);
// the dv/duv/dvv slots of the returned jets are structurally zero.
struct ProfileFn {
    std::function<ScalarJet2(double)> fn;

    ScalarJet2 operator()(double u) const { return fn(u); }
    explicit operator bool() const { return static_cast<bool>(fn); }

    static ProfileFn constant(double c);
    static ProfileFn linear(double c0, double c1);
    // ascending coefficients: c[0] + c[1] u + c[2] u^2 + ...
    static ProfileFn poly(std::vector<double> coeffs);
    // base(u) + amp * sin(u); the standard perturbation for negative controls
    static ProfileFn sin_bump(ProfileFn base, double amp);
};

struct CurveJet {
    MVec3 pos, d1, d2;
};

// Unit-speed circle in a plane of the given causal type (s is arclength).
std::function<CurveJet(double)> circle(CausalClass plane_kind, double r);

// Cyclic surface over parallel planes of the given causal type:
//   spacelike: (f, g, u) + r (cos v, sin v, 0)
//   timelike:  (u, f, g) + r (0, sinh v, cosh v)
//   lightlike: (f, g + u, g - u) + (v, r v^2/2, r v^2/2)
// Timelike surfaces carry the complexified v-evaluator for harmonic
// extraction; r(u) <= 0 at an evaluation point raises DomainError.
Surface cyclic_parallel(CausalClass plane_kind, ProfileFn f, ProfileFn g, ProfileFn r,
                        Domain domain);

// x0 + r (sinh u cos v, sinh u sin v, cosh u); the domain must exclude the
// parametrization pole u = 0.
Surface pseudohyperbolic(double r, MVec3 x0, Domain domain);

// Same upper-sheet parametrization with a u-dependent radial factor; used by
// the perturbed negative controls.
Surface pseudohyperbolic_radial(ProfileFn radius, MVec3 x0, Domain domain);

struct RiemannProfiles {
    ProfileFn f, g, r;
    Domain reachable;  // largest u-span the integration covered
};

// Integrates r r'' = (eps lambda^2 + mu^2) r^4 + r'^2 - 1, f' = lambda r^2,
// g' = mu r^2 from u = 0 with dense output, stopping at r -> 0.
RiemannProfiles riemann_profiles(int eps, double lambda, double mu, double r0, double r0p,
                                 Domain domain, double rtol = 1e-10, double atol = 1e-12);

// The maximal family over spacelike (eps = +1) or timelike (eps = -1) planes.
Surface riemann_maximal(int eps, double lambda, double mu, double r0, double r0p, Domain domain,
                        double rtol = 1e-10, double atol = 1e-12);

struct LightlikeMaximalProfiles {
    ProfileFn f, g, r;
};

// Closed-form maximal family over lightlike planes: r = tan 2u on a domain
// inside (0, pi/4), kept at least 1e-3 away from the poles.
LightlikeMaximalProfiles lightlike_maximal_profiles(double lambda, double mu);
Surface lightlike_maximal(double lambda, double mu, Domain domain);

struct FlatParams {
    double f0 = 0, f1 = 0;  // f = f0 + f1 u
    double g0 = 0, g1 = 0;
    double r0 = 1, r1 = 0;    // spacelike/timelike kinds: r = r0 + r1 u
    double lam = 1, mu = 2;   // lightlike kind: r = lam / (u + mu)
};

// K = 0 families: affine profiles over spacelike/timelike planes, and the
// rational radius r = lam/(u + mu) over lightlike planes.
Surface flat_family(CausalClass plane_kind, const FlatParams& p, Domain domain);

enum class FrenetKind { SpacelikePlanes, LightlikePlanes };

struct FrenetState {
    MVec3 t, n, b, c;
};

// Checks the frame products for the given kind to tolerance tol.
void validate_frenet_state(FrenetKind kind, const FrenetState& s, double tol = 1e-9);

struct FrenetOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    bool reorthonormalize = false;  // opt-in correction pass; drift is observable when off
    double max_gram_drift = 1e-6;
};

struct FrenetSurface {
    Surface surface;
    double max_gram_drift;
    std::function<FrenetState(double)> frame_at;
};

// Integrates the Frenet frame plus center curve (c' = alpha t + beta n +
// gamma b) from `init` given at domain.umin, then forms
//   spacelike planes:  X = c + r (cos v n + sin v b)
//   lightlike planes:  X = c + v n + r v^2 t
// u-derivatives of the frame come from the Frenet right-hand sides and their
// kappa'/sigma'-differentiated forms, not from third-order jets.
FrenetSurface frenet_cyclic(FrenetKind kind, ProfileFn kappa, ProfileFn sigma, ProfileFn alpha,
                            ProfileFn beta, ProfileFn gamma, ProfileFn r, FrenetState init,
                            Domain domain, FrenetOptions opts = {});

struct FrenetReconstruction {
    FrenetSurface built;
    MVec3 c0;               // reconstructed center
    double expected_quadric;  // <X - c0, X - c0> should equal this (-1/(4a^2))
};

// The two constrained center-curve data sets that reproduce pseudohyperbolic
// surfaces from a Frenet foliation; `a` is the mean-curvature coefficient of
// the Weingarten relation they satisfy with 4 b^2 = 1, c = 0.
FrenetReconstruction frenet_pseudohyperbolic_spacelike(double a, ProfileFn r, ProfileFn kappa,
                                                       ProfileFn sigma, Domain domain,
                                                       FrenetOptions opts = {});
FrenetReconstruction frenet_pseudohyperbolic_lightlike(double a, ProfileFn r, ProfileFn kappa,
                                                       ProfileFn beta, Domain domain,
                                                       FrenetOptions opts = {});

// A catalog family named by string plus its parameters, as the CLI and the
// JSON config express it. Unused fields are ignored by each family.
struct SurfaceSpec {
    std::string family = "pseudohyperbolic";
    Domain domain{};
    bool domain_set = false;  // false -> the family's default window

    double radius = 2.0;  // pseudohyperbolic
    MVec3 x0{0, 0, 0};

    int eps = 1;  // riemann-maximal
    double lambda = 0.2, mu = 0.3, r0 = 1.0, r0p = 0.0;

    // polynomial profiles (ascending coefficients) for the cyclic/flat/frenet
    // families; flat-lightlike uses r = flat_lam / (u + flat_mu) instead
    std::vector<double> f_poly{0.0}, g_poly{0.0}, r_poly{1.0};
    double flat_lam = 1.0, flat_mu = 2.0;

    double a = 1.0;  // frenet families
    std::vector<double> kappa_poly{1.0}, sigma_poly{0.2}, beta_poly{0.3};

    double perturb_r = 0.0;  // adds perturb_r * sin u to the radial profile
    double ode_rtol = 1e-10, ode_atol = 1e-12;
};

// Instantiated spec plus whatever side data its checks need.
struct BuiltSurface {
    Surface surface;
    double pseudo_radius = 0;  // pseudohyperbolic family
    MVec3 pseudo_center{0, 0, 0};
    bool has_frenet = false;
    MVec3 frenet_c0{0, 0, 0};
    double frenet_quadric = 0;
    double gram_drift = 0;
};

const std::vector<std::string>& known_families();
BuiltSurface build_surface(const SurfaceSpec& spec);

}  // namespace lw
