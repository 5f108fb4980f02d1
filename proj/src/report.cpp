#include "lw/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include <json.hpp>

namespace lw {

namespace {

using ordered_json = nlohmann::ordered_json;

struct GridStats {
    double max_abs_h_dev = 0;   // vs target |H|
    double max_abs_k_dev = 0;   // vs target K
    double max_abs_h = 0;
    double max_abs_k = 0;
    double max_residual = 0;
    double max_residual_flipped = 0;
    double min_w = std::numeric_limits<double>::infinity();
    double max_quadric = -std::numeric_limits<double>::infinity();
    double min_quadric = std::numeric_limits<double>::infinity();
    double max_membership_dev = 0;
    bool any_degenerate = false;
};

GridStats grid_stats(const Surface& s, const Domain& d, int nu, int nv, const WeingartenCoeffs& wc,
                     double target_abs_h, double target_k, const MVec3& center, double quadric_ref) {
    GridStats g;
    const WeingartenCoeffs flipped{-wc.a, wc.b, wc.c};
    for (int i = 0; i < nu; ++i) {
        const double u = d.umin + (d.umax - d.umin) * i / (nu - 1);
        for (int k = 0; k < nv; ++k) {
            const double v = d.vmin + (d.vmax - d.vmin) * k / (nv - 1);
            const VecJet2 j = s.eval(u, v);
            const MVec3 xu = j.xu(), xv = j.xv();
            const double E = minkowski_dot(xu, xu), F = minkowski_dot(xu, xv),
                         G = minkowski_dot(xv, xv);
            g.min_w = std::fmin(g.min_w, E * G - F * F);
            const MVec3 rel = j.pos() - center;
            const double q = minkowski_dot(rel, rel);
            g.max_quadric = std::fmax(g.max_quadric, q);
            g.min_quadric = std::fmin(g.min_quadric, q);
            g.max_membership_dev = std::fmax(g.max_membership_dev, std::fabs(q - quadric_ref));
            try {
                const CurvaturePair cp = curvatures(j);
                g.max_abs_h = std::fmax(g.max_abs_h, std::fabs(cp.H));
                g.max_abs_k = std::fmax(g.max_abs_k, std::fabs(cp.K));
                g.max_abs_h_dev = std::fmax(g.max_abs_h_dev, std::fabs(std::fabs(cp.H) - target_abs_h));
                g.max_abs_k_dev = std::fmax(g.max_abs_k_dev, std::fabs(cp.K - target_k));
                g.max_residual = std::fmax(g.max_residual, std::fabs(weingarten_residual(cp, wc)));
                g.max_residual_flipped =
                    std::fmax(g.max_residual_flipped, std::fabs(weingarten_residual(cp, flipped)));
            } catch (const DegeneratePointError&) {
                g.any_degenerate = true;
            }
        }
    }
    return g;
}

void add_check(VerificationReport& rep, const std::string& name, double measured,
               double threshold, bool pass, const std::string& note = "") {
    rep.checks.push_back({name, pass, measured, threshold, note});
    rep.overall = rep.overall && pass;
}

void add_upper(VerificationReport& rep, const std::string& name, double measured,
               double threshold, const std::string& note = "") {
    add_check(rep, name, measured, threshold, measured <= threshold, note);
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

std::string VerificationReport::to_json() const {
    ordered_json j;
    j["family"] = family;
    j["weingarten"] = {{"a", wc.a}, {"b", wc.b}, {"c", wc.c}};
    ordered_json env;
    env["tol"] = tol;
    env["ode_rtol"] = ode_rtol;
    env["ode_atol"] = ode_atol;
    env["dft_samples"] = dft_samples;
    env["max_harmonic"] = max_harmonic;
    env["max_monomial"] = max_monomial;
    env["w_power"] = w_power;
    env["orientation"] = orientation;
    j["environment"] = env;
    ordered_json check_arr = ordered_json::array();
    for (const CheckRecord& c : checks) {
        ordered_json e;
        e["name"] = c.name;
        e["status"] = c.pass ? "pass" : "fail";
        e["measured"] = c.measured;
        e["threshold"] = c.threshold;
        if (!c.note.empty()) e["note"] = c.note;
        check_arr.push_back(e);
    }
    j["checks"] = check_arr;
    j["overall"] = overall ? "pass" : "fail";
    return j.dump(2) + "\n";
}

RunConfig parse_config(const std::string& json_text) {
    const ordered_json j = ordered_json::parse(json_text);
    RunConfig cfg;
    if (j.contains("surface")) {
        const auto& s = j["surface"];
        SurfaceSpec& sp = cfg.spec;
        if (s.contains("family")) sp.family = s["family"].get<std::string>();
        if (s.contains("domain")) {
            const auto& d = s["domain"];
            sp.domain = {d.value("umin", 0.0), d.value("umax", 1.0), d.value("vmin", 0.0),
                         d.value("vmax", 6.283185307179586)};
            sp.domain_set = true;
        }
        sp.radius = s.value("r", sp.radius);
        if (s.contains("x0")) {
            const auto& x = s["x0"];
            sp.x0 = {x.at(0).get<double>(), x.at(1).get<double>(), x.at(2).get<double>()};
        }
        sp.eps = s.value("eps", sp.eps);
        sp.lambda = s.value("lambda", sp.lambda);
        sp.mu = s.value("mu", sp.mu);
        sp.r0 = s.value("r0", sp.r0);
        sp.r0p = s.value("r0p", sp.r0p);
        sp.flat_lam = s.value("flat_lam", sp.flat_lam);
        sp.flat_mu = s.value("flat_mu", sp.flat_mu);
        sp.a = s.value("a", sp.a);
        sp.perturb_r = s.value("perturb_r", sp.perturb_r);
        sp.ode_rtol = s.value("ode_rtol", sp.ode_rtol);
        sp.ode_atol = s.value("ode_atol", sp.ode_atol);
        auto poly = [&](const char* key, std::vector<double>& dst) {
            if (s.contains(key)) dst = s[key].get<std::vector<double>>();
        };
        poly("f", sp.f_poly);
        poly("g", sp.g_poly);
        poly("r_profile", sp.r_poly);
        poly("kappa", sp.kappa_poly);
        poly("sigma", sp.sigma_poly);
        poly("beta", sp.beta_poly);
    }
    if (j.contains("weingarten")) {
        const auto& w = j["weingarten"];
        cfg.wc = {w.value("a", 1.0), w.value("b", 0.0), w.value("c", 0.0)};
        cfg.wc_set = true;
    }
    if (j.contains("grid")) {
        cfg.nu = j["grid"].value("nu", cfg.nu);
        cfg.nv = j["grid"].value("nv", cfg.nv);
    }
    cfg.tol = j.value("tol", cfg.tol);
    if (j.contains("coeffs")) {
        cfg.scan.J = j["coeffs"].value("J", cfg.scan.J);
        cfg.scan.J_mono = j["coeffs"].value("J_mono", cfg.scan.J_mono);
        cfg.scan.samples = j["coeffs"].value("samples", cfg.scan.samples);
        cfg.scan.nu = j["coeffs"].value("nu", cfg.scan.nu);
    }
    cfg.out_path = j.value("out", cfg.out_path);
    cfg.format = j.value("format", cfg.format);
    return cfg;
}

VerificationReport run_suite(const RunConfig& config) {
    VerificationReport rep;
    rep.family = config.spec.family;
    rep.tol = config.tol;
    rep.ode_rtol = config.spec.ode_rtol;
    rep.ode_atol = config.spec.ode_atol;
    rep.dft_samples = config.scan.samples;
    rep.max_harmonic = config.scan.J;
    rep.max_monomial = config.scan.J_mono;
    rep.wc = config.wc;

    BuiltSurface built;
    try {
        built = build_surface(config.spec);
    } catch (const Error& e) {
        add_check(rep, "construction", 1, 0, false, e.what());
        return rep;
    }
    const Surface& surf = built.surface;
    const std::string& fam = surf.family;

    // grid for curvature checks; hyperbolic/parabolic maximal families get a
    // spacelike sub-window when one exists
    Domain grid = surf.domain;
    bool subgrid_used = false;
    const bool maximal_family = fam.rfind("riemann-maximal", 0) == 0 ||
                                fam.rfind("lightlike-maximal", 0) == 0;
    if (maximal_family && surf.foliation != Foliation::Circular) {
        if (auto sub = find_spacelike_subgrid(surf)) {
            grid = *sub;
            subgrid_used = true;
        }
    }

    // natural Weingarten coefficients when the caller gave none
    WeingartenCoeffs wc = config.wc;
    if (!config.wc_set) {
        if (fam == "pseudohyperbolic") {
            wc = {2 * built.pseudo_radius, -built.pseudo_radius * built.pseudo_radius, 1};
        } else if (fam.rfind("flat-", 0) == 0) {
            wc = {0, 1, 0};
        } else if (built.has_frenet) {
            const CurvaturePair cp = curvatures(
                surf.eval(0.5 * (grid.umin + grid.umax), 0.5 * (grid.vmin + grid.vmax)));
            wc = {1, cp.H > 0 ? -0.5 : 0.5, 0};
        } else {
            wc = {1, 0, 0};
        }
        rep.wc = wc;
    }

    const double target_abs_h = built.pseudo_radius > 0 ? 1.0 / built.pseudo_radius : 0.0;
    const double target_k =
        built.pseudo_radius > 0 ? 1.0 / (built.pseudo_radius * built.pseudo_radius) : 0.0;
    const MVec3 center = built.has_frenet ? built.frenet_c0 : built.pseudo_center;
    const double quadric_ref =
        built.has_frenet
            ? built.frenet_quadric
            : (built.pseudo_radius > 0 ? -built.pseudo_radius * built.pseudo_radius : 0.0);

    const GridStats g =
        grid_stats(surf, grid, config.nu, config.nv, wc, target_abs_h, target_k, center,
                   quadric_ref);

    if (fam == "pseudohyperbolic") {
        add_upper(rep, "quadric.membership_dev", g.max_membership_dev,
                  1e-9 * built.pseudo_radius * built.pseudo_radius,
                  "max |<X-x0,X-x0> + r^2| over the grid");
        add_upper(rep, "curvature.gauss_dev", g.max_abs_k_dev, 1e-9, "max |K - 1/r^2|");
        add_upper(rep, "curvature.mean_abs_dev", g.max_abs_h_dev, 1e-9, "max ||H| - 1/r|");
        add_upper(rep, "weingarten.residual_max", g.max_residual, 1e-9,
                  "flipped-orientation (-a,b,c) residual: " + fmt(g.max_residual_flipped));
        add_check(rep, "metric.spacelike_min_w", g.min_w, 0, g.min_w > 0,
                  "min W over the grid (pass iff > 0)");
    } else if (maximal_family) {
        add_upper(rep, "curvature.mean_max", g.max_abs_h, 1e-6,
                  subgrid_used ? "max |H| over the spacelike sub-grid" : "max |H| over the grid");
        if (subgrid_used)
            add_check(rep, "metric.spacelike_min_w", g.min_w, 0, g.min_w > 0,
                      "min W over the located sub-grid");
        else
            add_check(rep, "metric.nondegenerate", std::fabs(g.min_w), 0,
                      !g.any_degenerate, "curvatures taken in the W != 0 sense; min W = " +
                                             fmt(g.min_w));
    } else if (fam.rfind("flat-", 0) == 0) {
        add_upper(rep, "curvature.gauss_max", g.max_abs_k, 1e-8, "max |K| over the grid");
        add_check(rep, "metric.spacelike_min_w", g.min_w, 0, g.min_w > 0,
                  "min W over the grid (pass iff > 0)");
    } else if (built.has_frenet) {
        add_upper(rep, "frame.gram_drift", built.gram_drift, 1e-6,
                  "max Gram deviation along the span");
        add_upper(rep, "quadric.spread", g.max_quadric - g.min_quadric, 1e-7,
                  "<X-c0,X-c0> spread over the grid");
        add_upper(rep, "quadric.magnitude_dev",
                  std::fabs(0.5 * (g.max_quadric + g.min_quadric) - quadric_ref), 1e-7,
                  "expected " + fmt(quadric_ref));
        add_upper(rep, "weingarten.residual_max", g.max_residual, 1e-9,
                  "flipped-orientation (-a,b,c) residual: " + fmt(g.max_residual_flipped));
        add_check(rep, "metric.spacelike_min_w", g.min_w, 0, g.min_w > 0,
                  "min W over the grid (pass iff > 0)");
    } else {
        add_upper(rep, "weingarten.residual_max", g.max_residual, 1e-9,
                  "flipped-orientation (-a,b,c) residual: " + fmt(g.max_residual_flipped));
        add_check(rep, "metric.spacelike_min_w", g.min_w, 0, g.min_w > 0,
                  "min W over the grid (pass iff > 0)");
    }

    // coefficient scan on a surface copy whose u-window matches the grid
    try {
        Surface scan_surf = surf;
        scan_surf.domain = grid;
        const ScanResult scan = coefficient_scan(scan_surf, wc, config.scan);
        add_upper(rep, "coeffs.summary", scan.summary, 1e-8,
                  std::string("channel: ") +
                      (scan.channel_used == ScanChannel::MeanBracket
                           ? "mean-bracket"
                           : scan.channel_used == ScanChannel::GaussBracket ? "gauss-bracket"
                                                                            : "rationalized"));
    } catch (const Error& e) {
        add_check(rep, "coeffs.summary", 1, 1e-8, false, e.what());
    }

    return rep;
}

}  // namespace lw
