// lwcli: curvature, residual, coefficient, mesh, and verification runs for
// spacelike cyclic linear-Weingarten surface families in Minkowski 3-space.
//
// Exit status: 0 success / all checks pass, 1 check failure, 2 usage error,
// 3 construction or integration failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "lw/catalog.hpp"
#include "lw/coeffs.hpp"
#include "lw/mesh_io.hpp"
#include "lw/report.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;

struct CliOptions {
    std::string config_path;
    std::string surface;
    std::optional<double> a, b, c;
    std::optional<double> umin, umax, vmin, vmax;
    std::optional<int> nu, nv;
    std::optional<double> tol;
    std::string out_path;
    std::string format;
    // family parameters
    std::optional<double> r, lambda, mu, r0, r0p, flat_lam, flat_mu, fa, perturb;
    std::optional<int> eps;
    std::vector<double> x0;
    std::vector<double> f_poly, g_poly, r_poly, kappa_poly, sigma_poly, beta_poly;
    std::optional<double> u_pt, v_pt;
    std::optional<int> J, samples;
};

void add_common(CLI::App* cmd, CliOptions& o) {
    cmd->add_option("--config", o.config_path, "JSON config file; flags override its values");
    cmd->add_option("--surface", o.surface, "surface family name");
    cmd->add_option("--a", o.a, "Weingarten coefficient a");
    cmd->add_option("--b", o.b, "Weingarten coefficient b");
    cmd->add_option("--c", o.c, "Weingarten coefficient c");
    cmd->add_option("--umin", o.umin);
    cmd->add_option("--umax", o.umax);
    cmd->add_option("--vmin", o.vmin);
    cmd->add_option("--vmax", o.vmax);
    cmd->add_option("--nu", o.nu, "grid size in u");
    cmd->add_option("--nv", o.nv, "grid size in v");
    cmd->add_option("--tol", o.tol, "causal classification tolerance");
    cmd->add_option("--out", o.out_path, "output path (default: stdout)");
    cmd->add_option("--format", o.format, "obj|csv|json");
    cmd->add_option("--r", o.r, "pseudohyperbolic radius");
    cmd->add_option("--lambda", o.lambda);
    cmd->add_option("--mu", o.mu);
    cmd->add_option("--eps", o.eps, "riemann-maximal plane kind: +1 or -1");
    cmd->add_option("--r0", o.r0, "riemann-maximal r(0)");
    cmd->add_option("--r0p", o.r0p, "riemann-maximal r'(0)");
    cmd->add_option("--x0", o.x0, "pseudohyperbolic center (3 values)")->expected(3);
    cmd->add_option("--flat-lam", o.flat_lam, "flat-lightlike r = lam/(u+mu): lam");
    cmd->add_option("--flat-mu", o.flat_mu, "flat-lightlike r = lam/(u+mu): mu");
    cmd->add_option("--frenet-a", o.fa, "frenet families: Weingarten a");
    cmd->add_option("--perturb-r", o.perturb, "add perturb*sin(u) to the radial profile");
    cmd->add_option("--f", o.f_poly, "f profile polynomial (ascending coefficients)");
    cmd->add_option("--g", o.g_poly, "g profile polynomial");
    cmd->add_option("--r-profile", o.r_poly, "r profile polynomial");
    cmd->add_option("--kappa", o.kappa_poly, "frenet curvature polynomial");
    cmd->add_option("--sigma", o.sigma_poly, "frenet torsion polynomial");
    cmd->add_option("--beta", o.beta_poly, "frenet center-speed polynomial");
    cmd->add_option("--J", o.J, "harmonic index ceiling for coefficient scans");
    cmd->add_option("--samples", o.samples, "DFT sample count");
}

lw::RunConfig make_config(const CliOptions& o) {
    lw::RunConfig cfg;
    if (!o.config_path.empty()) {
        std::ifstream in(o.config_path);
        if (!in) throw lw::Error("cannot read config file '" + o.config_path + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        cfg = lw::parse_config(ss.str());
    }
    lw::SurfaceSpec& sp = cfg.spec;
    if (!o.surface.empty()) sp.family = o.surface;
    if (o.umin || o.umax || o.vmin || o.vmax) {
        lw::Domain d = sp.domain_set ? sp.domain : lw::Domain{0, 1, 0, 6.283185307179586};
        if (o.umin) d.umin = *o.umin;
        if (o.umax) d.umax = *o.umax;
        if (o.vmin) d.vmin = *o.vmin;
        if (o.vmax) d.vmax = *o.vmax;
        sp.domain = d;
        sp.domain_set = true;
    }
    if (o.a || o.b || o.c) {
        if (o.a) cfg.wc.a = *o.a;
        if (o.b) cfg.wc.b = *o.b;
        if (o.c) cfg.wc.c = *o.c;
        cfg.wc_set = true;
    }
    if (o.nu) cfg.nu = *o.nu;
    if (o.nv) cfg.nv = *o.nv;
    if (o.tol) cfg.tol = *o.tol;
    if (!o.out_path.empty()) cfg.out_path = o.out_path;
    if (!o.format.empty()) cfg.format = o.format;
    if (o.r) sp.radius = *o.r;
    if (o.lambda) sp.lambda = *o.lambda;
    if (o.mu) sp.mu = *o.mu;
    if (o.eps) sp.eps = *o.eps;
    if (o.r0) sp.r0 = *o.r0;
    if (o.r0p) sp.r0p = *o.r0p;
    if (o.x0.size() == 3) sp.x0 = {o.x0[0], o.x0[1], o.x0[2]};
    if (o.flat_lam) sp.flat_lam = *o.flat_lam;
    if (o.flat_mu) sp.flat_mu = *o.flat_mu;
    if (o.fa) sp.a = *o.fa;
    if (o.perturb) sp.perturb_r = *o.perturb;
    if (!o.f_poly.empty()) sp.f_poly = o.f_poly;
    if (!o.g_poly.empty()) sp.g_poly = o.g_poly;
    if (!o.r_poly.empty()) sp.r_poly = o.r_poly;
    if (!o.kappa_poly.empty()) sp.kappa_poly = o.kappa_poly;
    if (!o.sigma_poly.empty()) sp.sigma_poly = o.sigma_poly;
    if (!o.beta_poly.empty()) sp.beta_poly = o.beta_poly;
    if (o.J) cfg.scan.J = *o.J;
    if (o.samples) cfg.scan.samples = *o.samples;

    bool known = false;
    for (const std::string& f : lw::known_families()) known = known || f == sp.family;
    if (!known) {
        std::string msg = "unknown surface family '" + sp.family + "'; known families:";
        for (const std::string& f : lw::known_families()) msg += " " + f;
        throw CLI::ValidationError(msg);
    }
    return cfg;
}

void emit(const lw::RunConfig& cfg, const std::string& text) {
    if (cfg.out_path.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) throw lw::Error("cannot open '" + cfg.out_path + "' for writing");
    out << text;
}

int cmd_verify(const lw::RunConfig& cfg) {
    const lw::VerificationReport rep = lw::run_suite(cfg);
    emit(cfg, rep.to_json());
    return rep.overall ? 0 : 1;
}

int cmd_curvature(const lw::RunConfig& cfg, const CliOptions& o) {
    const lw::BuiltSurface built = lw::build_surface(cfg.spec);
    const lw::Surface& s = built.surface;
    ordered_json j;
    j["family"] = s.family;
    if (o.u_pt && o.v_pt) {
        const lw::VecJet2 jet = s.eval(*o.u_pt, *o.v_pt);
        const lw::FundamentalForms ff = lw::fundamental_forms(jet);
        const lw::CurvaturePair cp = lw::curvatures(jet);
        j["u"] = *o.u_pt;
        j["v"] = *o.v_pt;
        j["E"] = ff.E;
        j["F"] = ff.F;
        j["G"] = ff.G;
        j["W"] = ff.W;
        j["H"] = cp.H;
        j["K"] = cp.K;
    } else {
        double hmin = 1e300, hmax = -1e300, kmin = 1e300, kmax = -1e300, wmin = 1e300;
        for (int i = 0; i < cfg.nu; ++i)
            for (int k = 0; k < cfg.nv; ++k) {
                const double u =
                    s.domain.umin + (s.domain.umax - s.domain.umin) * i / (cfg.nu - 1);
                const double v =
                    s.domain.vmin + (s.domain.vmax - s.domain.vmin) * k / (cfg.nv - 1);
                const lw::VecJet2 jet = s.eval(u, v);
                const lw::CurvaturePair cp = lw::curvatures(jet);
                const lw::FundamentalForms ff = lw::fundamental_forms(jet);
                hmin = std::min(hmin, cp.H);
                hmax = std::max(hmax, cp.H);
                kmin = std::min(kmin, cp.K);
                kmax = std::max(kmax, cp.K);
                wmin = std::min(wmin, ff.W);
            }
        j["grid"] = {{"nu", cfg.nu}, {"nv", cfg.nv}};
        j["H_min"] = hmin;
        j["H_max"] = hmax;
        j["K_min"] = kmin;
        j["K_max"] = kmax;
        j["W_min"] = wmin;
    }
    emit(cfg, j.dump(2) + "\n");
    return 0;
}

int cmd_residual(const lw::RunConfig& cfg) {
    const lw::BuiltSurface built = lw::build_surface(cfg.spec);
    const lw::Surface& s = built.surface;
    double maxres = 0, maxres_flip = 0, maxphi = 0, phiscale = 0;
    const lw::WeingartenCoeffs flip{-cfg.wc.a, cfg.wc.b, cfg.wc.c};
    for (int i = 0; i < cfg.nu; ++i)
        for (int k = 0; k < cfg.nv; ++k) {
            const double u = s.domain.umin + (s.domain.umax - s.domain.umin) * i / (cfg.nu - 1);
            const double v = s.domain.vmin + (s.domain.vmax - s.domain.vmin) * k / (cfg.nv - 1);
            const lw::VecJet2 jet = s.eval(u, v);
            const lw::CurvaturePair cp = lw::curvatures(jet);
            maxres = std::max(maxres, std::fabs(lw::weingarten_residual(cp, cfg.wc)));
            maxres_flip = std::max(maxres_flip, std::fabs(lw::weingarten_residual(cp, flip)));
            const lw::ResidualParts<double> parts = lw::residual_parts(jet, cfg.wc);
            maxphi = std::max(maxphi, std::fabs(parts.phi));
            const double wmag = std::fabs(parts.W);
            const double p_eff = std::fmax(parts.p_bound, 2 * wmag * std::sqrt(wmag));
            const double q_eff = std::fmax(parts.q_bound, wmag * wmag);
            const double t2 = std::fabs(cfg.wc.c) * wmag * wmag + std::fabs(cfg.wc.b) * q_eff;
            phiscale = std::fmax(phiscale,
                                 std::fmax(cfg.wc.a * cfg.wc.a * p_eff * p_eff * wmag,
                                           4 * t2 * t2));
        }
    ordered_json j;
    j["family"] = s.family;
    j["weingarten"] = {{"a", cfg.wc.a}, {"b", cfg.wc.b}, {"c", cfg.wc.c}};
    j["residual_max"] = maxres;
    j["residual_max_flipped_a"] = maxres_flip;
    j["rationalized_max"] = maxphi;
    j["rationalized_max_normalized"] = maxphi / std::fmax(phiscale, 1e-300);
    emit(cfg, j.dump(2) + "\n");
    return 0;
}

int cmd_coeffs(const lw::RunConfig& cfg) {
    const lw::BuiltSurface built = lw::build_surface(cfg.spec);
    lw::WeingartenCoeffs wc = cfg.wc;
    const lw::ScanResult scan = lw::coefficient_scan(built.surface, wc, cfg.scan);
    ordered_json j;
    j["family"] = built.surface.family;
    j["weingarten"] = {{"a", wc.a}, {"b", wc.b}, {"c", wc.c}};
    j["channel"] = scan.channel_used == lw::ScanChannel::MeanBracket ? "mean-bracket"
                   : scan.channel_used == lw::ScanChannel::GaussBracket ? "gauss-bracket"
                                                                        : "rationalized";
    j["summary"] = scan.summary;
    ordered_json spectra = ordered_json::array();
    for (const lw::CoefficientSpectrum& sp : scan.spectra) {
        ordered_json e;
        e["u"] = sp.u;
        e["mode"] = sp.mode == lw::SpectrumMode::Harmonic ? "harmonic" : "monomial";
        e["scale"] = sp.scale;
        e["A"] = sp.A;
        if (sp.mode == lw::SpectrumMode::Harmonic) e["B"] = sp.B;
        spectra.push_back(e);
    }
    j["spectra"] = spectra;
    emit(cfg, j.dump(2) + "\n");
    return 0;
}

int cmd_mesh(const lw::RunConfig& cfg) {
    const lw::BuiltSurface built = lw::build_surface(cfg.spec);
    const std::string path = cfg.out_path.empty() ? ("mesh." + cfg.format) : cfg.out_path;
    if (cfg.format == "obj")
        lw::export_obj(built.surface, cfg.nu, cfg.nv, path);
    else if (cfg.format == "csv")
        lw::export_csv(built.surface, cfg.nu, cfg.nv, cfg.wc, path);
    else
        throw CLI::ValidationError("mesh: --format must be obj or csv");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"linear Weingarten cyclic surface toolkit (Minkowski 3-space)"};
    app.require_subcommand(1);

    CliOptions o;
    CLI::App* verify = app.add_subcommand("verify", "run the family's verification suite");
    CLI::App* curvature = app.add_subcommand("curvature", "H and K at a point or over a grid");
    CLI::App* residual = app.add_subcommand("residual", "Weingarten and rationalized residual scan");
    CLI::App* coeffs = app.add_subcommand("coeffs", "coefficient spectra of the residual");
    CLI::App* mesh = app.add_subcommand("mesh", "export the surface grid (obj or csv)");
    for (CLI::App* cmd : {verify, curvature, residual, coeffs, mesh}) add_common(cmd, o);
    curvature->add_option("--u", o.u_pt, "evaluation point u");
    curvature->add_option("--v", o.v_pt, "evaluation point v");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help() << std::flush;
        return 2;
    }

    try {
        const lw::RunConfig cfg = make_config(o);
        if (verify->parsed()) return cmd_verify(cfg);
        if (curvature->parsed()) return cmd_curvature(cfg, o);
        if (residual->parsed()) return cmd_residual(cfg);
        if (coeffs->parsed()) return cmd_coeffs(cfg);
        if (mesh->parsed()) return cmd_mesh(cfg);
        return 2;
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const lw::IntegrationError& e) {
        std::cerr << "integration failure: " << e.what() << " (reached span [" << e.reached_lo
                  << ", " << e.reached_hi << "])\n";
        return 3;
    } catch (const lw::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
}
