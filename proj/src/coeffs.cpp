#include "lw/coeffs.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

namespace lw {

namespace {
constexpr double kTau = 2.0 * std::numbers::pi;
}

double CoefficientSpectrum::normalized_max() const {
    double m = 0;
    for (double a : A) m = std::fmax(m, std::fabs(a));
    for (double b : B) m = std::fmax(m, std::fabs(b));
    return m / std::fmax(scale, 1e-300);
}

CoefficientSpectrum extract_harmonics(const std::function<double(double)>& residual_at_u, int J,
                                      int N) {
    if (J < 0 || J > N / 2 - 1)
        throw PreconditionError("extract_harmonics: need 0 <= J <= N/2 - 1");
    std::vector<double> s(static_cast<size_t>(N));
    double amax = 0;
    for (int k = 0; k < N; ++k) {
        const double v = kTau * k / N;
        s[k] = residual_at_u(v);
        if (!std::isfinite(s[k]))
            throw Error("extract_harmonics: non-finite sample at v = " + std::to_string(v));
        amax = std::fmax(amax, std::fabs(s[k]));
    }
    CoefficientSpectrum out;
    out.mode = SpectrumMode::Harmonic;
    out.max_index = J;
    out.A.assign(J + 1, 0.0);
    out.B.assign(J + 1, 0.0);
    out.scale = std::fmax(amax, 1e-300);
    for (int j = 0; j <= J; ++j) {
        double ca = 0, sb = 0;
        for (int k = 0; k < N; ++k) {
            const double ang = kTau * j * k / N;
            ca += s[k] * std::cos(ang);
            sb += s[k] * std::sin(ang);
        }
        out.A[j] = (j == 0 ? 1.0 : 2.0) * ca / N;
        if (j > 0) out.B[j] = 2.0 * sb / N;
    }
    return out;
}

CoefficientSpectrum extract_poly_coeffs(const std::function<double(double)>& residual_at_u, int J,
                                        double vmin, double vmax) {
    if (J < 0 || J > 16) throw PreconditionError("extract_poly_coeffs: need 0 <= J <= 16");
    if (!(vmax > vmin)) throw PreconditionError("extract_poly_coeffs: empty interval");
    const int n = J + 5;
    const double mid = 0.5 * (vmin + vmax), half = 0.5 * (vmax - vmin);

    Eigen::MatrixXd V(n, J + 1);
    Eigen::VectorXd rhs(n);
    double amax = 0;
    for (int i = 0; i < n; ++i) {
        const double x = std::cos(std::numbers::pi * (2.0 * i + 1.0) / (2.0 * n));
        const double v = mid + half * x;
        const double y = residual_at_u(v);
        if (!std::isfinite(y))
            throw Error("extract_poly_coeffs: non-finite sample at v = " + std::to_string(v));
        rhs(i) = y;
        amax = std::fmax(amax, std::fabs(y));
        double p = 1.0;
        for (int j = 0; j <= J; ++j) {
            V(i, j) = p;
            p *= x;
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(V, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double cond = svd.singularValues()(0) / svd.singularValues()(J);
    if (!(cond < 1e12))
        throw Error("extract_poly_coeffs: fit is ill-conditioned; reduce J or the interval");
    const Eigen::VectorXd cx = svd.solve(rhs);

    // map coefficients of x = (v - mid)/half back to monomials in v
    std::vector<double> cv(static_cast<size_t>(J) + 1, 0.0);
    std::vector<double> binom(static_cast<size_t>(J) + 1);
    for (int k = 0; k <= J; ++k) {
        // expand cx[k] * ((v - mid)/half)^k
        binom[0] = 1.0;
        for (int j = 1; j <= k; ++j) binom[j] = binom[j - 1] * (k - j + 1) / j;
        const double sk = std::pow(1.0 / half, k);
        double mpow = 1.0;
        for (int j = k; j >= 0; --j) {
            cv[j] += cx(k) * sk * binom[j] * mpow;
            mpow *= -mid;
        }
    }

    CoefficientSpectrum out;
    out.mode = SpectrumMode::Monomial;
    out.max_index = J;
    out.A = std::move(cv);
    out.scale = std::fmax(amax, 1e-300);
    out.u = 0;
    return out;
}

namespace {

struct ChannelSample {
    double value_re, value_im;  // im unused on the real path
    double scale;
};

ScanChannel pick_channel(const WeingartenCoeffs& wc, ScanChannel requested) {
    if (requested != ScanChannel::Auto) return requested;
    if (wc.b == 0 && wc.c == 0) return ScanChannel::MeanBracket;
    if (wc.a == 0 && wc.c == 0) return ScanChannel::GaussBracket;
    return ScanChannel::Rationalized;
}

template <typename T>
ChannelSample channel_sample(const ResidualParts<T>& p, const WeingartenCoeffs& wc,
                             ScanChannel ch) {
    using detail::mag;
    const double wmag = mag(p.W);
    const double p_eff = std::fmax(p.p_bound, 2.0 * wmag * std::sqrt(wmag));
    const double q_eff = std::fmax(p.q_bound, wmag * wmag);
    ChannelSample out{};
    T val{};
    switch (ch) {
        case ScanChannel::MeanBracket:
            val = p.P;
            out.scale = p_eff;
            break;
        case ScanChannel::GaussBracket:
            val = p.Q;
            out.scale = q_eff;
            break;
        default: {
            val = p.phi;
            const double t1 = wc.a * wc.a * p_eff * p_eff * wmag;
            const double t2 = std::fabs(wc.c) * wmag * wmag + std::fabs(wc.b) * q_eff;
            out.scale = std::fmax(t1, 4.0 * t2 * t2);
            break;
        }
    }
    if constexpr (std::is_same_v<T, double>) {
        out.value_re = val;
        out.value_im = 0;
    } else {
        out.value_re = val.real();
        out.value_im = val.imag();
    }
    return out;
}

}  // namespace

CoefficientSpectrum scan_at_u(const Surface& s, const WeingartenCoeffs& wc, double u,
                              const ScanOptions& opt) {
    if (wc.a == 0 && wc.b == 0)
        throw PreconditionError("coefficient_scan: a and b cannot both vanish");
    const ScanChannel ch = pick_channel(wc, opt.channel);
    CoefficientSpectrum out;

    if (s.foliation == Foliation::Parabolic) {
        double scale = 0;
        auto sampler = [&](double v) {
            const ResidualParts<double> p = residual_parts(s.eval(u, v), wc, opt.wpower);
            const ChannelSample cs = channel_sample(p, wc, ch);
            scale = std::fmax(scale, cs.scale);
            return cs.value_re;
        };
        out = extract_poly_coeffs(sampler, opt.J_mono, opt.mono_vmin, opt.mono_vmax);
        out.scale = std::fmax(scale, 1e-300);
    } else if (s.foliation == Foliation::Circular) {
        double scale = 0;
        auto sampler = [&](double v) {
            const ResidualParts<double> p = residual_parts(s.eval(u, v), wc, opt.wpower);
            const ChannelSample cs = channel_sample(p, wc, ch);
            scale = std::fmax(scale, cs.scale);
            return cs.value_re;
        };
        out = extract_harmonics(sampler, opt.J, opt.samples);
        out.scale = std::fmax(scale, 1e-300);
    } else {
        // hyperbolic foliation: evaluate at v = i*theta, where the expansion
        // sum A_j cosh(jv) + B_j sinh(jv) becomes sum A_j cos + i B_j sin
        if (!s.eval_at_iv)
            throw PreconditionError(
                "coefficient_scan: hyperbolic surface lacks a complexified evaluator");
        const int N = opt.samples;
        double scale = 0;
        std::vector<double> re(static_cast<size_t>(N)), im(static_cast<size_t>(N));
        for (int k = 0; k < N; ++k) {
            const double th = kTau * k / N;
            const ResidualParts<std::complex<double>> p =
                residual_parts(s.eval_at_iv(u, th), wc, opt.wpower);
            const ChannelSample cs = channel_sample(p, wc, ch);
            scale = std::fmax(scale, cs.scale);
            re[k] = cs.value_re;
            im[k] = cs.value_im;
            if (!std::isfinite(re[k]) || !std::isfinite(im[k]))
                throw Error("coefficient_scan: non-finite sample at theta = " +
                            std::to_string(th));
        }
        out.mode = SpectrumMode::Harmonic;
        out.max_index = opt.J;
        out.A.assign(opt.J + 1, 0.0);
        out.B.assign(opt.J + 1, 0.0);
        for (int j = 0; j <= opt.J; ++j) {
            double ca = 0, sb = 0;
            for (int k = 0; k < N; ++k) {
                const double ang = kTau * j * k / N;
                ca += re[k] * std::cos(ang);
                sb += im[k] * std::sin(ang);
            }
            out.A[j] = (j == 0 ? 1.0 : 2.0) * ca / N;
            if (j > 0) out.B[j] = 2.0 * sb / N;
        }
        out.scale = std::fmax(scale, 1e-300);
    }
    out.u = u;
    return out;
}

ScanResult coefficient_scan(const Surface& s, const WeingartenCoeffs& wc, const ScanOptions& opt) {
    ScanResult res;
    res.channel_used = pick_channel(wc, opt.channel);
    const int nu = std::max(opt.nu, 2);
    for (int i = 0; i < nu; ++i) {
        const double u =
            s.domain.umin + (s.domain.umax - s.domain.umin) * (i + 0.5) / nu;
        CoefficientSpectrum sp = scan_at_u(s, wc, u, opt);
        res.summary = std::fmax(res.summary, sp.normalized_max());
        res.spectra.push_back(std::move(sp));
    }
    return res;
}

const char* to_string(FormulaId id) {
    switch (id) {
        case FormulaId::S311_A4: return "S311_A4";
        case FormulaId::S311_A2: return "S311_A2";
        case FormulaId::S311_B1: return "S311_B1";
        case FormulaId::S312_A8: return "S312_A8";
        case FormulaId::S312_B8: return "S312_B8";
        case FormulaId::S321_A4: return "S321_A4";
        case FormulaId::S321_A2: return "S321_A2";
        case FormulaId::S321_A1: return "S321_A1";
        case FormulaId::S322_A8: return "S322_A8";
        case FormulaId::S322_B8: return "S322_B8";
        case FormulaId::S331_A6: return "S331_A6";
        case FormulaId::S331_A3: return "S331_A3";
        case FormulaId::S332_B8: return "S332_B8";
        case FormulaId::S332_B3: return "S332_B3";
        case FormulaId::S411_B8: return "S411_B8";
        case FormulaId::S411_A8_beta0: return "S411_A8_beta0";
        case FormulaId::S412_A8_x1: return "S412_A8_x1";
        case FormulaId::S412_B8_x2: return "S412_B8_x2";
    }
    return "?";
}

namespace {

struct In {
    const std::map<std::string, double>& m;
    double operator()(const char* key) const {
        auto it = m.find(key);
        if (it == m.end())
            throw Error(std::string("paper_formula: missing symbol '") + key + "'");
        return it->second;
    }
};

double sq(double x) { return x * x; }
double p4(double x) { return sq(sq(x)); }

}  // namespace

double paper_formula(FormulaId id, const std::map<std::string, double>& inputs) {
    const In in{inputs};
    switch (id) {
        case FormulaId::S311_A4: {
            const double a = in("a"), r = in("r"), rp = in("rp"), gp = in("gp"), gpp = in("gpp");
            return 0.125 * sq(a) * std::pow(r, 6) * sq(gp) * sq(r * gpp - 2 * rp * gp);
        }
        case FormulaId::S311_A2: {
            const double a = in("a"), r = in("r"), rp = in("rp"), rpp = in("rpp"),
                         l = in("lambda");
            const double A = -1 + sq(l) * p4(r) + sq(rp) - r * rpp;
            return 0.5 * sq(l) * std::pow(r, 8) * (4 * sq(rp) - sq(a) * sq(r) * sq(A));
        }
        case FormulaId::S311_B1: {
            const double a = in("a"), r = in("r"), rp = in("rp"), rpp = in("rpp"),
                         l = in("lambda");
            const double A = -1 + sq(l) * p4(r) + sq(rp) - r * rpp;
            return 2 * l * std::pow(r, 7) * rp * (sq(a) * r * sq(A) - 2 * rpp);
        }
        case FormulaId::S312_A8: {
            const double c = in("c"), r = in("r"), fp = in("fp"), gp = in("gp");
            return -(1.0 / 32) * sq(c) * std::pow(r, 8) *
                   (std::pow(fp, 8) - 28 * std::pow(fp, 6) * sq(gp) +
                    70 * sq(fp) * std::pow(gp, 6) + std::pow(gp, 8));
        }
        case FormulaId::S312_B8: {
            const double c = in("c"), r = in("r"), fp = in("fp"), gp = in("gp");
            return 0.25 * sq(c) * std::pow(r, 8) * fp * gp *
                   (-std::pow(fp, 6) - 7 * p4(fp) * sq(gp) - 7 * sq(fp) * p4(gp) +
                    std::pow(gp, 6));
        }
        case FormulaId::S321_A4: {
            const double a = in("a"), r = in("r"), rp = in("rp"), gp = in("gp"), gpp = in("gpp");
            return -0.125 * sq(a) * std::pow(r, 6) * sq(gp) * sq(-2 * rp * gp + r * gpp);
        }
        case FormulaId::S321_A2: {
            const double a = in("a"), r = in("r"), rp = in("rp"), rpp = in("rpp"), m = in("mu");
            const double A = -1 + sq(m) * p4(r) - sq(rp) + r * rpp;
            return -0.5 * sq(m) * std::pow(r, 8) * (4 * sq(rp) + sq(a) * sq(r) * sq(A));
        }
        case FormulaId::S321_A1: {
            const double a = in("a"), r = in("r"), rp = in("rp"), rpp = in("rpp"), m = in("mu");
            const double A = -1 + sq(m) * p4(r) - sq(rp) + r * rpp;
            return -2 * m * std::pow(r, 7) * rp * (2 * rpp + sq(a) * r * sq(A));
        }
        case FormulaId::S322_A8: {
            const double c = in("c"), r = in("r"), fp = in("fp"), gp = in("gp");
            return -(1.0 / 32) * sq(c) * std::pow(r, 8) *
                   (std::pow(fp, 8) + 28 * std::pow(fp, 6) * sq(gp) +
                    70 * sq(fp) * std::pow(gp, 6) + std::pow(gp, 8));
        }
        case FormulaId::S322_B8: {
            const double c = in("c"), r = in("r"), fp = in("fp"), gp = in("gp");
            return 0.25 * sq(c) * std::pow(r, 8) * fp * gp *
                   (std::pow(fp, 6) + 7 * p4(fp) * sq(gp) + 7 * sq(fp) * p4(gp) +
                    std::pow(gp, 6));
        }
        case FormulaId::S331_A6: {
            const double a = in("a"), r = in("r"), rp = in("rp"), rpp = in("rpp");
            return -2 * sq(a) * (2 * sq(r) - rp) * sq(-4 * r * rp + rpp);
        }
        case FormulaId::S331_A3: {
            const double a = in("a"), fp = in("fp"), fpp = in("fpp"), l = in("lambda"),
                         u = in("u");
            return 16 * sq(a) * fp * sq(-4 * fp + (2 * u + l) * fpp) / std::pow(2 * u + l, 5);
        }
        case FormulaId::S332_B8: {
            const double c = in("c"), r = in("r"), rp = in("rp");
            return -64 * sq(c) * p4(-2 * sq(r) + rp);
        }
        case FormulaId::S332_B3: {
            const double c = in("c"), fp = in("fp"), m = in("mu"), u = in("u");
            return 1024 * sq(c) * p4(fp) / std::pow(2 * u + m, 5);
        }
        case FormulaId::S411_B8: {
            const double a = in("a"), r = in("r"), k = in("kappa"), be = in("beta"),
                         ga = in("gamma");
            return be * ga *
                   (2 * sq(a) * (3 * p4(be) - 10 * sq(be) * sq(ga) + 3 * p4(ga)) +
                    sq(k) * (1 + 12 * sq(a) * sq(r)) * (sq(ga) - sq(be)) +
                    sq(r) * p4(k) * (1 + 6 * sq(a) * sq(r)));
        }
        case FormulaId::S411_A8_beta0: {
            const double a = in("a"), r = in("r"), k = in("kappa"), ga = in("gamma");
            return sq(sq(ga) + sq(r) * sq(k)) * (4 * sq(a) * sq(ga) + (1 + 4 * sq(a) * sq(r)) * sq(k));
        }
        case FormulaId::S412_A8_x1: {
            const double a = in("a"), b = in("b"), r = in("r"), k = in("kappa"), be = in("beta"),
                         ga = in("gamma");
            const double s = sq(a) + 2 * b;
            const double x1 =
                std::pow(be, 8) - (28 * sq(ga) + sq(k) * (s + 4 * sq(r))) * std::pow(be, 6) +
                (70 * p4(ga) +
                 15 * sq(ga) * sq(k) *
                     (2 * (s + 4 * sq(r)) + p4(k) * (sq(b) + 3 * s * sq(r) + 6 * p4(r)))) *
                    p4(be) +
                (-28 * std::pow(ga, 6) - 15 * p4(ga) * sq(k) * (s + 4 * sq(r)) -
                 std::pow(k, 6) * sq(r) * (2 * sq(b) + 3 * s * sq(r) + 4 * p4(r)) -
                 6 * sq(ga) * p4(k) * (sq(b) + 3 * s * sq(r) + 6 * p4(r))) *
                    sq(be) +
                sq(sq(ga) + sq(r) * sq(k)) *
                    (p4(ga) + sq(ga) * sq(k) * (s + 2 * sq(r)) +
                     p4(k) * (sq(b) + s * sq(r) + p4(r)));
            return -(1.0 / 32) * std::pow(r, 8) * x1;
        }
        case FormulaId::S412_B8_x2: {
            // the printed "m" in the be^4 group has no definition; a^2 is the
            // evident intent and is substituted here
            const double a = in("a"), b = in("b"), r = in("r"), k = in("kappa"), be = in("beta"),
                         ga = in("gamma");
            const double s = sq(a) + 2 * b;
            const double x2 =
                -4 * std::pow(be, 6) + (28 * sq(ga) + 3 * sq(k) * (sq(a) + 2 * b + 4 * sq(r))) * p4(be) -
                2 *
                    (14 * p4(ga) + 5 * sq(ga) * sq(k) * (s + 4 * sq(r)) +
                     p4(k) * (sq(b) + 3 * s * sq(r) + 6 * p4(r))) *
                    sq(be) +
                (sq(ga) + sq(r) * sq(k)) *
                    (4 * p4(ga) + sq(ga) * sq(k) * (3 * sq(a) + 6 * b + 8 * sq(r)) +
                     p4(k) * (2 * sq(b) + 3 * s * sq(r) + 4 * p4(r)));
            return (1.0 / 16) * be * ga * std::pow(r, 8) * x2;
        }
    }
    throw Error("paper_formula: unknown id");
}

}  // namespace lw
