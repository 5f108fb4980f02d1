#include "lw/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lw {

namespace {

// Dormand-Prince 5(4) tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// difference between the 5th-order and the embedded 4th-order weights
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// dense-output weights
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

bool finite(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

double initial_step(const IvpProblem& p, const std::vector<double>& f0, double dir) {
    const int n = p.dim;
    double d0 = 0, dd1 = 0;
    for (int i = 0; i < n; ++i) {
        const double sc = p.atol + p.rtol * std::fabs(p.y0[i]);
        d0 += (p.y0[i] / sc) * (p.y0[i] / sc);
        dd1 += (f0[i] / sc) * (f0[i] / sc);
    }
    d0 = std::sqrt(d0 / n);
    dd1 = std::sqrt(dd1 / n);
    double h0 = (d0 < 1e-5 || dd1 < 1e-5) ? 1e-6 : 0.01 * d0 / dd1;
    h0 = std::min(h0, std::fabs(p.t1 - p.t0));
    // one explicit Euler probe to estimate the second derivative
    std::vector<double> y1(n), f1(n);
    for (int i = 0; i < n; ++i) y1[i] = p.y0[i] + dir * h0 * f0[i];
    p.rhs(p.t0 + dir * h0, y1, f1);
    double d2 = 0;
    for (int i = 0; i < n; ++i) {
        const double sc = p.atol + p.rtol * std::fabs(p.y0[i]);
        d2 += ((f1[i] - f0[i]) / sc) * ((f1[i] - f0[i]) / sc);
    }
    d2 = std::sqrt(d2 / n) / h0;
    const double m = std::max(dd1, d2);
    const double h1 = (m <= 1e-15) ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / m, 0.2);
    return std::min({100 * h0, h1, std::fabs(p.t1 - p.t0)});
}

}  // namespace

DenseSolution integrate_core(const IvpProblem& p,
                             const std::function<double(const std::vector<double>&)>* guard) {
    if (p.dim <= 0 || static_cast<int>(p.y0.size()) != p.dim)
        throw PreconditionError("integrate_ivp: dimension/initial state mismatch");
    if (!(p.rtol > 0) || !(p.atol > 0))
        throw PreconditionError("integrate_ivp: tolerances must be positive");
    if (p.t0 == p.t1) throw PreconditionError("integrate_ivp: degenerate span");

    const int n = p.dim;
    const double dir = (p.t1 > p.t0) ? 1.0 : -1.0;

    DenseSolution sol;
    sol.dim_ = n;
    sol.t_begin_ = p.t0;
    sol.t_end_ = p.t0;
    sol.forward_ = dir > 0;
    sol.y_begin_ = p.y0;
    sol.rhs_ = p.rhs;

    std::vector<double> y = p.y0, ynew(n), ytmp(n);
    std::vector<std::vector<double>> k(7, std::vector<double>(n));
    double t = p.t0;

    p.rhs(t, y, k[0]);
    if (!finite(k[0]))
        throw IntegrationError("integrate_ivp: non-finite right-hand side at t0", t, t);
    if (guard && !((*guard)(y) > 0))
        throw PreconditionError("event_stop: guard must be positive at the initial state");

    double h = (p.fixed_step > 0) ? p.fixed_step : initial_step(p, k[0], dir);
    h = std::min(h, std::fabs(p.t1 - p.t0));

    bool rejected = false;

    for (long step = 0; step < p.max_steps; ++step) {
        if (dir * (t - p.t1) >= 0) {
            sol.complete_ = true;
            return sol;
        }
        bool last = false;
        if (h >= std::fabs(p.t1 - t) * (1.0 - 1e-14)) {
            h = std::fabs(p.t1 - t);
            last = true;
        }
        if (!last && h <= 16 * std::numeric_limits<double>::epsilon() * std::max(std::fabs(t), 1.0))
            throw IntegrationError("integrate_ivp: step size underflow (blow-up?)", sol.t_begin_,
                                   t);
        const double hs = dir * h;

        auto stage = [&](int s, double c, auto... aw) {
            const double coef[] = {aw...};
            for (int i = 0; i < n; ++i) {
                double acc = 0;
                for (int m = 0; m < s - 1; ++m) acc += coef[m] * k[m][i];
                ytmp[i] = y[i] + hs * acc;
            }
            p.rhs(t + c * hs, ytmp, k[s - 1]);
        };
        stage(2, c2, a21);
        stage(3, c3, a31, a32);
        stage(4, c4, a41, a42, a43);
        stage(5, c5, a51, a52, a53, a54);
        stage(6, 1.0, a61, a62, a63, a64, a65);
        for (int i = 0; i < n; ++i)
            ynew[i] = y[i] + hs * (b1 * k[0][i] + b3 * k[2][i] + b4 * k[3][i] + b5 * k[4][i] +
                                   b6 * k[5][i]);
        p.rhs(t + hs, ynew, k[6]);

        const bool ok = finite(ynew) && finite(k[6]);
        double errnorm = 0;
        if (ok && p.fixed_step <= 0) {
            for (int i = 0; i < n; ++i) {
                const double ei = hs * (e1 * k[0][i] + e3 * k[2][i] + e4 * k[3][i] +
                                        e5 * k[4][i] + e6 * k[5][i] + e7 * k[6][i]);
                const double sc = p.atol + p.rtol * std::max(std::fabs(y[i]), std::fabs(ynew[i]));
                errnorm += (ei / sc) * (ei / sc);
            }
            errnorm = std::sqrt(errnorm / n);
        }

        if (!ok && p.fixed_step > 0)
            throw IntegrationError("integrate_ivp: non-finite state in fixed-step mode",
                                   sol.t_begin_, t);
        if (!ok || (p.fixed_step <= 0 && errnorm > 1.0)) {
            const double fac = ok ? std::max(0.2, 0.9 * std::pow(errnorm, -0.2)) : 0.5;
            h *= std::min(1.0, fac);
            rejected = true;
            continue;
        }

        DenseSolution::Step st;
        st.t = t;
        st.h = hs;
        st.r1 = y;
        st.r2.resize(n);
        st.r3.resize(n);
        st.r4.resize(n);
        st.r5.resize(n);
        st.y_end = ynew;
        for (int i = 0; i < n; ++i) {
            const double dy = ynew[i] - y[i];
            st.r2[i] = dy;
            st.r3[i] = hs * k[0][i] - dy;
            st.r4[i] = dy - hs * k[6][i] - st.r3[i];
            st.r5[i] = hs * (d1 * k[0][i] + d3 * k[2][i] + d4 * k[3][i] + d5 * k[4][i] +
                             d6 * k[5][i] + d7 * k[6][i]);
        }
        sol.steps_.push_back(std::move(st));

        t = last ? p.t1 : t + hs;
        y.swap(ynew);
        k[0] = k[6];  // FSAL
        sol.t_end_ = t;

        if (guard) {
            const double g = (*guard)(y);
            if (g <= 0) {
                // bisect theta over the accepted step's interpolant
                const DenseSolution::Step& s2 = sol.steps_.back();
                std::vector<double> ymid(n);
                auto geval = [&](double th) {
                    const double th1 = 1.0 - th;
                    for (int i = 0; i < n; ++i)
                        ymid[i] = s2.r1[i] + th * (s2.r2[i] +
                                                   th1 * (s2.r3[i] + th * (s2.r4[i] + th1 * s2.r5[i])));
                    return (*guard)(ymid);
                };
                double lo = 0.0, hi = 1.0;
                while ((hi - lo) * std::fabs(s2.h) > 1e-12) {
                    const double mid = 0.5 * (lo + hi);
                    if (geval(mid) > 0)
                        lo = mid;
                    else
                        hi = mid;
                }
                geval(hi);
                sol.steps_.back().y_end = ymid;  // interpolant stays valid on [0, hi]
                sol.t_end_ = s2.t + hi * s2.h;
                sol.stop_reason_ = "event";
                sol.complete_ = false;
                return sol;
            }
        }

        if (p.fixed_step <= 0) {
            double fac = 0.9 * std::pow(std::max(errnorm, 1e-16), -0.2);
            fac = std::min(rejected ? 1.0 : 10.0, std::max(0.2, fac));
            h *= fac;
            rejected = false;
        } else {
            h = p.fixed_step;
        }
    }
    if (dir * (t - p.t1) >= 0) {
        sol.complete_ = true;
        return sol;
    }
    throw IntegrationError("integrate_ivp: max step count exceeded", sol.t_begin_, t);
}

DenseSolution integrate_ivp(const IvpProblem& p) { return integrate_core(p, nullptr); }

DenseSolution event_stop(const IvpProblem& p,
                         const std::function<double(const std::vector<double>&)>& guard) {
    return integrate_core(p, &guard);
}

bool DenseSolution::contains(double t) const {
    return forward_ ? (t >= t_begin_ && t <= t_end_) : (t <= t_begin_ && t >= t_end_);
}

const DenseSolution::Step& DenseSolution::locate(double t) const {
    if (!contains(t)) throw DomainError("dense_eval: t outside the solved span");
    size_t lo = 0, hi = steps_.size();
    while (hi - lo > 1) {
        const size_t mid = (lo + hi) / 2;
        const bool before = forward_ ? (t < steps_[mid].t) : (t > steps_[mid].t);
        if (before)
            hi = mid;
        else
            lo = mid;
    }
    return steps_[lo];
}

void DenseSolution::eval(double t, std::vector<double>& y) const {
    if (steps_.empty()) throw DomainError("dense_eval: empty solution");
    if (t == t_begin_) {
        y = y_begin_;
        return;
    }
    if (t == t_end_) {
        y = steps_.back().y_end;
        return;
    }
    const Step& s = locate(t);
    if (t == s.t) {
        y = s.r1;
        return;
    }
    const double th = (t - s.t) / s.h, th1 = 1.0 - th;
    y.resize(s.r1.size());
    for (size_t i = 0; i < y.size(); ++i)
        y[i] = s.r1[i] + th * (s.r2[i] + th1 * (s.r3[i] + th * (s.r4[i] + th1 * s.r5[i])));
}

void DenseSolution::eval(double t, std::vector<double>& y, std::vector<double>& dy) const {
    eval(t, y);
    dy.resize(y.size());
    rhs_(t, y, dy);
}

std::vector<double> DenseSolution::operator()(double t) const {
    std::vector<double> y;
    eval(t, y);
    return y;
}

}  // namespace lw
