#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lw/ode.hpp"

using namespace lw;

namespace {

IvpProblem exponential(double t1 = 1.0, double rtol = 1e-10, double atol = 1e-12) {
    IvpProblem p;
    p.dim = 1;
    p.rhs = [](double, const std::vector<double>& y, std::vector<double>& dy) { dy[0] = y[0]; };
    p.t0 = 0;
    p.t1 = t1;
    p.y0 = {1.0};
    p.rtol = rtol;
    p.atol = atol;
    return p;
}

IvpProblem oscillator(double t1) {
    IvpProblem p;
    p.dim = 2;
    p.rhs = [](double, const std::vector<double>& y, std::vector<double>& dy) {
        dy[0] = y[1];
        dy[1] = -y[0];
    };
    p.t0 = 0;
    p.t1 = t1;
    p.y0 = {1.0, 0.0};
    return p;
}

// Remark-style radius system: r'' = (k4 r^4 + r'^2 - 1)/r, f' = lam r^2
IvpProblem radius_system(double k4, double lam, double mu, double t1) {
    IvpProblem p;
    p.dim = 4;
    p.rhs = [k4, lam, mu](double, const std::vector<double>& y, std::vector<double>& dy) {
        dy[0] = y[1];
        dy[1] = (k4 * y[0] * y[0] * y[0] * y[0] + y[1] * y[1] - 1.0) / y[0];
        dy[2] = lam * y[0] * y[0];
        dy[3] = mu * y[0] * y[0];
    };
    p.t0 = 0;
    p.t1 = t1;
    p.y0 = {1.0, 0.0, 0.0, 0.0};
    return p;
}

}  // namespace

TEST_CASE("y' = y reaches e within 1e-8 at tol 1e-10") {
    const DenseSolution s = integrate_ivp(exponential());
    CHECK(s.complete());
    CHECK(std::fabs(s(1.0)[0] - std::exp(1.0)) < 1e-8);
}

TEST_CASE("harmonic oscillator energy drift below 1e-8 over [0, 20]") {
    const DenseSolution s = integrate_ivp(oscillator(20.0));
    double drift = 0;
    for (int i = 0; i <= 400; ++i) {
        const std::vector<double> y = s(20.0 * i / 400);
        drift = std::fmax(drift, std::fabs(y[0] * y[0] + y[1] * y[1] - 1.0));
    }
    CHECK(drift < 1e-8);
}

TEST_CASE("radius system with lambda = mu = 0 reproduces r = cos u") {
    const DenseSolution s = integrate_ivp(radius_system(0, 0, 0, 1.2));
    CHECK(std::fabs(s(0.5)[0] - std::cos(0.5)) < 1e-8);
    for (int i = 1; i <= 10; ++i) {
        const double u = 1.2 * i / 10;
        CHECK(std::fabs(s(u)[0] - std::cos(u)) < 1e-8);
    }
}

TEST_CASE("dense output: knots exact, midpoints accurate, derivative consistent") {
    const DenseSolution s = integrate_ivp(exponential());
    std::vector<double> y, dy;
    s.eval(1.0, y);
    const std::vector<double> y_end = s(1.0);
    CHECK(y[0] == y_end[0]);  // bitwise at the endpoint
    s.eval(0.0, y);
    CHECK(y[0] == 1.0);

    for (int i = 1; i < 20; ++i) {
        const double t = i / 20.0;
        s.eval(t, y, dy);
        CHECK(std::fabs(y[0] - std::exp(t)) < 1e-8);
        CHECK(std::fabs(dy[0] - y[0]) < 1e-12);  // rhs evaluated at the interpolated state
    }
    CHECK_THROWS_AS(s(1.5), DomainError);
    CHECK_THROWS_AS(s(-0.1), DomainError);

    // f-component derivative slot equals lam r^2
    const DenseSolution rs = integrate_ivp(radius_system(0.13, 0.2, 0.3, 1.0));
    rs.eval(0.37, y, dy);
    CHECK(dy[2] == doctest::Approx(0.2 * y[0] * y[0]).epsilon(1e-12));
}

TEST_CASE("fixed-step order study: halving h cuts the error at least 4x") {
    // order-5 scheme: the observed ratio is ~32 per halving
    double prev = -1;
    for (double h : {0.1, 0.05, 0.025}) {
        IvpProblem p = exponential();
        p.fixed_step = h;
        const double err = std::fabs(integrate_ivp(p)(1.0)[0] - std::exp(1.0));
        if (prev > 0) CHECK(prev / err >= 4.0);
        prev = err;
    }
}

TEST_CASE("tightening tolerances improves the endpoint error monotonically") {
    double prev = -1;
    for (double tol : {1e-6, 1e-8, 1e-10}) {
        const double err =
            std::fabs(integrate_ivp(exponential(1.0, tol, tol * 1e-2))(1.0)[0] - std::exp(1.0));
        if (prev > 0) CHECK(err < prev);
        prev = err;
    }
}

TEST_CASE("determinism: identical problems give bit-identical meshes") {
    const DenseSolution a = integrate_ivp(radius_system(0.13, 0.2, 0.3, 1.0));
    const DenseSolution b = integrate_ivp(radius_system(0.13, 0.2, 0.3, 1.0));
    REQUIRE(a.step_count() == b.step_count());
    for (double t : {0.1, 0.33333, 0.5, 0.77, 1.0}) {
        const std::vector<double> ya = a(t), yb = b(t);
        for (int i = 0; i < 4; ++i) CHECK(ya[i] == yb[i]);
    }
}

TEST_CASE("event_stop halts at the first guard crossing") {
    // r = cos u crosses zero at pi/2
    IvpProblem p = radius_system(0, 0, 0, 3.0);
    const DenseSolution s = event_stop(p, [](const std::vector<double>& y) { return y[0]; });
    CHECK_FALSE(s.complete());
    CHECK(s.stop_reason() == "event");
    CHECK(std::fabs(s.t_end() - std::numbers::pi / 2) < 1e-6);
    CHECK(std::fabs(s(s.t_end())[0]) < 1e-9);

    // guard that never crosses: full span, no event
    const DenseSolution full =
        event_stop(p, [](const std::vector<double>& y) { return y[0] + 10.0; });
    CHECK(full.complete());
    CHECK(full.stop_reason().empty());

    // guard nonpositive at start: precondition error
    CHECK_THROWS_AS(event_stop(p, [](const std::vector<double>& y) { return -y[0]; }),
                    PreconditionError);
}

TEST_CASE("backward integration works") {
    IvpProblem p = exponential(-1.0);
    const DenseSolution s = integrate_ivp(p);
    CHECK(s.complete());
    CHECK(std::fabs(s(-1.0)[0] - std::exp(-1.0)) < 1e-8);
    CHECK(std::fabs(s(-0.4)[0] - std::exp(-0.4)) < 1e-8);
}

TEST_CASE("validation errors") {
    IvpProblem p = exponential();
    p.rtol = 0;
    CHECK_THROWS_AS(integrate_ivp(p), PreconditionError);
    IvpProblem q = exponential();
    q.t1 = q.t0;
    CHECK_THROWS_AS(integrate_ivp(q), PreconditionError);
}

TEST_CASE("blow-up reports an integration failure with the reached span") {
    IvpProblem p;
    p.dim = 1;
    p.rhs = [](double, const std::vector<double>& y, std::vector<double>& dy) {
        dy[0] = y[0] * y[0];  // y = 1/(1-t), blows up at t = 1
    };
    p.t0 = 0;
    p.t1 = 2.0;
    p.y0 = {1.0};
    try {
        integrate_ivp(p);
        FAIL("expected IntegrationError");
    } catch (const IntegrationError& e) {
        CHECK(e.reached_hi > 0.9);
        CHECK(e.reached_hi <= 1.05);
    }
}
