#pragma once

// Adaptive Dormand-Prince 5(4) initial-value integration with a fourth-order
// dense interpolant. Deterministic: identical problems produce bit-identical
// meshes and solutions.

#include <functional>
#include <string>
#include <vector>

#include "lw/errors.hpp"

namespace lw {

struct IvpProblem {
    int dim = 0;
    // rhs(t, y, dy): writes y'(t) into dy (dy is pre-sized to dim)
    std::function<void(double, const std::vector<double>&, std::vector<double>&)> rhs;
    double t0 = 0.0;
    double t1 = 1.0;
    std::vector<double> y0;
    double rtol = 1e-10;
    double atol = 1e-12;
    double fixed_step = 0.0;  // > 0 disables error control; testing hook for order studies
    long max_steps = 1000000;
};

class DenseSolution {
  public:
    // Knot values are returned bitwise; interior points use the step interpolant.
    void eval(double t, std::vector<double>& y) const;
    void eval(double t, std::vector<double>& y, std::vector<double>& dy) const;
    std::vector<double> operator()(double t) const;

    double t_begin() const { return t_begin_; }
    double t_end() const { return t_end_; }
    bool contains(double t) const;
    bool complete() const { return complete_; }
    const std::string& stop_reason() const { return stop_reason_; }
    int dim() const { return dim_; }
    size_t step_count() const { return steps_.size(); }

    struct Step {
        double t, h;  // from t to t + h (h signed)
        std::vector<double> r1, r2, r3, r4, r5;
        std::vector<double> y_end;
    };

  private:
    friend DenseSolution integrate_core(
        const IvpProblem&, const std::function<double(const std::vector<double>&)>*);

    const Step& locate(double t) const;

    int dim_ = 0;
    double t_begin_ = 0, t_end_ = 0;
    bool forward_ = true;
    bool complete_ = false;
    std::string stop_reason_;
    std::vector<double> y_begin_;
    std::vector<Step> steps_;
    std::function<void(double, const std::vector<double>&, std::vector<double>&)> rhs_;
};

// Integrates over [t0, t1] (either direction). Throws IntegrationError with
// the reached span on step underflow or non-finite right-hand sides.
DenseSolution integrate_ivp(const IvpProblem& p);

// Like integrate_ivp but halts at the first zero crossing of guard(y), located
// on the dense interpolant to 1e-12 in t. guard must be positive at y0.
DenseSolution event_stop(const IvpProblem& p,
                         const std::function<double(const std::vector<double>&)>& guard);

}  // namespace lw
