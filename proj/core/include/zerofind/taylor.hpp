#pragma once

#include <array>
#include <functional>
#include <vector>

#include "zerofind/common.hpp"

namespace zerofind {

// Local Taylor-series evaluator for Q(x) y'' + R(x) y = 0 with polynomial
// coefficients (deg Q <= 4, deg R <= 2).  The series is regenerated at each
// evaluation point, so the cursor follows the iterates of a sweep: evaluate
// at x_new from the current center, then recenter there.  Targets beyond the
// single-step bound are reached by walking in bounded sub-steps.
class TaylorOde {
  public:
    struct Config {
        std::array<double, 5> Q{};  // ascending coefficients
        std::array<double, 3> R{};
        int cap = 100;              // series order cap
        double tail_tol = 1e-19;    // term/partial-sum threshold for early stop
        bool tail_on_value = true;  // include the value-series tail in the test
        std::vector<double> singular_x;  // real roots of Q (ODE singular points)
        // Optional cancellation-stable forms of Q, Q', R near the Q roots.
        std::function<double(double)> Q_stable, Qp_stable, R_stable;
    };

    struct Eval {
        double y = 0.0;
        double yp = 0.0;
        int order_used = 0;
    };

    TaylorOde(Config cfg, double x0, double y0, double yp0);

    // Evaluate y, y' at x_new and move the expansion center there.
    Eval advance(double x_new);

    void reset(double x0, double y0, double yp0);
    double center() const { return center_; }

    // Oscillation wavelength estimate pi/sqrt(|A|), A = R/Q.
    double local_spacing(double x) const;

  private:
    double polyQ(double x, int deriv) const;
    double polyR(double x, int deriv) const;
    double dist_to_singular(double x) const;
    double max_eval_step(double x) const;
    void rebuild(double delta, double y, double yp);
    Eval sum_at(double x) const;  // from the current center, no recenter

    Config cfg_;
    double center_ = 0.0;
    double rho_ = 1.0;       // step scale of the stored coefficients
    std::vector<double> a_;  // rho-scaled series coefficients, size cap+2
};

// Ratio evaluators of the transformed orthogonal-polynomial solutions.
// Legendre: y = lambda sqrt(1-x^2) P_n(x), t = (n+1) y / ((1-x^2) y' - n x y).
class LegendreEvaluator {
  public:
    explicit LegendreEvaluator(int n);
    RatioSample ratio(double x);
    TaylorOde::Eval value(double x) { return ode_.advance(x); }
    int degree() const { return n_; }

  private:
    int n_;
    TaylorOde ode_;
};

// Hermite: y = lambda e^{-x^2/2} H_n(x), t = -sqrt(2(n+1)) y / (x y - y').
class HermiteEvaluator {
  public:
    explicit HermiteEvaluator(int n);
    RatioSample ratio(double x);
    TaylorOde::Eval value(double x) { return ode_.advance(x); }
    int degree() const { return n_; }

  private:
    int n_;
    TaylorOde ode_;
};

}  // namespace zerofind
