#include "zerofind/taylor.hpp"

#include <algorithm>
#include <cmath>

namespace zerofind {

namespace {
constexpr double kPi = 3.14159265358979323846;
// Tail-term ratio that must be reached by the cap for the series to count as
// converged at all; the nominal tail_tol sits below double rounding and only
// triggers on exactly-vanishing tails.
constexpr double kCapSanity = 1e-12;
constexpr double kWalkFraction = 0.45;  // of the local spacing, per sub-step
constexpr double kEvalFraction = 1.6;   // single-evaluation step bound
// Fractions of the distance to the nearest ODE singular point.  The
// single-evaluation fraction must keep fraction^cap below the cap-tail
// sanity threshold: 0.70^100 ~ 3e-16.
constexpr double kSingWalk = 0.60;
constexpr double kSingEval = 0.70;
constexpr int kMaxWalk = 2000000;
}  // namespace

TaylorOde::TaylorOde(Config cfg, double x0, double y0, double yp0) : cfg_(std::move(cfg)) {
    a_.assign(static_cast<size_t>(cfg_.cap) + 2, 0.0);
    rebuild(x0, y0, yp0);
}

void TaylorOde::reset(double x0, double y0, double yp0) { rebuild(x0, y0, yp0); }

double TaylorOde::polyQ(double x, int d) const {
    // d-th derivative of the quartic Q at x; the stable overrides avoid the
    // Horner cancellation next to the roots of Q.
    const auto& q = cfg_.Q;
    switch (d) {
        case 0:
            if (cfg_.Q_stable) return cfg_.Q_stable(x);
            return ((((q[4] * x + q[3]) * x + q[2]) * x + q[1]) * x + q[0]);
        case 1:
            if (cfg_.Qp_stable) return cfg_.Qp_stable(x);
            return ((4 * q[4] * x + 3 * q[3]) * x + 2 * q[2]) * x + q[1];
        case 2: return (12 * q[4] * x + 6 * q[3]) * x + 2 * q[2];
        case 3: return 24 * q[4] * x + 6 * q[3];
        case 4: return 24 * q[4];
        default: return 0.0;
    }
}

double TaylorOde::polyR(double x, int d) const {
    const auto& r = cfg_.R;
    switch (d) {
        case 0:
            if (cfg_.R_stable) return cfg_.R_stable(x);
            return (r[2] * x + r[1]) * x + r[0];
        case 1: return 2 * r[2] * x + r[1];
        case 2: return 2 * r[2];
        default: return 0.0;
    }
}

double TaylorOde::local_spacing(double x) const {
    double q = polyQ(x, 0);
    double A = std::abs(q) < kDenFloor ? kInf : polyR(x, 0) / q;
    double mag = std::max(std::abs(A), 1e-8);
    return kPi / std::sqrt(mag);
}

double TaylorOde::dist_to_singular(double x) const {
    double d = kInf;
    for (double s : cfg_.singular_x) d = std::min(d, std::abs(x - s));
    return d;
}

double TaylorOde::max_eval_step(double x) const {
    return std::min(kEvalFraction * local_spacing(x), kSingEval * dist_to_singular(x));
}

void TaylorOde::rebuild(double delta, double y, double yp) {
    center_ = delta;
    const double Q0 = polyQ(delta, 0), Q1 = polyQ(delta, 1), Q2 = polyQ(delta, 2),
                 Q3 = polyQ(delta, 3), Q4 = polyQ(delta, 4);
    const double R0 = polyR(delta, 0), R1 = polyR(delta, 1), R2 = polyR(delta, 2);
    if (std::abs(Q0) < kDenFloor) throw TruncationNotMet("expansion center at a singular point");

    // Coefficients are stored step-scaled, b_k = a_k rho^k with rho the
    // largest single step taken from this center; raw a_k overflow when the
    // center sits close to a singular point (radius^-k growth).
    rho_ = std::max(max_eval_step(delta), 1e-280);
    const double r1 = rho_, r2 = rho_ * rho_, r3 = r2 * rho_, r4 = r2 * r2;
    a_[0] = y;
    a_[1] = yp * rho_;
    const int nmax = static_cast<int>(a_.size()) - 1;
    for (int k = 0; k + 2 <= nmax; ++k) {
        double acc = (k + 1.0) * k * Q1 * r1 * a_[k + 1] + (k * (k - 1.0) / 2.0 * Q2 + R0) * r2 * a_[k];
        if (k >= 1) acc += ((k - 1.0) * (k - 2.0) / 6.0 * Q3 + R1) * r3 * a_[k - 1];
        if (k >= 2) acc += ((k - 2.0) * (k - 3.0) / 24.0 * Q4 + R2 / 2.0) * r4 * a_[k - 2];
        a_[k + 2] = -acc / ((k + 2.0) * (k + 1.0) * Q0);
    }
}

TaylorOde::Eval TaylorOde::sum_at(double x) const {
    const double dx = (x - center_) / rho_;
    double yv = a_[0], yc = 0.0;   // compensated accumulators
    double ypv = a_[1], ypc = 0.0;
    double scale_y = std::abs(yv);
    double scale_yp = std::abs(ypv);
    double p = 1.0;
    int used = cfg_.cap;
    double zeta_prev = kInf;

    auto acc = [](double& s, double& c, double t) {
        double u = t - c;
        double v = s + u;
        c = (v - s) - u;
        s = v;
    };

    for (int k = 1; k <= cfg_.cap; ++k) {
        p *= dx;
        double ty = a_[k] * p;
        double typ = (k + 1.0) * a_[k + 1] * p;
        acc(yv, yc, ty);
        acc(ypv, ypc, typ);  // yp accumulated in rho-scaled units
        scale_y = std::max(scale_y, std::abs(ty));
        scale_yp = std::max(scale_yp, std::abs(typ));

        double tail_y = std::abs(yv) > 0 ? std::abs(ty / yv) : kInf;
        double tail_yp = std::abs(ypv) > 0 ? std::abs(typ / ypv) : kInf;
        double zeta = cfg_.tail_on_value ? std::max(tail_y, tail_yp) : tail_yp;
        // Two consecutive sub-threshold terms: parity-symmetric expansions
        // have exactly-zero alternate coefficients.
        if (k >= 4 && zeta < cfg_.tail_tol && zeta_prev < cfg_.tail_tol) {
            used = k;
            break;
        }
        zeta_prev = zeta;
    }

    if (used == cfg_.cap) {
        // Scale-aware convergence check at the cap.
        double last = std::abs(a_[cfg_.cap] * p);
        double lastp = std::abs((cfg_.cap + 1.0) * a_[cfg_.cap + 1] * p);
        double ok_y = last <= kCapSanity * std::max(scale_y, std::abs(yv));
        double ok_yp = lastp <= kCapSanity * std::max(scale_yp, std::abs(ypv));
        if (!(ok_y && ok_yp)) throw TruncationNotMet("series tail too large at cap");
    }
    return Eval{yv, ypv / rho_, used};
}

TaylorOde::Eval TaylorOde::advance(double x_new) {
    int guard = 0;
    for (;;) {
        double rem = x_new - center_;
        double aim = std::abs(rem);
        double dir = rem > 0 ? 1.0 : -1.0;
        double step = aim;
        if (aim > max_eval_step(center_)) {
            step = std::min({aim, kWalkFraction * local_spacing(center_),
                             kSingWalk * dist_to_singular(center_)});
        }

        // The nominal bound is a heuristic; shrink on an under-converged sum
        // (turning-point neighborhoods need shorter steps than pi/sqrt(A)).
        Eval e;
        for (;;) {
            double xt = (step == aim) ? x_new : center_ + dir * step;
            try {
                e = sum_at(xt);
                rebuild(xt, e.y, e.yp);
                break;
            } catch (const TruncationNotMet&) {
                step *= 0.5;
                if (!(step > 1e-13 * (1.0 + std::abs(center_)))) throw;
            }
        }
        if (center_ == x_new) return e;
        if (++guard > kMaxWalk) throw NoConvergence("taylor walk did not reach target");
    }
}

LegendreEvaluator::LegendreEvaluator(int n)
    : n_(n),
      ode_(
          [n] {
              TaylorOde::Config c;
              // Q = 4(1-x^2)^2, R = (4n^2+4n)(1-x^2) + 4
              c.Q = {4.0, 0.0, -8.0, 0.0, 4.0};
              double nn = 4.0 * n * (n + 1.0);
              c.R = {nn + 4.0, 0.0, -nn};
              // (1-x)(1+x) forms stay accurate where the Horner forms cancel
              c.Q_stable = [](double x) { double w = (1.0 - x) * (1.0 + x); return 4.0 * w * w; };
              c.Qp_stable = [](double x) { return -16.0 * x * (1.0 - x) * (1.0 + x); };
              c.R_stable = [nn](double x) { return nn * (1.0 - x) * (1.0 + x) + 4.0; };
              c.cap = 100;
              c.tail_tol = 1e-19;
              c.tail_on_value = true;
              c.singular_x = {-1.0, 1.0};
              return c;
          }(),
          0.0, n % 2 ? 0.0 : 1.0, n % 2 ? 1.0 : 0.0) {
    if (n < 1) throw UnsupportedParameter("legendre degree must be >= 1");
}

RatioSample LegendreEvaluator::ratio(double x) {
    TaylorOde::Eval e = ode_.advance(x);
    double den = (1.0 - x * x) * e.yp - n_ * x * e.y;
    return RatioSample::ratio((n_ + 1.0) * e.y, den, e.y, e.yp);
}

HermiteEvaluator::HermiteEvaluator(int n)
    : n_(n),
      ode_(
          [n] {
              TaylorOde::Config c;
              c.Q = {1.0, 0.0, 0.0, 0.0, 0.0};
              c.R = {2.0 * n + 1.0, 0.0, -1.0};
              c.cap = 50;
              c.tail_tol = 1e-25;
              c.tail_on_value = false;  // derivative-series tail only
              return c;
          }(),
          0.0, n % 2 ? 0.0 : 1.0, n % 2 ? 1.0 : 0.0) {
    if (n < 1) throw UnsupportedParameter("hermite degree must be >= 1");
}

RatioSample HermiteEvaluator::ratio(double x) {
    TaylorOde::Eval e = ode_.advance(x);
    double den = x * e.y - e.yp;
    return RatioSample::ratio(-std::sqrt(2.0 * (n_ + 1.0)) * e.y, den, e.y, e.yp);
}

}  // namespace zerofind
