#include "zerofind/hypergeom.hpp"

#include <algorithm>
#include <cmath>

namespace zerofind {

namespace {

constexpr double kConditionLimit = 1e12;

struct CompSum {
    double sum = 0.0, comp = 0.0, abs_sum = 0.0;
    void add(double t) {
        abs_sum += std::abs(t);
        double y = t - comp;
        double tt = sum + y;
        comp = (tt - sum) - y;
        sum = tt;
    }
};

struct KummerSums {
    double value, abs_sum;
};

KummerSums kummer_sum(double a, double b, double x) {
    CompSum s;
    double t = 1.0;
    s.add(t);
    for (int k = 0; k < 100000; ++k) {
        t *= (a + k) * x / ((b + k) * (k + 1.0));
        if (t == 0.0) break;  // polynomial case: a a negative integer
        s.add(t);
        if (k > 4 && std::abs(t) <= 1e-20 * s.abs_sum) break;
    }
    return {s.sum, s.abs_sum};
}

}  // namespace

double kummer_m(double a, double b, double x) {
    if (!(b > 0.0)) throw UnsupportedParameter("kummer_m needs b > 0");
    KummerSums s = kummer_sum(a, b, x);
    if (s.abs_sum > kConditionLimit && s.abs_sum > kConditionLimit * std::abs(s.value))
        throw CancellationLoss("kummer_m condition estimate");
    return s.value;
}

RatioSample kummer_ratio(double a, double b, double x) {
    if (!(b > 0.0)) throw UnsupportedParameter("kummer_ratio needs b > 0");
    if (!(x > 0.0)) throw UnsupportedParameter("kummer_ratio needs x > 0");
    KummerSums num = kummer_sum(a, b, x);
    KummerSums den = kummer_sum(a - 1.0, b, x);
    double cond = (num.abs_sum + den.abs_sum) / std::max(std::abs(num.value) + std::abs(den.value), 1e-300);
    if (cond > kConditionLimit) throw CancellationLoss("kummer_ratio condition estimate");
    return RatioSample::ratio(num.value, den.value);
}

double coulomb_series_scaled(double L, double eta, double x, double* deriv) {
    // s_L(x) = x^{L+1} sum B_m x^m, (2L+1+m) m B_m = 2 eta B_{m-1} - B_{m-2}
    CompSum s, sd;  // sum and term-weighted sum for the derivative factor
    double b2 = 0.0, b1 = 1.0;  // B_{m-2}, B_{m-1} rolling
    double p = 1.0;             // x^m
    s.add(1.0);
    sd.add(L + 1.0);
    bool prev_small = false;
    for (int m = 1; m < 100000; ++m) {
        double bm = (2.0 * eta * b1 - b2) / ((2.0 * L + 1.0 + m) * m);
        b2 = b1;
        b1 = bm;
        p *= x;
        double t = bm * p;
        s.add(t);
        sd.add((L + 1.0 + m) * t);
        // Two consecutive negligible terms (eta = 0 zeroes alternate terms).
        bool small = std::abs(t) * (L + 1.0 + m) <= 1e-20 * std::max(s.abs_sum, sd.abs_sum);
        if (m > 6 && small && prev_small) break;
        prev_small = small;
    }
    if (s.abs_sum > kConditionLimit && s.abs_sum > kConditionLimit * std::abs(s.sum))
        throw CancellationLoss("coulomb series condition estimate");
    double xp = std::pow(x, L + 1.0);
    if (deriv) *deriv = xp / x * sd.sum;  // d/dx [x^{L+1} S] = x^L * sum (L+1+m) B_m x^m
    return xp * s.sum;
}

TaylorOde CoulombEvaluator::make_cursor(double order) const {
    TaylorOde::Config c;
    c.Q = {0.0, 0.0, 1.0, 0.0, 0.0};                        // x^2
    c.R = {-order * (order + 1.0), -2.0 * eta_, 1.0};       // x^2 - 2 eta x - L(L+1)
    c.cap = 100;
    c.tail_tol = 1e-19;
    c.tail_on_value = true;
    c.singular_x = {0.0};
    double y, yp;
    y = coulomb_series_scaled(order, eta_, x_seed_, &yp);
    return TaylorOde(std::move(c), x_seed_, y, yp);
}

CoulombEvaluator::CoulombEvaluator(double L, double eta)
    : L_(L),
      eta_(eta),
      c_ratio_([&] {
          if (!(L > 0.0)) throw UnsupportedParameter("coulomb needs L > 0");
          return std::sqrt(L * L + eta * eta) / (L * (2.0 * L + 1.0));
      }()),
      x_seed_(std::max(std::min(6.0, 6.0 / (1.0 + std::abs(eta) / 3.0)), 0.25)),
      upper_(make_cursor(L)),
      lower_(make_cursor(L - 1.0)) {}

double CoulombEvaluator::upper_scaled(double x) {
    if (x <= x_seed_) {
        return coulomb_series_scaled(L_, eta_, x, nullptr);
    }
    if (x > domain_max()) throw UnsupportedParameter("coulomb evaluation beyond series-accuracy domain");
    return upper_.advance(x).y;
}

double CoulombEvaluator::lower_scaled(double x) {
    if (x <= x_seed_) {
        return coulomb_series_scaled(L_ - 1.0, eta_, x, nullptr);
    }
    if (x > domain_max()) throw UnsupportedParameter("coulomb evaluation beyond series-accuracy domain");
    return lower_.advance(x).y;
}

RatioSample CoulombEvaluator::ratio(double x) {
    if (!(x > 0.0)) throw UnsupportedParameter("coulomb ratio needs x > 0");
    if (x > domain_max()) throw UnsupportedParameter("coulomb evaluation beyond series-accuracy domain");
    double nu, nup, dv;
    if (x <= x_seed_) {
        nu = coulomb_series_scaled(L_, eta_, x, &nup);
        dv = coulomb_series_scaled(L_ - 1.0, eta_, x, nullptr);
    } else {
        TaylorOde::Eval u = upper_.advance(x);
        TaylorOde::Eval l = lower_.advance(x);
        nu = u.y;
        nup = u.yp;
        dv = l.y;
    }
    RatioSample raw = RatioSample::ratio(c_ratio_ * nu, dv, nu, nup);
    return raw;
}

}  // namespace zerofind
