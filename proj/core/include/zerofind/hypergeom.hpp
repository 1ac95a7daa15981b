#pragma once

#include "zerofind/common.hpp"
#include "zerofind/taylor.hpp"

namespace zerofind {

// Kummer's M(a,b,x) by its power series with compensated accumulation.
// Throws CancellationLoss when the summation condition passes 1e12.
double kummer_m(double a, double b, double x);

// M(a,b,x)/M(a-1,b,x) with a pairwise cancellation guard.
RatioSample kummer_ratio(double a, double b, double x);

// Regular Coulomb functions F_L(eta, x) and F_{L-1}(eta, x), evaluated as
// x^{L+1}-type power series near the origin, continued outward by recentered
// Taylor steps on x^2 u'' + (x^2 - 2 eta x - L(L+1)) u = 0.  The ratio
// carries the exact normalization-constant quotient
// C_L/C_{L-1} = sqrt(L^2+eta^2)/(L(2L+1)), so it is a ratio of the full
// functions.  Values are normalization-scaled (positive constant per order);
// signs and zeros are those of F.
class CoulombEvaluator {
  public:
    CoulombEvaluator(double L, double eta);

    RatioSample ratio(double x);  // F_L/F_{L-1}; components are the scaled upper pair
    double upper_scaled(double x);   // ~ F_L up to a positive constant
    double lower_scaled(double x);   // ~ F_{L-1} up to a positive constant
    double domain_max() const { return 50.0 + 10.0 * L_; }
    double c_ratio() const { return c_ratio_; }

  private:
    TaylorOde make_cursor(double order) const;
    double L_, eta_;
    double c_ratio_;
    double x_seed_;
    TaylorOde upper_, lower_;
};

// Scaled series value of F_L (positive constant times F_L) and its
// derivative; converges for modest x, used to seed the continuation and for
// reference checks.
double coulomb_series_scaled(double L, double eta, double x, double* deriv = nullptr);

}  // namespace zerofind
