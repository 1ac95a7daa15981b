#pragma once

#include <utility>

#include "zerofind/common.hpp"

namespace zerofind {

// J_nu(x), J'_nu(x), Y_nu(x), Y'_nu(x) at real order.
struct JYPair {
    double j = 0, jp = 0, y = 0, yp = 0;
};

// Power series for J_nu(x); accurate for x up to ~10 before cancellation bites.
// Accepts any non-integer nu > -2 (negative orders arise in reflection).
double bessel_j_series(double nu, double x);

// J_mu(x)/J_{mu-1}(x) by the standard ratio continued fraction (modified
// Lentz).  Valid for mu > 0, x > 0; flags a pole at zeros of J_{mu-1}.
RatioSample bessel_ratio_cf(double mu, double x);

// Steed's method: CF1 + downward recurrence + (CF2 | small-x series).
// Requires nu > -1, x > 0; orders in (-1,0) go through the reflection
// formulas.  Near-integer non-integer orders at x < 2 are rejected
// (reflection cancellation), a documented conditioning limit.
JYPair bessel_jy(double nu, double x);

double bessel_j(double mu, double x);
double bessel_y(double mu, double x);

// (C_mu(x), C_{mu-1}(x)) with C_mu = J_mu cos(alpha) - Y_mu sin(alpha),
// from a single order evaluation plus the cylinder recurrence.
std::pair<double, double> cylinder_pair(double mu, double alpha, double x);

// C_mu/C_{mu-1}.
RatioSample cylinder_ratio(double mu, double alpha, double x);

}  // namespace zerofind
