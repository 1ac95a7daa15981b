#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "zerofind/sweep_types.hpp"

namespace zerofind::oracle {

// Independent verification: fine-grid sign scan plus bisection on the
// underlying function (never on the ratio h, whose poles would confuse a
// sign scan).
struct OracleConfig {
    double grid_step = 0.1;
    double bisect_tol = 1e-14;
    std::function<double(double)> evaluator;
};

// Every sign change on the grid refined by bisection; sorted ascending.
// Throws GridTooCoarse when the one-pass midpoint refinement exposes a
// hidden pair of zeros inside a cell.
std::vector<double> scan_and_bisect(const OracleConfig& config, double a, double b);

// |1 - computed/reference|.
double relative_error(double x_computed, double x_reference);

AuditRecord audit_zeros(const std::vector<double>& computed, const std::vector<double>& reference,
                        double match_tol = 1e-10);

// Scan the window in z with config.evaluator (a z-composed function), map
// the found zeros to x and compare with the sweep's.
AuditRecord audit_sweep(const SweepReport& report, const OracleConfig& config, Interval z_window,
                        const std::function<double(double)>& x_of_z, double match_tol = 1e-10);

// Reference evaluators on independent backends.
double legendre_p(int n, double x);                    // three-term recurrence
double legendre_p_weighted(int n, double x);           // sqrt(1-x^2) P_n(x)
double hermite_scaled(int n, double x);                // orthonormal recurrence, zeros of H_n
double bessel_j_ref(double mu, double x);              // std::cyl_bessel_j (+ reflection)
double bessel_y_ref(double mu, double x);
double cylinder_ref(double mu, double alpha, double x);
double kummer_m_ref(double a, double b, double x);     // long double series
double coulomb_f_ref(double L, double eta, double x);  // long double series, scaled

// Plain-text reference table: one "family params zero tag" record per line.
struct ReferenceZeroSet {
    std::string family;
    std::string params;
    std::vector<std::pair<double, std::string>> zeros;  // sorted ascending
};

void save_reference(std::ostream& os, const ReferenceZeroSet& set);
ReferenceZeroSet load_reference(std::istream& is);

}  // namespace zerofind::oracle
