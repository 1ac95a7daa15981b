#pragma once

#include <functional>
#include <vector>

#include "zerofind/common.hpp"

namespace zerofind {

// A zero-finding problem for the ratio h of two interlacing solutions after
// the change of variables z(x).  h obeys dh/dz = 1 + h^2 - 2 r(z) h, so its
// zeros are the target function's zeros and its poles are the companion's.
//
// Evaluation happens in the x coordinate (where the function evaluators
// live); z is the iteration coordinate.  `advance_x`, when supplied, applies
// a z-increment to x in closed form, which is how the solve loop actually
// moves for families whose x(z) map has one (the update is algebraically the
// z-step composed through the coordinate map).
struct RiccatiProblem {
    std::function<RatioSample(double)> eval_x;           // x -> ratio sample
    std::function<double(double)> r_of_x;                // x -> r(z(x))
    std::function<double(double)> rdot_of_x;             // x -> dr/dz at z(x); null => finite difference
    std::function<double(double)> z_of_x;
    std::function<double(double)> x_of_z;
    std::function<double(double)> dz_dx;                 // c~2(x) > 0
    std::function<double(double, double)> advance_x;     // (x, dz) -> x'; null => x_of_z(z+dz)
    Interval domain_z;
    Interval domain_x;  // open evaluation domain in x (e.g. (-1,1) for Legendre)

    // Fourth-order baseline hooks (t1 = u/u' of the normal form u'' + A u = 0).
    std::function<double(double)> fom_A;                               // A(x)
    std::function<double(double, const RatioSample&)> fom_t1;          // (x, sample) -> t1
    double fom_dz_scale = 1.0;                                         // dz = -scale*phi

    double h(double z) const {
        RatioSample s = eval_x(x_of_z(z));
        return s.singular ? kNaN : s.value;
    }
    double r(double z) const { return r_of_x(x_of_z(z)); }

    // dr/dz, analytic when the adapter supplies it.
    double r_dot_z(double z) const;
};

struct IterationOptions {
    double rel_tol = 0.0;    // stop on |dx/x| <= rel_tol when > 0
    double abs_tol = 1e-10;  // otherwise stop on |dx| (or |dz| with stop_in_z)
    int max_iter = 60;
    Method method = Method::Tom;
    bool stop_in_z = false;
};

struct ZeroResult {
    enum class Termination { Converged, MaxIter, SingularityHit, LeftDomain };

    double z_star = kNaN;
    double x_star = kNaN;
    int iterations = 0;
    std::vector<double> history;  // z iterates, history.size() == iterations + 1
    double final_residual = kNaN; // |h(z_star)|
    Termination termination = Termination::MaxIter;

    bool converged() const { return termination == Termination::Converged; }
};

const char* termination_name(ZeroResult::Termination t);

// One step of the trapezoidal third-order scheme: z - 2h/(2 + h^2 - 2rh).
double third_order_step(double z, double h_val, double r_val);

// Newton step on the same Riccati derivative: z - h/(1 + h^2 - 2rh).
double newton_step(double z, double h_val, double r_val);

// Arctan-form steps of the second/fourth-order baselines:
// z - arctan(sqrt(A) t)/sqrt(A).
double som_step(double z, double h_val, double r_val, double A_val);
double fom_step(double z, double t1_val, double A_val);

ZeroResult solve_zero(const RiccatiProblem& problem, double z0, const IterationOptions& opts);

// Central-difference check of dh/dz = 1 + h^2 - 2rh at z.
double riccati_residual(const RiccatiProblem& problem, double z, double delta);

// Least-squares slope of log|e_{m+1}| vs log|e_m| over the usable iterates.
double estimate_order(const std::vector<double>& history, double z_star);

}  // namespace zerofind
