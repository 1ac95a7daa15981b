#include "zerofind/riccati.hpp"

#include <algorithm>
#include <cmath>

namespace zerofind {

namespace {

// Residual above which a sub-tolerance step is not accepted as convergence.
// Near a true zero |h(z)| ~ |z - z*|; a stalled iterate next to a pole keeps
// |h| large even though the steps collapse.
constexpr double kResidualAccept = 1e-6;

bool solve_tolerance_met(const IterationOptions& opts, double dz, double dx, double x_new) {
    if (opts.stop_in_z) return std::abs(dz) <= opts.abs_tol;
    if (opts.rel_tol > 0.0) return std::abs(dx) <= opts.rel_tol * std::max(std::abs(x_new), 1e-300);
    return std::abs(dx) <= opts.abs_tol;
}

}  // namespace

const char* termination_name(ZeroResult::Termination t) {
    switch (t) {
        case ZeroResult::Termination::Converged: return "converged";
        case ZeroResult::Termination::MaxIter: return "max-iter";
        case ZeroResult::Termination::SingularityHit: return "singularity-hit";
        case ZeroResult::Termination::LeftDomain: return "left-domain";
    }
    return "?";
}

double RiccatiProblem::r_dot_z(double z) const {
    if (rdot_of_x) return rdot_of_x(x_of_z(z));
    double d = std::max(1e-6, 1e-8 * std::abs(z));
    return (r(z + d) - r(z - d)) / (2.0 * d);
}

double third_order_step(double z, double h_val, double r_val) {
    double den = 2.0 + h_val * h_val - 2.0 * r_val * h_val;
    if (std::abs(den) < kDenFloor) throw ZeroDenominator("third_order_step");
    return z - 2.0 * h_val / den;
}

double newton_step(double z, double h_val, double r_val) {
    double den = 1.0 + h_val * h_val - 2.0 * r_val * h_val;
    if (std::abs(den) < kDenFloor) throw ZeroDenominator("newton_step");
    return z - h_val / den;
}

double som_step(double z, double h_val, double /*r_val*/, double A_val) {
    if (!(A_val > 0.0)) throw NonPositiveA("som_step");
    double s = std::sqrt(A_val);
    return z - std::atan(s * h_val) / s;
}

double fom_step(double z, double t1_val, double A_val) {
    if (!(A_val > 0.0)) throw NonPositiveA("fom_step");
    double s = std::sqrt(A_val);
    return z - std::atan(s * t1_val) / s;
}

ZeroResult solve_zero(const RiccatiProblem& problem, double z0, const IterationOptions& opts) {
    if (opts.max_iter < 1 || opts.rel_tol < 0.0 || opts.abs_tol < 0.0 ||
        (opts.rel_tol == 0.0 && opts.abs_tol == 0.0))
        throw UnsupportedParameter("iteration options: need max_iter >= 1 and a positive tolerance");

    ZeroResult res;
    res.history.reserve(16);
    res.history.push_back(z0);
    res.z_star = z0;
    res.x_star = problem.x_of_z(z0);

    double z = z0;
    double x = res.x_star;

    auto finish = [&](ZeroResult::Termination t) {
        res.termination = t;
        res.iterations = static_cast<int>(res.history.size()) - 1;
        res.z_star = z;
        res.x_star = x;
        return res;
    };

    if (!problem.domain_z.contains(z0) || !std::isfinite(x) || !problem.domain_x.strictly_inside(x))
        return finish(ZeroResult::Termination::LeftDomain);

    for (int it = 0; it < opts.max_iter; ++it) {
        RatioSample s = problem.eval_x(x);
        if (s.singular || !std::isfinite(s.value)) return finish(ZeroResult::Termination::SingularityHit);

        double hv = s.value;
        double rv = problem.r_of_x(x);
        double dz;
        try {
            switch (opts.method) {
                case Method::Tom: dz = third_order_step(0.0, hv, rv); break;
                case Method::Newton: dz = newton_step(0.0, hv, rv); break;
                case Method::Som: dz = som_step(0.0, hv, rv, 1.0); break;
                case Method::Fom: {
                    if (!problem.fom_A || !problem.fom_t1) throw UnsupportedMethod("fom for this family");
                    double A = problem.fom_A(x);
                    dz = problem.fom_dz_scale * fom_step(0.0, problem.fom_t1(x, s), A);
                    break;
                }
                default: dz = 0.0; break;
            }
        } catch (const ZeroDenominator&) {
            // A vanishing denominator means the iterate sits outside any
            // certified regime; surface it as a singularity event.
            return finish(ZeroResult::Termination::SingularityHit);
        } catch (const NonPositiveA&) {
            return finish(ZeroResult::Termination::SingularityHit);
        }

        double z_new = z + dz;
        double x_new = problem.advance_x ? problem.advance_x(x, dz) : problem.x_of_z(z_new);
        res.history.push_back(z_new);

        if (!problem.domain_z.contains(z_new) || !std::isfinite(x_new) ||
            !problem.domain_x.strictly_inside(x_new)) {
            z = z_new;
            x = std::isfinite(x_new) ? x_new : problem.x_of_z(z_new);
            return finish(ZeroResult::Termination::LeftDomain);
        }

        double dx = x_new - x;
        z = z_new;
        x = x_new;

        if (solve_tolerance_met(opts, dz, dx, x_new)) {
            RatioSample fin = problem.eval_x(x);
            // Near a zero |h| ~ |z - z*|; a sub-tolerance step with large h
            // means the iterate stalled next to a pole instead.  The accept
            // threshold follows the stopping tolerance mapped into z units.
            double tol_z = opts.abs_tol;
            if (!opts.stop_in_z) {
                double tol_x =
                    opts.rel_tol > 0 ? opts.rel_tol * std::max(std::abs(x), 1e-300) : opts.abs_tol;
                tol_z = problem.dz_dx ? tol_x * problem.dz_dx(x) : tol_x;
            }
            double accept = std::max(kResidualAccept, 10.0 * tol_z);
            if (fin.singular || !std::isfinite(fin.value) || std::abs(fin.value) > accept)
                return finish(ZeroResult::Termination::SingularityHit);
            res.final_residual = std::abs(fin.value);
            return finish(ZeroResult::Termination::Converged);
        }
    }

    RatioSample fin = problem.eval_x(x);
    if (!fin.singular && std::isfinite(fin.value)) res.final_residual = std::abs(fin.value);
    return finish(ZeroResult::Termination::MaxIter);
}

double riccati_residual(const RiccatiProblem& problem, double z, double delta) {
    double hm = problem.h(z - delta);
    double h0 = problem.h(z);
    double hp = problem.h(z + delta);
    if (!std::isfinite(hm) || !std::isfinite(h0) || !std::isfinite(hp))
        throw NonFiniteSample("riccati_residual");
    double fd = (hp - hm) / (2.0 * delta);
    double rhs = 1.0 + h0 * h0 - 2.0 * problem.r(z) * h0;
    return fd - rhs;
}

double estimate_order(const std::vector<double>& history, double z_star) {
    if (history.size() < 4) throw InsufficientHistory("need at least 4 iterates");

    // Floor below which iterates are indistinguishable from the reference:
    // machine resolution plus the final iterate's own distance to z_star
    // (the reference is itself a double-precision zero).
    const double plateau = std::abs(history.back() - z_star);
    const double floor = std::max(
        10.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(z_star)), 8.0 * plateau);
    std::vector<double> eps;
    eps.reserve(history.size());
    for (double zm : history) {
        double e = std::abs(zm - z_star);
        if (e <= floor) break;
        if (!eps.empty() && e >= eps.back()) break;  // usable prefix must decrease strictly
        eps.push_back(e);
    }
    if (eps.size() < 3) throw InsufficientHistory("fewer than 3 usable iterates");

    // Fit log|e_{m+1}| = p*log|e_m| + c.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (size_t m = 0; m + 1 < eps.size(); ++m) {
        double lx = std::log(eps[m]);
        double ly = std::log(eps[m + 1]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    double den = n * sxx - sx * sx;
    if (std::abs(den) < kDenFloor) throw InsufficientHistory("degenerate fit");
    return (n * sxy - sx * sy) / den;
}

}  // namespace zerofind
