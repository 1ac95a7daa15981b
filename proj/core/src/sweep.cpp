#include "zerofind/sweep.hpp"

#include <algorithm>
#include <cmath>

namespace zerofind {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfPi = kPi / 2.0;
// Relative pull past a pole when a plain-rule guess lands on one (exact
// pi/2 spacing happens when r == 0, where zeros sit exactly halfway).
constexpr double kPoleNudge = 1e-6 * kHalfPi;

double dir_sign(Direction d) { return d == Direction::Forward ? 1.0 : -1.0; }

bool endpoint_zero(const RiccatiProblem& prob, double z, double h_val) {
    return std::isfinite(h_val) && std::abs(h_val) <= 1e-14 * (1.0 + std::abs(prob.r(z)));
}

void record_zero_for_accel(SweepPlan& plan, double prev, double z_new) {
    if (!plan.accel) return;
    AccelState& a = *plan.accel;
    if (a.zeros_seen >= 1 && std::isfinite(prev)) {
        a.prev_prev_gap = a.prev_gap;
        a.prev_gap = std::abs(z_new - prev);
    }
    a.zeros_seen += 1;
}

}  // namespace

const char* regime_name(RegimeCertificate::Kind k) {
    switch (k) {
        case RegimeCertificate::Kind::DecreasingRPos: return "decreasing-r-positive";
        case RegimeCertificate::Kind::DecreasingRNeg: return "decreasing-r-negative";
        case RegimeCertificate::Kind::DecreasingAbsRLt1: return "decreasing-|r|<1";
        case RegimeCertificate::Kind::RHasUniqueZero: return "r-has-unique-zero";
        case RegimeCertificate::Kind::SlowlyIncreasingR: return "slowly-increasing-r";
        case RegimeCertificate::Kind::Unsupported: return "unsupported";
    }
    return "?";
}

int xi1(double x) { return x >= 0.0 ? 1 : -1; }
int xi2(double x) { return x > 0.0 ? 1 : -1; }

RegimeCertificate classify_regime(const FamilyProblem& fp, const Interval& interval) {
    for (const auto& cert : fp.certificates) {
        if (cert.interval.contains(interval)) return cert;
    }
    RegimeCertificate out;
    out.kind = RegimeCertificate::Kind::Unsupported;
    out.interval = interval;
    return out;
}

std::optional<double> next_guess(SweepPlan& plan, double previous_zero) {
    double dir = dir_sign(plan.direction);
    double step = kHalfPi;
    if (plan.accel && plan.accel->zeros_seen >= 3 && std::isfinite(plan.accel->prev_gap))
        step = plan.accel->prev_gap;
    double g = previous_zero + dir * step;
    if (!plan.bounds.contains(g)) return std::nullopt;
    return g;
}

double first_guess_closed_interval(const SweepPlan& plan, double h_at_endpoint, int r_sign) {
    bool backward = (r_sign > 0) || (r_sign == 0 && plan.direction == Direction::Backward);
    if (backward) {
        double b = plan.bounds.hi;
        return b - kHalfPi * (1.0 - xi1(h_at_endpoint)) / 2.0;
    }
    double a = plan.bounds.lo;
    return a + kHalfPi * (1.0 + xi2(h_at_endpoint)) / 2.0;
}

std::pair<double, double> guess_around_r_zero(const SweepPlan& plan, const RatioSample& h_at_zr) {
    double zr = plan.r_zero.value();
    if (h_at_zr.singular) return {zr - kHalfPi, zr + kHalfPi};
    if (h_at_zr.value < 0.0) return {zr - kHalfPi, zr};
    return {zr, zr + kHalfPi};
}

double accelerate_guess(const SweepPlan& plan, const std::vector<double>& last_zeros) {
    double dir = dir_sign(plan.direction);
    if (last_zeros.size() < 2) {
        return last_zeros.empty() ? kNaN : last_zeros.back() + dir * kHalfPi;
    }
    double gap = std::abs(last_zeros[last_zeros.size() - 1] - last_zeros[last_zeros.size() - 2]);
    return last_zeros.back() + dir * gap;
}

namespace {

struct DirectionalSweep {
    const FamilyProblem& fp;
    RiccatiProblem prob;  // domain narrowed to the plan bounds
    SweepPlan plan;       // owns accel state for this side
    IterationOptions opts;
    SweepReport* report;
    RegimeCertificate cert;
    std::optional<int> count_cap;

    std::vector<ZeroResult> found;  // in sweep order

    bool sign_check_enabled() const {
        return cert.kind == RegimeCertificate::Kind::DecreasingRPos;
    }

    // Solve from one guess with the retry ladder; returns true when a new
    // zero was accepted, false when this side of the sweep is exhausted.
    bool run_guess(double guess, bool accelerated) {
        GuessRecord rec;
        rec.guess_z = guess;
        rec.accelerated = accelerated;

        if (sign_check_enabled()) {
            double hg = prob.h(guess);
            double want = -dir_sign(plan.direction);
            if (std::isfinite(hg) && hg * want < 0.0)
                report->notes.push_back("guess sign check violated at z=" + std::to_string(guess));
        }

        ZeroResult res = solve_zero(prob, guess, opts);
        if (res.termination == ZeroResult::Termination::SingularityHit) {
            double prev = found.empty() ? kNaN : found.back().z_star;
            if (accelerated && std::isfinite(prev)) {
                rec.retried = true;
                double plain = prev + dir_sign(plan.direction) * kHalfPi;
                res = solve_zero(prob, plain, opts);
                rec.guess_z = plain;
            }
            if (res.termination == ZeroResult::Termination::SingularityHit) {
                rec.retried = true;
                double nudged = rec.guess_z + dir_sign(plan.direction) * kPoleNudge;
                res = solve_zero(prob, nudged, opts);
                rec.guess_z = nudged;
            }
        }

        // Inter-zero gaps grow without bound near a coordinate-stretched
        // domain edge, while the step size far from a zero is bounded; a
        // guess there can exhaust the per-call budget mid-approach.  Resume
        // the same monotone iteration from where it стopped.
        for (int chain = 0; res.termination == ZeroResult::Termination::MaxIter && chain < 400; ++chain) {
            ZeroResult cont = solve_zero(prob, res.z_star, opts);
            if (cont.iterations < 1 || cont.history.size() < 2) break;
            bool progressed = (cont.z_star - res.z_star) * dir_sign(plan.direction) > 0.0;
            res.history.insert(res.history.end(), cont.history.begin() + 1, cont.history.end());
            res.iterations += cont.iterations;
            res.z_star = cont.z_star;
            res.x_star = cont.x_star;
            res.final_residual = cont.final_residual;
            res.termination = cont.termination;
            if (!progressed) break;
        }

        if (!res.converged()) {
            report->notes.push_back(std::string("sweep stop: ") + termination_name(res.termination) +
                                    " from guess z=" + std::to_string(rec.guess_z));
            return false;
        }
        if (!plan.bounds.contains(res.z_star)) return false;  // converged outside [a', b']
        if (!found.empty()) {
            double progress = (res.z_star - found.back().z_star) * dir_sign(plan.direction);
            if (progress <= 1e-9 * std::max(1.0, std::abs(res.z_star))) {
                report->notes.push_back("sweep stop: repeated zero at z=" + std::to_string(res.z_star));
                return false;
            }
        }

        double prev = found.empty() ? kNaN : found.back().z_star;
        record_zero_for_accel(plan, prev, res.z_star);
        rec.converged_z = res.z_star;
        report->guesses_used.push_back(rec);
        found.push_back(std::move(res));
        return true;
    }

    // The fourth-order baseline iterates on y/y', whose poles sit at the
    // extrema of y, halfway between zeros: the pi/2 rule would seed right on
    // them.  Step three quarters of the local period instead.
    std::optional<double> fom_next(double prev_z) const {
        if (!prob.fom_A) return std::nullopt;
        double xp = prob.x_of_z(prev_z);
        double A = prob.fom_A(xp);
        if (!(A > 0.0)) return std::nullopt;
        double g = prev_z + dir_sign(plan.direction) * 0.75 * kPi / std::sqrt(A) * prob.dz_dx(xp);
        if (!plan.bounds.contains(g)) return std::nullopt;
        return g;
    }

    void run_from(double first_guess) {
        double guess = first_guess;
        bool accelerated = false;
        while (true) {
            if (!plan.bounds.contains(guess)) break;
            if (!run_guess(guess, accelerated)) break;
            if (count_cap && static_cast<int>(found.size()) >= *count_cap) break;
            std::optional<double> g;
            if (opts.method == Method::Fom) {
                g = fom_next(found.back().z_star);
                accelerated = false;
            } else {
                g = next_guess(plan, found.back().z_star);
                accelerated = plan.accel && plan.accel->zeros_seen >= 3;
            }
            if (!g) break;
            guess = *g;
        }
    }
};

}  // namespace

SweepReport sweep_interval(const FamilyProblem& fp, const SweepPlan& plan_in, const IterationOptions& opts) {
    SweepReport report;
    RegimeCertificate cert = classify_regime(fp, plan_in.bounds);
    if (!cert.supported()) {
        // Dipping below the certified region is fine when the case declares
        // the gap zero-free or supplies a bespoke first-zero bracket.
        Interval certified = fp.certificates.empty() ? Interval{kNaN, kNaN} : fp.certificates.front().interval;
        bool below_only = plan_in.bounds.lo < certified.lo && plan_in.bounds.hi <= certified.hi &&
                          plan_in.bounds.hi > certified.lo;
        bool covered = fp.fcase.first_zero_guess != nullptr;
        if (!covered && fp.fcase.zero_free_region)
            covered = fp.prob.z_of_x(fp.fcase.zero_free_region->hi) >= certified.lo * (1.0 - 1e-12);
        if (!(below_only && covered))
            throw UnsupportedRegime(fp.label + ": no certificate covers the requested interval");
        cert = fp.certificates.front();
    }
    report.certificates.push_back(cert);

    DirectionalSweep sweep{fp, fp.prob, plan_in, opts, &report, cert, std::nullopt, {}};
    // Narrow the iteration domain so runaway iterates terminate promptly.
    Interval dom = fp.prob.domain_z;
    dom.lo = std::max(dom.lo, plan_in.bounds.lo - 2.0 * kPi - 1.0);
    dom.hi = std::min(dom.hi, plan_in.bounds.hi + 2.0 * kPi + 1.0);
    sweep.prob.domain_z = dom;

    const Interval certified = cert.interval;
    Interval effective = plan_in.bounds;
    effective.lo = std::max(effective.lo, certified.lo);
    effective.hi = std::min(effective.hi, certified.hi);
    sweep.plan.bounds = effective;

    switch (plan_in.guess_rule) {
        case GuessRule::TableNonzeroRNeg: {
            sweep.plan.direction = Direction::Forward;
            sweep.count_cap = fp.positive_zero_count;
            if (sweep.count_cap && *sweep.count_cap <= 0) break;
            sweep.run_from(effective.lo + kHalfPi);
            break;
        }
        case GuessRule::TableNonzeroRPos: {
            sweep.plan.direction = Direction::Backward;
            sweep.count_cap = fp.positive_zero_count;
            if (sweep.count_cap && *sweep.count_cap <= 0) break;
            sweep.run_from(effective.hi - kHalfPi);
            break;
        }
        case GuessRule::TableClosedInterval: {
            bool backward = plan_in.direction == Direction::Backward;
            sweep.plan.direction = plan_in.direction;
            double endpoint = backward ? effective.hi : effective.lo;
            if (!std::isfinite(endpoint))
                throw UnsupportedRegime(fp.label + ": a finite interval is required for this sweep");
            double h_end = std::isfinite(endpoint) ? sweep.prob.h(endpoint) : kNaN;
            double guess;
            if (std::isfinite(endpoint) && endpoint_zero(sweep.prob, endpoint, h_end)) {
                guess = endpoint;  // the endpoint itself is the first zero
            } else if (!std::isfinite(h_end) && std::isfinite(endpoint)) {
                guess = endpoint + dir_sign(plan_in.direction) * kHalfPi;  // endpoint on a pole
            } else {
                guess = first_guess_closed_interval(sweep.plan, h_end, backward ? 1 : -1);
            }
            sweep.run_from(guess);
            break;
        }
        case GuessRule::TableRZero: {
            double zr = plan_in.r_zero.value();
            RatioSample h_zr = sweep.prob.eval_x(sweep.prob.x_of_z(zr));
            auto [left, right] = guess_around_r_zero(sweep.plan, h_zr);

            DirectionalSweep rightside = sweep;
            rightside.plan.direction = Direction::Forward;
            if (rightside.plan.bounds.contains(right)) rightside.run_from(right);

            DirectionalSweep leftside = sweep;
            leftside.plan.direction = Direction::Backward;
            if (leftside.plan.bounds.contains(left)) leftside.run_from(left);

            // Merge: left side descends; reverse it and drop a duplicate of
            // the innermost pair (h(z_r) == 0 seeds both sides at z_r).
            std::reverse(leftside.found.begin(), leftside.found.end());
            if (!leftside.found.empty() && !rightside.found.empty()) {
                double a = leftside.found.back().z_star;
                double b = rightside.found.front().z_star;
                if (std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a))) rightside.found.erase(rightside.found.begin());
            }
            sweep.found = std::move(leftside.found);
            for (auto& z : rightside.found) sweep.found.push_back(std::move(z));
            break;
        }
    }

    // Bespoke first zero below the certified region.
    if (fp.fcase.first_zero_guess && plan_in.bounds.lo < certified.lo) {
        auto g = fp.fcase.first_zero_guess(fp);
        if (g && plan_in.bounds.contains(*g)) {
            ZeroResult res = solve_zero(sweep.prob, *g, opts);
            if (res.converged() && plan_in.bounds.contains(res.z_star)) {
                bool dup = false;
                for (const auto& z : sweep.found)
                    if (std::abs(z.z_star - res.z_star) <= 1e-9 * std::max(1.0, std::abs(res.z_star))) dup = true;
                if (!dup) {
                    GuessRecord rec;
                    rec.guess_z = *g;
                    rec.converged_z = res.z_star;
                    report.guesses_used.push_back(rec);
                    sweep.found.push_back(std::move(res));
                }
            }
        }
    }

    std::sort(sweep.found.begin(), sweep.found.end(),
              [](const ZeroResult& a, const ZeroResult& b) { return a.z_star < b.z_star; });
    report.zeros = std::move(sweep.found);
    return report;
}

SweepReport sweep_family(const FamilyProblem& fp, const IterationOptions& opts) {
    return sweep_interval(fp, fp.plan, opts);
}

}  // namespace zerofind
