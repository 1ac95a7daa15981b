#include "zerofind/families.hpp"

#include <cmath>

#include "zerofind/bessel.hpp"
#include "zerofind/hypergeom.hpp"
#include "zerofind/taylor.hpp"

namespace zerofind {

namespace {

constexpr double kPi = 3.14159265358979323846;

RegimeCertificate make_cert(RegimeCertificate::Kind kind, Interval iv, double k1 = kNaN, double k2 = kNaN) {
    if (kind == RegimeCertificate::Kind::SlowlyIncreasingR) {
        if (!(k2 > 0.0 && k2 <= 1.0 && 8.0 * k2 * k2 + 6.0 * k1 - 3.0 < 0.0))
            throw UnsupportedParameter("slowly-increasing-r constants violate 8k2^2+6k1-3<0");
    }
    return RegimeCertificate{kind, iv, k1, k2};
}

// Scan an x bracket for a sign change of f and return the cell midpoint.
std::optional<double> sign_change_midpoint(const std::function<double(double)>& f, double lo, double hi,
                                           int cells) {
    if (!(hi > lo) || cells < 2) return std::nullopt;
    double step = (hi - lo) / cells;
    double xp = lo, fp = f(xp);
    for (int i = 1; i <= cells; ++i) {
        double xn = lo + i * step;
        double fn = f(xn);
        if (std::isfinite(fp) && std::isfinite(fn) && fp * fn < 0.0) return 0.5 * (xp + xn);
        xp = xn;
        fp = fn;
    }
    return std::nullopt;
}

}  // namespace

const char* case_name(CaseId id) {
    switch (id) {
        case CaseId::LegendreStd: return "legendre";
        case CaseId::HermiteStd: return "hermite";
        case CaseId::BesselCase1: return "bessel-case1";
        case CaseId::BesselCase2a: return "bessel-case2a";
        case CaseId::BesselCase2b: return "bessel-case2b";
        case CaseId::BesselCase2c: return "bessel-case2c";
        case CaseId::CylinderCase1: return "cylinder-case1";
        case CaseId::CylinderCase2a: return "cylinder-case2a";
        case CaseId::CylinderCase2b: return "cylinder-case2b";
        case CaseId::KummerMain: return "kummer";
        case CaseId::KummerSmallB: return "kummer-small-b";
        case CaseId::CoulombRepulsive: return "coulomb-repulsive";
        case CaseId::CoulombAttractive: return "coulomb-attractive";
    }
    return "?";
}

FamilyProblem legendre_problem(int n) {
    if (n < 1) throw UnsupportedParameter("legendre: n >= 1 required");
    auto ev = std::make_shared<LegendreEvaluator>(n);
    const double np1 = n + 1.0;

    FamilyProblem fp;
    fp.state = ev;
    fp.label = "legendre n=" + std::to_string(n);

    fp.prob.eval_x = [ev](double x) { return ev->ratio(x); };
    fp.prob.r_of_x = [](double x) { return -x; };
    fp.prob.rdot_of_x = [np1](double x) { return -(1.0 - x * x) / np1; };
    fp.prob.z_of_x = [np1](double x) { return np1 * std::atanh(x); };
    fp.prob.x_of_z = [np1](double z) { return std::tanh(z / np1); };
    fp.prob.dz_dx = [np1](double x) { return np1 / (1.0 - x * x); };
    fp.prob.advance_x = [np1](double x, double dz) {
        double tb = std::tanh(dz / np1);
        return (x + tb) / (1.0 + x * tb);
    };
    fp.prob.domain_z = {-kInf, kInf};
    fp.prob.domain_x = {-1.0, 1.0};
    fp.prob.fom_A = [n, np1](double x) { return n * np1 * (1.0 - x * x); };
    fp.prob.fom_t1 = [](double x, const RatioSample& s) {
        return s.y_val / ((1.0 - x * x) * s.y_prime_val + x * s.y_val);
    };
    fp.prob.fom_dz_scale = np1;

    fp.fcase = FamilyCase{CaseId::LegendreStd, std::nullopt, std::nullopt, nullptr};
    fp.certificates = {make_cert(RegimeCertificate::Kind::DecreasingAbsRLt1, {-kInf, kInf})};
    fp.plan.direction = Direction::Forward;
    fp.plan.guess_rule = GuessRule::TableNonzeroRNeg;
    fp.plan.bounds = {0.0, np1 * 18.0};  // z(x) at x -> 1-4.6e-16, below the tanh rounding edge
    fp.plan.accel = AccelState{};
    fp.omega = OmegaTrend::Decreasing;

    fp.opts.rel_tol = 1e-15;
    fp.opts.abs_tol = 0.0;

    fp.positive_zero_count = n / 2;
    fp.zero_at_origin = (n % 2 == 1);
    fp.symmetric = true;

    fp.y_of_x = [ev](double x) { return ev->value(x).y; };
    fp.w_of_x = [ev, n](double x) {
        auto e = ev->value(x);
        return (1.0 - x * x) * e.yp - n * x * e.y;  // ~ sqrt(1-x^2) P_{n+1}, sign-accurate
    };
    double c = n + 1.0;
    fp.cde = CoupledSystem{
        [c](double x) { return c * x / (1.0 - x * x); },
        [c](double x) { return -c / (1.0 - x * x); },
        [c](double x) { return -c * x / (1.0 - x * x); },
        [c](double x) { return c / (1.0 - x * x); },
        Interval{-1.0, 1.0},
    };
    return fp;
}

FamilyProblem hermite_problem(int n) {
    if (n < 1) throw UnsupportedParameter("hermite: n >= 1 required");
    auto ev = std::make_shared<HermiteEvaluator>(n);
    const double s = std::sqrt(2.0 * (n + 1.0));

    // All-zero containment sqrt(2(n+1)) sqrt(2n+1) < 2(n+1) <=> 2n+1 < 2n+2.
    if (!(s * std::sqrt(2.0 * n + 1.0) < 2.0 * (n + 1.0)))
        throw UnsupportedParameter("hermite: containment bound violated");

    FamilyProblem fp;
    fp.state = ev;
    fp.label = "hermite n=" + std::to_string(n);

    fp.prob.eval_x = [ev](double x) { return ev->ratio(x); };
    fp.prob.r_of_x = [s](double x) { return -x / s; };
    fp.prob.rdot_of_x = [s](double) { return -1.0 / (s * s); };
    fp.prob.z_of_x = [s](double x) { return s * x; };
    fp.prob.x_of_z = [s](double z) { return z / s; };
    fp.prob.dz_dx = [s](double) { return s; };
    fp.prob.advance_x = [s](double x, double dz) { return x + dz / s; };
    fp.prob.domain_z = {-kInf, kInf};
    fp.prob.fom_A = [n](double x) { return 2.0 * n + 1.0 - x * x; };
    fp.prob.fom_t1 = [](double, const RatioSample& smp) { return smp.y_val / smp.y_prime_val; };
    fp.prob.fom_dz_scale = s;

    fp.fcase = FamilyCase{CaseId::HermiteStd, std::nullopt, std::nullopt, nullptr};
    fp.certificates = {
        make_cert(RegimeCertificate::Kind::DecreasingAbsRLt1, {-2.0 * (n + 1.0), 2.0 * (n + 1.0)})};
    fp.plan.direction = Direction::Forward;
    fp.plan.guess_rule = GuessRule::TableNonzeroRNeg;
    fp.plan.bounds = {0.0, 2.0 * (n + 1.0)};
    fp.plan.accel = AccelState{};
    fp.omega = OmegaTrend::Decreasing;

    fp.opts.rel_tol = 1e-10;
    fp.opts.abs_tol = 0.0;

    fp.positive_zero_count = n / 2;
    fp.zero_at_origin = (n % 2 == 1);
    fp.symmetric = true;

    fp.y_of_x = [ev](double x) { return ev->value(x).y; };
    fp.w_of_x = [ev](double x) {
        auto e = ev->value(x);
        return x * e.y - e.yp;  // ~ e^{-x^2/2} H_{n+1}, sign-accurate
    };
    fp.cde = CoupledSystem{
        [](double x) { return 2.0 * x; },
        [](double) { return -1.0; },
        [](double) { return 0.0; },
        [n](double) { return 2.0 * (n + 1.0); },
        Interval{-kInf, kInf},
    };
    return fp;
}

FamilyProblem bessel_problem(double mu) {
    if (!(mu > -1.0) || mu > kMaxBesselOrder)
        throw UnsupportedParameter("bessel: order must be in (-1, 1000]");

    FamilyProblem fp;
    fp.label = "bessel mu=" + std::to_string(mu);

    fp.prob.z_of_x = [](double x) { return x; };
    fp.prob.x_of_z = [](double z) { return z; };
    fp.prob.dz_dx = [](double) { return 1.0; };
    fp.prob.advance_x = [](double x, double dz) { return x + dz; };
    fp.prob.domain_z = {0.0, kInf};
    fp.prob.domain_x = {0.0, kInf};
    fp.prob.fom_A = [mu](double x) { return 1.0 + (0.25 - mu * mu) / (x * x); };
    fp.prob.fom_dz_scale = 1.0;
    fp.opts.rel_tol = 0.0;
    fp.opts.abs_tol = 1e-10;
    fp.y_of_x = [mu](double x) { return bessel_j(mu, x); };

    const bool case1 = (mu >= 0.5);
    if (case1) {
        if (mu == 0.5) {
            // r == 0 and h(x) = tan(x); poles at the J_{-1/2} zeros.
            fp.prob.eval_x = [](double x) {
                double t = std::tan(x);
                if (!std::isfinite(t) || std::abs(t) >= kPoleThreshold) return RatioSample::sing();
                return RatioSample::of(t);
            };
        } else {
            fp.prob.eval_x = [mu](double x) { return bessel_ratio_cf(mu, x); };
        }
        fp.prob.r_of_x = [mu](double x) { return (mu - 0.5) / x; };
        fp.prob.rdot_of_x = [mu](double x) { return -(mu - 0.5) / (x * x); };
        fp.prob.fom_t1 = [mu](double x, const RatioSample& s) {
            return s.value / (1.0 + (0.5 - mu) * s.value / x);
        };
        fp.w_of_x = [mu](double x) { return bessel_j(mu - 1.0, x); };

        fp.fcase = FamilyCase{CaseId::BesselCase1, Interval{0.0, mu}, std::nullopt, nullptr};
        if (mu > 0.5) {
            fp.certificates = {make_cert(RegimeCertificate::Kind::DecreasingRPos, {mu, kInf})};
            fp.plan.bounds = {mu, kInf};
        } else {  // mu == 1/2, r == 0
            fp.certificates = {make_cert(RegimeCertificate::Kind::DecreasingAbsRLt1, {0.0, kInf})};
            fp.plan.bounds = {0.0, kInf};
        }
        fp.plan.direction = Direction::Backward;
        fp.plan.guess_rule = GuessRule::TableClosedInterval;
        fp.plan.accel = AccelState{};
        fp.omega = OmegaTrend::Increasing;
    } else {
        if (mu == -0.5) {
            // h(x) = -cot(x); poles at the J_{1/2} zeros.
            fp.prob.eval_x = [](double x) {
                double t = std::tan(x);
                if (!std::isfinite(t) || std::abs(t) <= 1.0 / kPoleThreshold) return RatioSample::sing();
                return RatioSample::of(-1.0 / t);
            };
        } else {
            fp.prob.eval_x = [mu](double x) {
                RatioSample t = bessel_ratio_cf(mu + 1.0, x);  // J_{mu+1}/J_mu
                if (t.singular) return RatioSample::of(0.0);   // pole of t = zero of h
                if (std::abs(t.value) < 1.0 / kPoleThreshold) return RatioSample::sing();
                return RatioSample::of(-1.0 / t.value);
            };
        }
        fp.prob.r_of_x = [mu](double x) { return -(mu + 0.5) / x; };
        fp.prob.rdot_of_x = [mu](double x) { return (mu + 0.5) / (x * x); };
        fp.prob.fom_t1 = [mu](double x, const RatioSample& s) {
            return s.value / (1.0 + (mu + 0.5) * s.value / x);
        };
        fp.w_of_x = [mu](double x) { return bessel_j(mu + 1.0, x); };

        if (mu >= 0.0) {  // sub-case 2(a)
            double bound = kPi / 2.0 * (mu + 1.5);
            fp.fcase = FamilyCase{CaseId::BesselCase2a, Interval{0.0, bound}, std::nullopt, nullptr};
            fp.certificates = {make_cert(RegimeCertificate::Kind::SlowlyIncreasingR, {bound, kInf},
                                         16.0 / (9.0 * kPi * kPi), 4.0 / (3.0 * kPi))};
            fp.plan = SweepPlan{Direction::Forward, GuessRule::TableClosedInterval, {bound, kInf},
                                std::nullopt, AccelState{}};
            fp.omega = OmegaTrend::Decreasing;
        } else if (mu > -0.5) {  // sub-case 2(b)
            double bound = std::sqrt((mu + 1.0) * (mu + 5.0));
            fp.fcase = FamilyCase{CaseId::BesselCase2b, Interval{0.0, bound}, std::nullopt, nullptr};
            fp.certificates = {make_cert(RegimeCertificate::Kind::SlowlyIncreasingR, {bound, kInf},
                                         2.0 / 9.0, 1.0 / 3.0)};
            fp.plan = SweepPlan{Direction::Forward, GuessRule::TableClosedInterval, {bound, kInf},
                                std::nullopt, AccelState{}};
            fp.omega = OmegaTrend::Decreasing;
        } else if (mu == -0.5) {
            fp.fcase = FamilyCase{CaseId::BesselCase2b, std::nullopt, std::nullopt, nullptr};
            fp.certificates = {make_cert(RegimeCertificate::Kind::DecreasingAbsRLt1, {0.0, kInf})};
            fp.plan = SweepPlan{Direction::Forward, GuessRule::TableClosedInterval, {0.0, kInf},
                                std::nullopt, AccelState{}};
            fp.omega = OmegaTrend::Decreasing;
        } else {  // sub-case 2(c): -1 < mu < -1/2, r > 0
            double lower = std::sqrt((mu + 1.0) * (mu + 5.0));
            double bound = -(mu + 0.5);
            fp.prob.r_of_x = [mu](double x) { return -(mu + 0.5) / x; };  // positive here
            fp.fcase = FamilyCase{CaseId::BesselCase2c, Interval{0.0, lower},
                                  std::string("one zero possible in (sqrt((mu+1)(mu+5)), -(mu+1/2))"),
                                  nullptr};
            if (mu < -0.95 && lower < bound) {
                fp.fcase.first_zero_guess = [lower](const FamilyProblem&) {
                    return std::optional<double>(lower);
                };
            }
            fp.certificates = {make_cert(RegimeCertificate::Kind::DecreasingRPos, {bound, kInf})};
            fp.plan = SweepPlan{Direction::Backward, GuessRule::TableClosedInterval, {bound, kInf},
                                std::nullopt, AccelState{}};
            fp.omega = OmegaTrend::Increasing;
        }
    }

    const double c1sign = case1 ? 1.0 : -1.0;
    fp.cde = CoupledSystem{
        [mu, c1sign](double x) { return -c1sign * mu / x; },
        [c1sign](double) { return c1sign * 1.0; },
        [mu, case1](double x) { return case1 ? (mu - 1.0) / x : -(mu + 1.0) / x; },
        [c1sign](double) { return -c1sign * 1.0; },
        Interval{0.0, kInf},
    };
    return fp;
}

FamilyProblem cylinder_problem(double mu, double alpha) {
    if (!(mu > -1.0) || mu > kMaxBesselOrder)
        throw UnsupportedParameter("cylinder: order must be in (-1, 1000]");
    if (!(alpha >= 0.0 && alpha < kPi)) throw UnsupportedParameter("cylinder: alpha must be in [0, pi)");

    FamilyProblem fp;
    fp.label = "cylinder mu=" + std::to_string(mu) + " alpha=" + std::to_string(alpha);

    fp.prob.z_of_x = [](double x) { return x; };
    fp.prob.x_of_z = [](double z) { return z; };
    fp.prob.dz_dx = [](double) { return 1.0; };
    fp.prob.advance_x = [](double x, double dz) { return x + dz; };
    fp.prob.domain_z = {0.0, kInf};
    fp.prob.domain_x = {0.0, kInf};
    fp.prob.fom_A = [mu](double x) { return 1.0 + (0.25 - mu * mu) / (x * x); };
    fp.prob.fom_dz_scale = 1.0;
    fp.opts.rel_tol = 0.0;
    fp.opts.abs_tol = 1e-10;
    fp.y_of_x = [mu, alpha](double x) { return cylinder_pair(mu, alpha, x).first; };

    const bool case1 = (mu >= 0.5);
    if (case1) {
        if (mu == 0.5) {
            // h(x) = tan(x + alpha): zeros at k pi - alpha.
            fp.prob.eval_x = [alpha](double x) {
                double t = std::tan(x + alpha);
                if (!std::isfinite(t) || std::abs(t) >= kPoleThreshold) return RatioSample::sing();
                return RatioSample::of(t);
            };
        } else {
            fp.prob.eval_x = [mu, alpha](double x) { return cylinder_ratio(mu, alpha, x); };
        }
        fp.prob.r_of_x = [mu](double x) { return (mu - 0.5) / x; };
        fp.prob.rdot_of_x = [mu](double x) { return -(mu - 0.5) / (x * x); };
        fp.prob.fom_t1 = [mu](double x, const RatioSample& s) {
            return s.value / (1.0 + (0.5 - mu) * s.value / x);
        };
        fp.w_of_x = [mu, alpha](double x) { return cylinder_pair(mu, alpha, x).second; };

        fp.fcase = FamilyCase{CaseId::CylinderCase1, std::nullopt, std::nullopt, nullptr};
        double lo = std::max(mu - 0.5, 0.0);
        if (alpha < 5.0 * kPi / 6.0 && mu > 0.5) {
            // theta_1(mu,mu) > 5pi/6, so below it no zero sits in (0, mu-1/2].
            fp.fcase.zero_free_region = Interval{0.0, mu - 0.5};
        } else if (mu > 0.5) {
            fp.fcase.special_first_zero = "one zero possible in (0, mu-1/2] for large alpha";
            fp.fcase.first_zero_guess = [lo](const FamilyProblem& f) {
                return sign_change_midpoint(f.y_of_x, std::max(0.05, lo * 1e-3), lo, 64);
            };
        }
        if (mu > 0.5) {
            fp.certificates = {make_cert(RegimeCertificate::Kind::DecreasingRPos, {lo, kInf})};
            fp.plan = SweepPlan{Direction::Backward, GuessRule::TableClosedInterval, {lo, kInf},
                                std::nullopt, AccelState{}};
        } else {  // mu == 1/2, r == 0
            fp.certificates = {make_cert(RegimeCertificate::Kind::DecreasingAbsRLt1, {0.0, kInf})};
            fp.plan = SweepPlan{Direction::Backward, GuessRule::TableClosedInterval, {0.0, kInf},
                                std::nullopt, AccelState{}};
        }
        fp.omega = OmegaTrend::Increasing;
    } else {
        if (mu == -0.5) {
            // h(x) = -cot(x + alpha): zeros at (k + 1/2) pi - alpha.
            fp.prob.eval_x = [alpha](double x) {
                double t = std::tan(x + alpha);
                if (!std::isfinite(t) || std::abs(t) <= 1.0 / kPoleThreshold) return RatioSample::sing();
                return RatioSample::of(-1.0 / t);
            };
        } else {
            fp.prob.eval_x = [mu, alpha](double x) {
                auto [cmu1, cmu] = cylinder_pair(mu + 1.0, alpha, x);  // (C_{mu+1}, C_mu)
                return RatioSample::ratio(-cmu, cmu1);
            };
        }
        fp.prob.r_of_x = [mu](double x) { return -(mu + 0.5) / x; };
        fp.prob.rdot_of_x = [mu](double x) { return (mu + 0.5) / (x * x); };
        fp.prob.fom_t1 = [mu](double x, const RatioSample& s) {
            return s.value / (1.0 + (mu + 0.5) * s.value / x);
        };
        fp.w_of_x = [mu, alpha](double x) { return cylinder_pair(mu + 1.0, alpha, x).first; };

        if (mu < -0.5) {  // sub-case 2(a): r > 0 decreasing
            double bound = -(mu + 0.5);
            fp.fcase = FamilyCase{CaseId::CylinderCase2a, std::nullopt,
                                  std::string("at most one zero in (0, -(mu+1/2)]"), nullptr};
            fp.fcase.first_zero_guess = [bound](const FamilyProblem& f) {
                return sign_change_midpoint(f.y_of_x, 0.02, bound, 64);
            };
            fp.certificates = {make_cert(RegimeCertificate::Kind::DecreasingRPos, {bound, kInf})};
            fp.plan = SweepPlan{Direction::Backward, GuessRule::TableClosedInterval, {bound, kInf},
                                std::nullopt, AccelState{}};
            fp.omega = OmegaTrend::Increasing;
        } else if (mu == -0.5) {
            fp.fcase = FamilyCase{CaseId::CylinderCase2a, std::nullopt, std::nullopt, nullptr};
            fp.certificates = {make_cert(RegimeCertificate::Kind::DecreasingAbsRLt1, {0.0, kInf})};
            fp.plan = SweepPlan{Direction::Forward, GuessRule::TableClosedInterval, {0.0, kInf},
                                std::nullopt, AccelState{}};
            fp.omega = OmegaTrend::Decreasing;
        } else {  // sub-case 2(b): -1/2 < mu < 1/2
            double bound = 0.75 * kPi + mu * kPi / 2.0;
            double k2 = (mu + 0.5) / (kPi / 2.0 * (mu + 1.5));
            double k1 = (mu + 0.5) / (kPi * kPi / 4.0 * (mu + 1.5) * (mu + 1.5));
            fp.fcase = FamilyCase{CaseId::CylinderCase2b, std::nullopt,
                                  std::string("first zero may precede 3pi/4 + mu pi/2"), nullptr};
            fp.fcase.first_zero_guess = [bound, alpha, mu](const FamilyProblem& f) {
                double lo = std::max(0.05, 0.75 * kPi + mu * kPi / 2.0 - alpha);
                return sign_change_midpoint(f.y_of_x, lo * 0.5, bound, 64);
            };
            fp.certificates = {make_cert(RegimeCertificate::Kind::SlowlyIncreasingR, {bound, kInf}, k1, k2)};
            fp.plan = SweepPlan{Direction::Forward, GuessRule::TableClosedInterval, {bound, kInf},
                                std::nullopt, AccelState{}};
            fp.omega = OmegaTrend::Decreasing;
        }
    }

    const double c1sign = case1 ? 1.0 : -1.0;
    fp.cde = CoupledSystem{
        [mu, c1sign](double x) { return -c1sign * mu / x; },
        [c1sign](double) { return c1sign * 1.0; },
        [mu, case1](double x) { return case1 ? (mu - 1.0) / x : -(mu + 1.0) / x; },
        [c1sign](double) { return -c1sign * 1.0; },
        Interval{0.0, kInf},
    };
    return fp;
}

FamilyProblem kummer_problem(double a, double b, bool allow_experimental) {
    if (!(a < -1.0)) throw UnsupportedParameter("kummer: a < -1 required");
    if (!(b > 0.0)) throw UnsupportedParameter("kummer: b > 0 required");
    const bool small_b = b < 1.0 / 6.0;
    if (small_b && !allow_experimental)
        throw UnsupportedParameter("kummer: b < 1/6 needs the experimental first-zero path");

    const double kappa = std::sqrt((1.0 - a) / (b - a));
    const double scale = kappa * (b - a);  // z = scale * log x
    const double disc = a * (a - b) - b;
    if (!(disc > 0.0)) throw UnsupportedParameter("kummer: zero-interval discriminant not positive");

    const double x_lo = b - 2.0 * a - 2.0 * std::sqrt(disc);
    const double x_hi = b - 2.0 * a + 2.0 * std::sqrt(disc);
    const double x_r = 1.0 - 2.0 * a + b;
    const double istar_lo_arg = std::pow(std::sqrt(1.0 - a) - std::sqrt(b - a), 2);
    const double istar_hi_arg = 1.0 - 2.0 * a + b + 2.0 * scale;

    FamilyProblem fp;
    fp.label = "kummer a=" + std::to_string(a) + " b=" + std::to_string(b);

    fp.prob.eval_x = [a, b, kappa](double x) {
        RatioSample s = kummer_ratio(a, b, x);
        if (s.singular) return s;
        double v = kappa * s.value;
        if (std::abs(v) >= kPoleThreshold) return RatioSample::sing();
        return RatioSample::of(v);
    };
    fp.prob.r_of_x = [a, b, scale](double x) { return (1.0 - 2.0 * a + b - x) / (2.0 * scale); };
    fp.prob.rdot_of_x = [scale](double x) { return -x / (2.0 * scale * scale); };
    fp.prob.z_of_x = [scale](double x) { return scale * std::log(x); };
    fp.prob.x_of_z = [scale](double z) { return std::exp(z / scale); };
    fp.prob.dz_dx = [scale](double x) { return scale / x; };
    fp.prob.advance_x = [scale](double x, double dz) { return x * std::exp(dz / scale); };
    fp.prob.domain_z = {-kInf, kInf};
    fp.prob.domain_x = {0.0, kInf};
    // FOM baseline undefined for this family; fom_A left empty.

    fp.fcase = FamilyCase{small_b ? CaseId::KummerSmallB : CaseId::KummerMain, std::nullopt,
                          std::nullopt, nullptr};
    double z_istar_lo = istar_lo_arg > 0.0 ? scale * std::log(istar_lo_arg) : -kInf;
    fp.certificates = {
        make_cert(RegimeCertificate::Kind::RHasUniqueZero, {z_istar_lo, scale * std::log(istar_hi_arg)})};
    fp.plan.direction = Direction::Forward;
    fp.plan.guess_rule = GuessRule::TableRZero;
    fp.plan.bounds = {scale * std::log(x_lo), scale * std::log(x_hi)};
    fp.plan.r_zero = scale * std::log(x_r);
    fp.plan.accel = std::nullopt;  // Omega trend not established for this family
    fp.omega = OmegaTrend::Unknown;

    if (small_b) {
        // Experimental: one zero may precede the |r|<1 interval; bracket it by
        // a sign scan of M(a,b,x) over (x_lo, x at z_I*.lo).
        fp.fcase.special_first_zero = "zeta-interval first-zero path (experimental)";
        double zeta_hi = istar_lo_arg;
        if (zeta_hi > x_lo) {
            fp.fcase.first_zero_guess = [a, b, x_lo, zeta_hi, scale](const FamilyProblem&) {
                auto mid = sign_change_midpoint([a, b](double x) { return kummer_m(a, b, x); },
                                                x_lo * 0.9, zeta_hi * 1.05, 48);
                if (!mid) return std::optional<double>{};
                return std::optional<double>(scale * std::log(*mid));
            };
        }
    }

    fp.opts.rel_tol = 0.0;
    fp.opts.abs_tol = 1e-12;
    fp.opts.stop_in_z = true;

    fp.y_of_x = [a, b](double x) { return kummer_m(a, b, x); };
    fp.w_of_x = [a, b](double x) { return kummer_m(a - 1.0, b, x); };
    fp.cde = CoupledSystem{
        [a, b](double x) { return 1.0 - (b - a) / x; },
        [a, b](double x) { return (b - a) / x; },
        [a](double x) { return -(a - 1.0) / x; },
        [a](double x) { return (a - 1.0) / x; },
        Interval{0.0, kInf},
    };
    return fp;
}

FamilyProblem coulomb_problem(double L, double eta) {
    if (!(L > 0.0) || L > 200.0) throw UnsupportedParameter("coulomb: L must be in (0, 200]");
    if (!(std::abs(eta) <= 50.0)) throw UnsupportedParameter("coulomb: |eta| <= 50 required");

    auto ev = std::make_shared<CoulombEvaluator>(L, eta);
    const double s = std::sqrt(L * L + eta * eta);
    const double zx = s / L;  // dz/dx

    FamilyProblem fp;
    fp.state = ev;
    fp.label = "coulomb L=" + std::to_string(L) + " eta=" + std::to_string(eta);

    fp.prob.eval_x = [ev](double x) { return ev->ratio(x); };
    fp.prob.r_of_x = [L, eta, s](double x) { return (L * L / x + eta) / s; };
    fp.prob.rdot_of_x = [L, s](double x) { return -L * L * L / (s * s * x * x); };
    fp.prob.z_of_x = [zx](double x) { return zx * x; };
    fp.prob.x_of_z = [zx](double z) { return z / zx; };
    fp.prob.dz_dx = [zx](double) { return zx; };
    fp.prob.advance_x = [zx](double x, double dz) { return x + dz / zx; };
    fp.prob.domain_z = {0.0, zx * (50.0 + 10.0 * L)};
    fp.prob.domain_x = {0.0, 50.0 + 10.0 * L + 1.0};
    fp.prob.fom_A = [L, eta](double x) { return 1.0 - 2.0 * eta / x - L * (L + 1.0) / (x * x); };
    fp.prob.fom_t1 = [](double, const RatioSample& smp) { return smp.y_val / smp.y_prime_val; };
    fp.prob.fom_dz_scale = zx;

    const double z_bound = L * s / (s - eta);  // |r| < 1 for z above this

    if (eta >= 0.0) {
        fp.fcase = FamilyCase{CaseId::CoulombRepulsive, std::nullopt,
                              std::string("at most one zero below the |r|<1 region"), nullptr};
        fp.certificates = {make_cert(RegimeCertificate::Kind::DecreasingRPos, {z_bound, kInf})};
        fp.plan = SweepPlan{Direction::Backward, GuessRule::TableClosedInterval,
                            {z_bound, fp.prob.domain_z.hi}, std::nullopt, AccelState{}};
        fp.omega = OmegaTrend::Increasing;
    } else {
        const double z_r = -L * s / eta;
        fp.fcase = FamilyCase{CaseId::CoulombAttractive, std::nullopt,
                              std::string("at most one zero below the |r|<1 region"), nullptr};
        fp.certificates = {make_cert(RegimeCertificate::Kind::RHasUniqueZero, {z_bound, kInf})};
        fp.plan = SweepPlan{Direction::Forward, GuessRule::TableRZero, {z_bound, fp.prob.domain_z.hi},
                            z_r, std::nullopt};
        fp.omega = OmegaTrend::Unknown;
    }
    fp.fcase.first_zero_guess = [z_bound, zx](const FamilyProblem& f) {
        double x_hi = z_bound / zx;
        auto mid = sign_change_midpoint(f.y_of_x, std::max(0.05, x_hi * 1e-3), x_hi, 64);
        if (!mid) return std::optional<double>{};
        return std::optional<double>(zx * *mid);
    };

    fp.opts.rel_tol = 0.0;
    fp.opts.abs_tol = 1e-12;
    fp.opts.stop_in_z = true;

    fp.y_of_x = [ev](double x) { return ev->upper_scaled(x); };
    fp.w_of_x = [ev](double x) { return ev->lower_scaled(x); };
    fp.cde = CoupledSystem{
        [L, eta](double x) { return -(L * L / x + eta) / L; },
        [s, L](double) { return s / L; },
        [L, eta](double x) { return (L * L / x + eta) / L; },
        [s, L](double) { return -s / L; },
        Interval{0.0, kInf},
    };
    return fp;
}

FamilyProblem make_problem(const FamilyParams& params) {
    return std::visit(
        [](const auto& p) -> FamilyProblem {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, LegendreParams>) return legendre_problem(p.n);
            else if constexpr (std::is_same_v<T, HermiteParams>) return hermite_problem(p.n);
            else if constexpr (std::is_same_v<T, BesselParams>) return bessel_problem(p.mu);
            else if constexpr (std::is_same_v<T, CylinderParams>) return cylinder_problem(p.mu, p.alpha);
            else if constexpr (std::is_same_v<T, KummerParams>) return kummer_problem(p.a, p.b, p.allow_experimental);
            else return coulomb_problem(p.L, p.eta);
        },
        params);
}

std::string family_name(const FamilyParams& params) {
    return std::visit(
        [](const auto& p) -> std::string {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, LegendreParams>) return "legendre";
            else if constexpr (std::is_same_v<T, HermiteParams>) return "hermite";
            else if constexpr (std::is_same_v<T, BesselParams>) return "bessel";
            else if constexpr (std::is_same_v<T, CylinderParams>) return "cylinder";
            else if constexpr (std::is_same_v<T, KummerParams>) return "kummer";
            else return "coulomb";
        },
        params);
}

std::string params_label(const FamilyParams& params) {
    return std::visit(
        [](const auto& p) -> std::string {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, LegendreParams>) return "n=" + std::to_string(p.n);
            else if constexpr (std::is_same_v<T, HermiteParams>) return "n=" + std::to_string(p.n);
            else if constexpr (std::is_same_v<T, BesselParams>) return "mu=" + std::to_string(p.mu);
            else if constexpr (std::is_same_v<T, CylinderParams>)
                return "mu=" + std::to_string(p.mu) + ";alpha=" + std::to_string(p.alpha);
            else if constexpr (std::is_same_v<T, KummerParams>)
                return "a=" + std::to_string(p.a) + ";b=" + std::to_string(p.b);
            else return "L=" + std::to_string(p.L) + ";eta=" + std::to_string(p.eta);
        },
        params);
}

}  // namespace zerofind
