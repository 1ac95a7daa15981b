#include <doctest.h>

#include <cmath>

#include "zerofind/oracle.hpp"
#include "zerofind/sweep.hpp"

using namespace zerofind;

namespace {

SweepPlan interval_plan(const FamilyProblem& fp, double x_lo, double x_hi) {
    SweepPlan plan = fp.plan;
    plan.guess_rule = GuessRule::TableClosedInterval;
    plan.bounds = {fp.prob.z_of_x(x_lo), fp.prob.z_of_x(x_hi)};
    return plan;
}

std::vector<double> xs_of(const SweepReport& rep) {
    std::vector<double> out;
    for (const auto& z : rep.zeros) out.push_back(z.x_star);
    return out;
}

}  // namespace

TEST_CASE("xi sign conventions") {
    CHECK(xi1(0.0) == 1);
    CHECK(xi2(0.0) == -1);
    CHECK(xi1(-2.5) == -1);
    CHECK(xi2(1e-300) == 1);
}

TEST_CASE("classify_regime on family fixtures") {
    FamilyProblem leg = legendre_problem(9);
    CHECK(classify_regime(leg, {0.0, kInf}).kind == RegimeCertificate::Kind::DecreasingAbsRLt1);

    FamilyProblem b10 = bessel_problem(10.0);
    CHECK(classify_regime(b10, {10.0, kInf}).kind == RegimeCertificate::Kind::DecreasingRPos);

    FamilyProblem b025 = bessel_problem(0.25);
    RegimeCertificate c = classify_regime(b025, {M_PI / 2.0 * 1.75 + 1e-9, kInf});
    CHECK(c.kind == RegimeCertificate::Kind::SlowlyIncreasingR);
    CHECK(c.k1 == doctest::Approx(16.0 / (9.0 * M_PI * M_PI)).epsilon(1e-14));
    CHECK(c.k2 == doctest::Approx(4.0 / (3.0 * M_PI)).epsilon(1e-14));

    CHECK(classify_regime(b10, {5.0, 20.0}).kind == RegimeCertificate::Kind::Unsupported);
}

TEST_CASE("next_guess pi/2 rule and bounds exit") {
    SweepPlan plan;
    plan.direction = Direction::Forward;
    plan.bounds = {0.0, 10.0};
    auto g = next_guess(plan, 4.0);
    REQUIRE(g.has_value());
    CHECK(*g == doctest::Approx(4.0 + M_PI / 2.0).epsilon(1e-15));
    CHECK(!next_guess(plan, 9.0).has_value());

    plan.direction = Direction::Backward;
    auto gb = next_guess(plan, 4.0);
    CHECK(*gb == doctest::Approx(4.0 - M_PI / 2.0).epsilon(1e-15));
}

TEST_CASE("guess increments map to the paper's x-space steps") {
    // Hermite n=10: pi/2 in z is pi/(2 sqrt(2(n+1))) in x.
    FamilyProblem h = hermite_problem(10);
    double x0 = 0.8;
    CHECK(h.prob.advance_x(x0, M_PI / 2.0) - x0 ==
          doctest::Approx(0.3348949021214335).epsilon(1e-13));

    // Legendre: tanh-composed increment.
    FamilyProblem l = legendre_problem(9);
    double t = std::tanh(M_PI / (2.0 * 10.0));
    double want = (x0 + t) / (1.0 + x0 * t);
    CHECK(l.prob.advance_x(x0, M_PI / 2.0) == doctest::Approx(want).epsilon(1e-14));
}

TEST_CASE("first_guess_closed_interval sign rules") {
    SweepPlan plan;
    plan.bounds = {2.0, 9.0};
    plan.direction = Direction::Backward;
    CHECK(first_guess_closed_interval(plan, 0.3, 1) == doctest::Approx(9.0).epsilon(1e-15));
    CHECK(first_guess_closed_interval(plan, -0.3, 1) == doctest::Approx(9.0 - M_PI / 2.0).epsilon(1e-15));
    plan.direction = Direction::Forward;
    CHECK(first_guess_closed_interval(plan, -0.2, -1) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(first_guess_closed_interval(plan, 0.2, -1) == doctest::Approx(2.0 + M_PI / 2.0).epsilon(1e-15));
}

TEST_CASE("guess_around_r_zero branch rules") {
    SweepPlan plan;
    plan.r_zero = 5.0;
    auto s = guess_around_r_zero(plan, RatioSample::sing());
    CHECK(s.first == doctest::Approx(5.0 - M_PI / 2.0));
    CHECK(s.second == doctest::Approx(5.0 + M_PI / 2.0));

    auto neg = guess_around_r_zero(plan, RatioSample::of(-0.4));
    CHECK(neg.first == doctest::Approx(5.0 - M_PI / 2.0));
    CHECK(neg.second == doctest::Approx(5.0));

    auto zero = guess_around_r_zero(plan, RatioSample::of(0.0));
    CHECK(zero.first == doctest::Approx(5.0));
    CHECK(zero.second == doctest::Approx(5.0 + M_PI / 2.0));
}

TEST_CASE("accelerate_guess uses the previous gap") {
    SweepPlan plan;
    plan.direction = Direction::Forward;
    CHECK(accelerate_guess(plan, {2.0, 3.7}) == doctest::Approx(5.4).epsilon(1e-15));
    plan.direction = Direction::Backward;
    CHECK(accelerate_guess(plan, {9.0, 7.5}) == doctest::Approx(6.0).epsilon(1e-15));
}

TEST_CASE("legendre n=5 positive sweep") {
    FamilyProblem fp = legendre_problem(5);
    SweepReport rep = sweep_family(fp, fp.opts);
    auto xs = xs_of(rep);
    REQUIRE(xs.size() == 2);
    CHECK(xs[0] == doctest::Approx(0.5384693101056831).epsilon(1e-13));
    CHECK(xs[1] == doctest::Approx(0.906179845938664).epsilon(1e-13));
}

TEST_CASE("hermite n=4 positive sweep") {
    FamilyProblem fp = hermite_problem(4);
    SweepReport rep = sweep_family(fp, fp.opts);
    auto xs = xs_of(rep);
    REQUIRE(xs.size() == 2);
    CHECK(xs[0] == doctest::Approx(0.5246476232752903).epsilon(1e-12));
    CHECK(xs[1] == doctest::Approx(1.650680123885785).epsilon(1e-12));
}

TEST_CASE("bessel mu=1/2 zeros are k pi on [1, 10]") {
    FamilyProblem fp = bessel_problem(0.5);
    SweepReport rep = sweep_interval(fp, interval_plan(fp, 1.0, 10.0), fp.opts);
    auto xs = xs_of(rep);
    REQUIRE(xs.size() == 3);
    for (int k = 1; k <= 3; ++k) CHECK(std::abs(xs[k - 1] - k * M_PI) < 1e-12);
}

TEST_CASE("bessel mu=10 sweep matches the library oracle") {
    FamilyProblem fp = bessel_problem(10.0);
    SweepReport rep = sweep_interval(fp, interval_plan(fp, 10.0, 60.0), fp.opts);
    oracle::OracleConfig cfg;
    cfg.grid_step = 0.6;
    cfg.evaluator = [](double x) { return oracle::bessel_j_ref(10.0, x); };
    AuditRecord audit = oracle::audit_sweep(rep, cfg, {10.0, 60.0}, fp.prob.x_of_z);
    CHECK(audit.missed == 0);
    CHECK(audit.spurious == 0);
    CHECK(audit.max_relative_error < 1e-11);
    // No zero inside the declared zero-free region (0, mu].
    for (double x : xs_of(rep)) CHECK(x > 10.0);
}

TEST_CASE("bessel mu=-0.97 bespoke first zero") {
    FamilyProblem fp = bessel_problem(-0.97);
    REQUIRE(fp.fcase.first_zero_guess);
    SweepReport rep = sweep_interval(fp, interval_plan(fp, 0.1, 12.0), fp.opts);
    auto xs = xs_of(rep);
    REQUIRE(!xs.empty());
    CHECK(xs[0] == doctest::Approx(0.34898589409472642).epsilon(1e-11));
    // Completeness against the reflected library evaluator.
    oracle::OracleConfig cfg;
    cfg.grid_step = 0.4;
    cfg.evaluator = [](double x) { return oracle::bessel_j_ref(-0.97, x); };
    AuditRecord audit = oracle::audit_sweep(rep, cfg, {0.1, 12.0}, fp.prob.x_of_z);
    CHECK(audit.missed == 0);
    CHECK(audit.spurious == 0);
}

TEST_CASE("cylinder mu=1/2 alpha=0.75 zeros are k pi - alpha") {
    FamilyProblem fp = cylinder_problem(0.5, 0.75);
    SweepReport rep = sweep_interval(fp, interval_plan(fp, 1.0, 20.0), fp.opts);
    auto xs = xs_of(rep);
    REQUIRE(xs.size() == 6);
    for (int k = 1; k <= 6; ++k) CHECK(std::abs(xs[k - 1] - (k * M_PI - 0.75)) < 1e-12);
}

TEST_CASE("cylinder mu=-0.5 alpha=0.2 zeros") {
    FamilyProblem fp = cylinder_problem(-0.5, 0.2);
    SweepReport rep = sweep_interval(fp, interval_plan(fp, 0.5, 12.0), fp.opts);
    auto xs = xs_of(rep);
    REQUIRE(xs.size() >= 3);
    for (size_t k = 0; k < xs.size(); ++k)
        CHECK(std::abs(xs[k] - ((k + 0.5) * M_PI - 0.2)) < 1e-11);
}

TEST_CASE("kummer a=-2 b=1 sweep returns 2 +/- sqrt(2)") {
    FamilyProblem fp = kummer_problem(-2.0, 1.0);
    SweepReport rep = sweep_family(fp, fp.opts);
    auto xs = xs_of(rep);
    REQUIRE(xs.size() == 2);
    CHECK(xs[0] == doctest::Approx(0.5857864376269049).epsilon(1e-13));
    CHECK(xs[1] == doctest::Approx(3.414213562373095).epsilon(1e-13));
}

TEST_CASE("kummer a=-3 b=1 sweep returns the cubic roots") {
    FamilyProblem fp = kummer_problem(-3.0, 1.0);
    SweepReport rep = sweep_family(fp, fp.opts);
    auto xs = xs_of(rep);
    REQUIRE(xs.size() == 3);
    CHECK(xs[0] == doctest::Approx(0.41577455678347908).epsilon(1e-12));
    CHECK(xs[1] == doctest::Approx(2.2942803602790417).epsilon(1e-12));
    CHECK(xs[2] == doctest::Approx(6.2899450829374792).epsilon(1e-12));
}

TEST_CASE("coulomb eta=0 L=1 zeros solve tan x = x") {
    FamilyProblem fp = coulomb_problem(1.0, 0.0);
    SweepReport rep = sweep_interval(fp, interval_plan(fp, 1.0 + 1e-9, 20.0), fp.opts);
    auto xs = xs_of(rep);
    const double want[] = {4.4934094579090642, 7.7252518369377072, 10.9041216594289,
                           14.066193912831473, 17.220755271930769};
    REQUIRE(xs.size() == 5);
    for (int i = 0; i < 5; ++i) CHECK(std::abs(xs[i] - want[i]) < 1e-10);
}

TEST_CASE("coulomb attractive eta sweeps around z_r") {
    FamilyProblem fp = coulomb_problem(2.0, -1.0);
    SweepPlan plan = fp.plan;
    plan.bounds = {fp.prob.z_of_x(2.0), fp.prob.z_of_x(25.0)};
    SweepReport rep = sweep_interval(fp, plan, fp.opts);
    auto xs = xs_of(rep);
    REQUIRE(!xs.empty());
    // Verify against a sign scan of the reference series.
    oracle::OracleConfig cfg;
    cfg.grid_step = 0.5;
    cfg.evaluator = [&fp](double z) { return oracle::coulomb_f_ref(2.0, -1.0, fp.prob.x_of_z(z)); };
    AuditRecord audit = oracle::audit_sweep(rep, cfg, plan.bounds, fp.prob.x_of_z, 1e-8);
    CHECK(audit.missed == 0);
    CHECK(audit.spurious == 0);
}

TEST_CASE("legendre sweep gap sequence is monotone per the convexity direction") {
    FamilyProblem fp = legendre_problem(40);
    SweepReport rep = sweep_family(fp, fp.opts);
    REQUIRE(rep.zeros.size() == 20);
    // Omega decreasing on z > 0: inter-zero z-gaps increase.
    for (size_t i = 2; i + 1 < rep.zeros.size(); ++i) {
        double g0 = rep.zeros[i].z_star - rep.zeros[i - 1].z_star;
        double g1 = rep.zeros[i + 1].z_star - rep.zeros[i].z_star;
        CHECK(g1 > g0 * (1.0 - 1e-12));
    }
    // Some accelerated guesses were used past the third zero.
    bool any_accel = false;
    for (const auto& g : rep.guesses_used) any_accel = any_accel || g.accelerated;
    CHECK(any_accel);
}

TEST_CASE("guess placement under a decreasing positive drift") {
    // Backward sweep guesses must see h > 0 (right side of the target zero).
    FamilyProblem fp = bessel_problem(10.0);
    SweepReport rep = sweep_interval(fp, interval_plan(fp, 10.0, 40.0), fp.opts);
    REQUIRE(!rep.zeros.empty());
    for (const auto& g : rep.guesses_used) {
        double h = fp.prob.h(g.guess_z);
        if (std::isfinite(h)) CHECK(h > 0.0);
    }
    for (const auto& note : rep.notes) CHECK(note.find("sign check") == std::string::npos);
}

TEST_CASE("unsupported interval is refused") {
    FamilyProblem fp = bessel_problem(10.0);
    SweepPlan plan = interval_plan(fp, 1.0, 9.0);  // entirely below the certified region
    CHECK_THROWS_AS(sweep_interval(fp, plan, fp.opts), UnsupportedRegime);
}

TEST_CASE("bespoke first-zero corners match the oracle") {
    auto audit_against = [](const FamilyProblem& fp, const SweepReport& rep,
                            const std::function<double(double)>& ref_eval, double lo, double hi,
                            double step) {
        oracle::OracleConfig cfg;
        cfg.grid_step = step;
        cfg.evaluator = ref_eval;
        auto ref = oracle::scan_and_bisect(cfg, lo, hi);
        std::vector<double> got;
        for (const auto& z : rep.zeros) got.push_back(fp.prob.z_of_x(z.x_star));
        return oracle::audit_zeros(got, ref, 1e-8);
    };

    SUBCASE("cylinder case 1 with a large phase has a zero below mu - 1/2") {
        FamilyProblem fp = cylinder_problem(3.0, 2.9);
        SweepPlan plan = fp.plan;
        plan.bounds = {0.1, 20.0};
        SweepReport rep = sweep_interval(fp, plan, fp.opts);
        auto a = audit_against(fp, rep, [](double x) { return oracle::cylinder_ref(3.0, 2.9, x); }, 0.1,
                               20.0, 0.25);
        CHECK(a.missed == 0);
        CHECK(a.spurious == 0);
        REQUIRE(!rep.zeros.empty());
        CHECK(rep.zeros[0].x_star < 2.5);  // inside the (0, mu-1/2] corner
    }
    SUBCASE("cylinder sub-case 2(b) first zero precedes the lower bound") {
        FamilyProblem fp = cylinder_problem(0.2, 2.0);
        SweepPlan plan = fp.plan;
        plan.bounds = {0.05, 20.0};
        SweepReport rep = sweep_interval(fp, plan, fp.opts);
        auto a = audit_against(fp, rep, [](double x) { return oracle::cylinder_ref(0.2, 2.0, x); }, 0.05,
                               20.0, 0.25);
        CHECK(a.missed == 0);
        CHECK(a.spurious == 0);
    }
    SUBCASE("kummer experimental small-b path finds the zeta-interval zero") {
        FamilyProblem fp = kummer_problem(-4.0, 0.1, true);
        SweepReport rep = sweep_family(fp, fp.opts);
        REQUIRE(rep.zeros.size() == 4);
        CHECK(rep.zeros[0].x_star == doctest::Approx(0.0259077782).epsilon(1e-7));
        auto a = audit_against(
            fp, rep,
            [&fp](double z) { return oracle::kummer_m_ref(-4.0, 0.1, fp.prob.x_of_z(z)); },
            fp.prob.z_of_x(0.02), fp.prob.z_of_x(18.0), 0.3);
        CHECK(a.missed == 0);
        CHECK(a.spurious == 0);
    }
    SUBCASE("coulomb attractive near-origin zero") {
        FamilyProblem fp = coulomb_problem(0.5, -4.0);
        SweepPlan plan = fp.plan;
        plan.bounds = {0.05 * fp.prob.dz_dx(1.0), fp.prob.z_of_x(12.0)};
        SweepReport rep = sweep_interval(fp, plan, fp.opts);
        auto a = audit_against(
            fp, rep, [&fp](double z) { return oracle::coulomb_f_ref(0.5, -4.0, fp.prob.x_of_z(z)); },
            plan.bounds.lo, plan.bounds.hi, 0.3);
        CHECK(a.missed == 0);
        CHECK(a.spurious == 0);
    }
}
