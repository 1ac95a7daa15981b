// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Tolerances and runtime budgets are pinned in code.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "../tools/cli.hpp"
#include "zerofind/oracle.hpp"
#include "zerofind/sweep.hpp"

using namespace zerofind;
using cli::RunConfig;
using cli::RunOutput;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("%s criterion %2d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
    if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<double> positive_xs(const RunOutput& out) {
    std::vector<double> xs;
    for (const auto& r : out.records)
        if (r.x > 1e-12) xs.push_back(r.x);
    return xs;
}

// Strict monotonicity toward the converged zero, up to the double-precision
// floor near the end of the run.
bool history_monotone(const ZeroResult& res) {
    const auto& h = res.history;
    if (h.size() < 2) return true;
    double dir = (res.z_star >= h.front()) ? 1.0 : -1.0;
    double floor = 100.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(res.z_star));
    for (size_t i = 0; i + 1 < h.size(); ++i) {
        double step = (h[i + 1] - h[i]) * dir;
        bool near_end = std::abs(h[i] - res.z_star) <= 10.0 * floor;
        if (step <= 0.0 && !(near_end && step > -floor)) return false;
    }
    return true;
}

void criterion_1() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string why;

    RunConfig bc;
    bc.params = BesselParams{0.5};
    bc.interval = {{1.0, 100.0 * M_PI + 1.0}};
    RunOutput b = cli::run_zeros(bc);
    if (b.records.size() != 100) {
        ok = false;
        why = "J_1/2 count " + std::to_string(b.records.size());
    } else {
        for (int k = 1; k <= 100; ++k)
            if (std::abs(b.records[k - 1].x - k * M_PI) > 1e-12) ok = false;
    }

    RunConfig cc;
    cc.params = CylinderParams{0.5, 0.75};
    cc.interval = {{1.0, 100.0 * M_PI - 0.75 + 1.0}};
    RunOutput c = cli::run_zeros(cc);
    if (c.records.size() != 100) {
        ok = false;
        why += " C_1/2 count " + std::to_string(c.records.size());
    } else {
        for (int k = 1; k <= 100; ++k)
            if (std::abs(c.records[k - 1].x - (k * M_PI - 0.75)) > 1e-12) ok = false;
    }

    double secs = seconds_since(t0);
    ok = ok && secs < 1.0;
    report(1, ok, "closed-form families J_1/2 and C_1/2(0.75), k=1..100 within 1e-12 (" +
                      std::to_string(secs) + " s)" + why);
}

void polynomial_criterion(int criterion, bool hermite, const std::vector<int>& degrees) {
    bool ok = true;
    std::string detail;
    double timed_secs = 0.0;
    for (int n : degrees) {
        auto t0 = std::chrono::steady_clock::now();
        RunConfig cfg;
        if (hermite)
            cfg.params = HermiteParams{n};
        else
            cfg.params = LegendreParams{n};
        RunOutput out = cli::run_zeros(cfg);
        auto got = positive_xs(out);
        auto ref = cli::oracle_zeros(cfg, out);
        std::vector<double> ref_pos;
        for (double x : ref)
            if (x > 1e-12) ref_pos.push_back(x);
        AuditRecord audit = oracle::audit_zeros(got, ref_pos, 1e-10);
        double secs = seconds_since(t0);
        if (n == 1000) timed_secs = secs;

        bool sz = static_cast<int>(got.size()) == n / 2;
        bool complete = audit.missed == 0 && audit.spurious == 0;
        bool accurate = audit.max_relative_error <= 1e-12;
        bool contained = true;
        if (hermite) {
            double bound = std::sqrt(2.0 * n + 1.0);
            for (double x : got) contained = contained && (x < bound);
        }
        if (!(sz && complete && accurate && contained)) {
            ok = false;
            detail += " n=" + std::to_string(n) + "(count=" + std::to_string(got.size()) +
                      ",missed=" + std::to_string(audit.missed) +
                      ",spurious=" + std::to_string(audit.spurious) +
                      ",maxRE=" + std::to_string(audit.max_relative_error) + ")";
        }
    }
    ok = ok && timed_secs < 5.0;
    report(criterion, ok,
           std::string(hermite ? "hermite" : "legendre") +
               " n in {" + (hermite ? "4,101,1000" : "5,100,1000") +
               "}: counts, audit, maxRE<=1e-12 (n=1000: " + std::to_string(timed_secs) + " s)" + detail);
}

void criterion_4() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    for (double mu : {0.0, 0.25, 2.5, 10.0, -0.3, -0.7}) {
        FamilyProblem probe = bessel_problem(mu);
        double bound = probe.certificates.front().interval.lo;
        if (probe.fcase.zero_free_region) bound = std::max(bound, probe.fcase.zero_free_region->hi);
        if (mu == -0.7) bound = -(mu + 0.5);  // case 2c sweeps from the r<1 edge
        double lo = std::max(bound, 0.1), hi = bound + 100.0;

        RunConfig cfg;
        cfg.params = BesselParams{mu};
        cfg.interval = {{lo, hi}};
        RunOutput out = cli::run_zeros(cfg);
        auto got = positive_xs(out);
        auto ref = cli::oracle_zeros(cfg, out);
        AuditRecord audit = oracle::audit_zeros(got, ref, 1e-9);
        bool complete = audit.missed == 0 && audit.spurious == 0;
        bool accurate = audit.max_relative_error <= 1e-11;
        bool zero_free_ok = true;
        if (probe.fcase.zero_free_region) {
            for (double x : got)
                if (x <= probe.fcase.zero_free_region->hi) zero_free_ok = false;
        }
        if (!(complete && accurate && zero_free_ok)) {
            ok = false;
            detail += " mu=" + std::to_string(mu) + "(missed=" + std::to_string(audit.missed) +
                      ",spurious=" + std::to_string(audit.spurious) +
                      ",maxRE=" + std::to_string(audit.max_relative_error) + ")";
        }
    }
    double secs = seconds_since(t0);
    ok = ok && secs < 10.0;
    report(4, ok, "bessel mu set on [bound, bound+100]: counts, maxRE<=1e-11, zero-free regions (" +
                      std::to_string(secs) + " s)" + detail);
}

void criterion_5() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;

    RunConfig c2;
    c2.params = KummerParams{-2.0, 1.0};
    RunOutput r2 = cli::run_zeros(c2);
    ok = ok && r2.records.size() == 2;
    if (ok) {
        ok = ok && std::abs(r2.records[0].x - (2.0 - std::sqrt(2.0))) <= 1e-12;
        ok = ok && std::abs(r2.records[1].x - (2.0 + std::sqrt(2.0))) <= 1e-12;
    }

    RunConfig c3;
    c3.params = KummerParams{-3.0, 1.0};
    RunOutput r3 = cli::run_zeros(c3);
    // Independent oracle: bisection on the cubic M(-3,1,x) = 1 - 3x + 1.5x^2 - x^3/6.
    oracle::OracleConfig ocfg;
    ocfg.grid_step = 0.05;
    ocfg.evaluator = [](double x) { return 1.0 - 3.0 * x + 1.5 * x * x - x * x * x / 6.0; };
    auto roots = oracle::scan_and_bisect(ocfg, 0.01, 13.0);
    ok = ok && r3.records.size() == 3 && roots.size() == 3;
    if (ok)
        for (int i = 0; i < 3; ++i)
            ok = ok && oracle::relative_error(r3.records[i].x, roots[i]) <= 1e-11;

    double secs = seconds_since(t0);
    ok = ok && secs < 1.0;
    report(5, ok, "kummer a=-2 and a=-3 at b=1 match the closed-form roots (" + std::to_string(secs) + " s)");
}

void criterion_6() {
    auto t0 = std::chrono::steady_clock::now();
    RunConfig cfg;
    cfg.params = CoulombParams{1.0, 0.0};
    cfg.interval = {{1.0 + 1e-9, 20.0}};
    RunOutput out = cli::run_zeros(cfg);

    // Oracle: bisection on sin x - x cos x (the tan x = x roots).
    oracle::OracleConfig ocfg;
    ocfg.grid_step = 0.05;
    ocfg.evaluator = [](double x) { return std::sin(x) - x * std::cos(x); };
    auto roots = oracle::scan_and_bisect(ocfg, 1.0, 20.0);

    bool ok = out.records.size() == roots.size();
    if (ok)
        for (size_t i = 0; i < roots.size(); ++i)
            ok = ok && std::abs(out.records[i].x - roots[i]) <= 1e-10;
    double secs = seconds_since(t0);
    ok = ok && secs < 1.0;
    report(6, ok, "coulomb eta=0 L=1 on (1,20] matches tan x = x roots to 1e-10 (" +
                      std::to_string(secs) + " s), zeros=" + std::to_string(out.records.size()));
}

struct OrderFixture {
    std::string label;
    FamilyParams params;
    std::optional<std::pair<double, double>> interval;
    int index;
};

void criterion_7() {
    std::vector<OrderFixture> fixtures = {
        {"legendre n=50 #8", LegendreParams{50}, std::nullopt, 8},
        {"legendre n=50 #15", LegendreParams{50}, std::nullopt, 15},
        {"hermite n=20 #3", HermiteParams{20}, std::nullopt, 3},
        {"bessel mu=3 #2", BesselParams{3.0}, {{5.0, 25.0}}, 2},
        {"bessel mu=3 #4", BesselParams{3.0}, {{5.0, 25.0}}, 4},
        {"coulomb L=1 #2", CoulombParams{1.0, 0.0}, {{1.5, 20.0}}, 2},
    };
    bool ok = true;
    std::string detail;
    for (const auto& fx : fixtures) {
        for (Method m : {Method::Tom, Method::Newton}) {
            RunConfig cfg;
            cfg.params = fx.params;
            cfg.interval = fx.interval;
            cfg.method = m;
            cfg.tol = 1e-13;
            cfg.accel = false;
            RunOutput out;
            try {
                out = cli::run_zeros(cfg);
            } catch (const std::exception& e) {
                ok = false;
                detail += " " + fx.label + ":" + e.what();
                continue;
            }
            if (fx.index > static_cast<int>(out.report.zeros.size())) {
                ok = false;
                detail += " " + fx.label + ":short";
                continue;
            }
            const ZeroResult& res = out.report.zeros[fx.index - 1];
            IterationOptions polish = out.problem.opts;
            polish.method = Method::Tom;
            polish.rel_tol = 0.0;
            polish.abs_tol = 1e-15 * std::max(1.0, std::abs(res.z_star));
            polish.stop_in_z = true;
            ZeroResult ref = solve_zero(out.problem.prob, res.z_star, polish);
            double z_star = ref.converged() ? ref.z_star : res.z_star;
            double order;
            try {
                order = estimate_order(res.history, z_star);
            } catch (const std::exception& e) {
                ok = false;
                detail += " " + fx.label + ":" + e.what();
                continue;
            }
            bool in_band = (m == Method::Tom) ? (order >= 2.7 && order <= 3.3)
                                              : (order >= 1.8 && order <= 2.2);
            if (!in_band) {
                ok = false;
                char buf[96];
                std::snprintf(buf, sizeof buf, " %s %s=%.3f", fx.label.c_str(), method_name(m), order);
                detail += buf;
            }
        }
    }
    report(7, ok, "convergence order: TOM in [2.7,3.3], Newton in [1.8,2.2] on 6 fixtures" + detail);
}

void criterion_8() {
    struct Window {
        FamilyProblem fp;
        double lo, hi;
    };
    std::vector<Window> windows;
    windows.push_back({legendre_problem(7), 0.2, 6.0});
    windows.push_back({hermite_problem(6), 0.3, 8.0});
    windows.push_back({bessel_problem(10.0), 10.5, 40.0});
    windows.push_back({cylinder_problem(2.5, 0.75), 3.0, 25.0});
    {
        FamilyProblem k = kummer_problem(-3.0, 1.0);
        double lo = k.plan.bounds.lo, hi = k.plan.bounds.hi;
        windows.push_back({std::move(k), lo, hi});
    }
    windows.push_back({coulomb_problem(2.0, -1.5), 4.0, 30.0});

    bool ok = true;
    std::string detail;
    for (auto& w : windows) {
        std::mt19937 rng(40917);
        std::uniform_real_distribution<double> uz(w.lo, w.hi);
        std::vector<double> zs;
        for (int i = 0; i < 700; ++i) zs.push_back(uz(rng));
        std::sort(zs.begin(), zs.end());
        int used = 0, failures = 0;
        const double delta = 1e-6;
        for (double z : zs) {
            if (used >= 100) break;
            double h = w.fp.prob.h(z);
            if (!std::isfinite(h) || std::abs(h) > 1000.0) continue;  // 1e-3 pole neighborhood
            if (!std::isfinite(w.fp.prob.h(z - delta)) || !std::isfinite(w.fp.prob.h(z + delta))) continue;
            double res = riccati_residual(w.fp.prob, z, delta);
            if (!(std::abs(res) <= 1e-5 * (1.0 + h * h))) ++failures;
            ++used;
        }
        if (used < 100 || failures > 0) {
            ok = false;
            detail += " " + w.fp.label + "(used=" + std::to_string(used) +
                      ",failures=" + std::to_string(failures) + ")";
        }
    }
    report(8, ok, "riccati consistency: |residual| <= 1e-5 (1+h^2) at 100 points per adapter" + detail);
}

void criterion_9() {
    int checked = 0, violations = 0;
    auto harvest = [&](const FamilyProblem& fp, const SweepPlan& plan, int take) {
        SweepReport rep = sweep_interval(fp, plan, fp.opts);
        for (int i = 0; i < take && i < static_cast<int>(rep.zeros.size()); ++i) {
            ++checked;
            if (!history_monotone(rep.zeros[i])) ++violations;
        }
    };
    {
        FamilyProblem fp = bessel_problem(10.0);
        SweepPlan plan = fp.plan;
        plan.bounds = {10.0, 40.0};
        harvest(fp, plan, 6);
    }
    {
        FamilyProblem fp = bessel_problem(0.25);
        SweepPlan plan = fp.plan;
        plan.bounds = {plan.bounds.lo, 30.0};
        harvest(fp, plan, 5);
    }
    {
        FamilyProblem fp = legendre_problem(9);
        harvest(fp, fp.plan, 4);
    }
    {
        FamilyProblem fp = hermite_problem(11);
        harvest(fp, fp.plan, 3);
    }
    {
        FamilyProblem fp = kummer_problem(-3.0, 1.0);
        harvest(fp, fp.plan, 3);
    }
    bool ok = checked >= 20 && violations == 0;
    report(9, ok, "monotone histories on " + std::to_string(checked) +
                      " certified solves, violations=" + std::to_string(violations));
}

void criterion_10() {
    auto t0 = std::chrono::steady_clock::now();

    RunConfig tom;
    tom.params = LegendreParams{10000};
    RunOutput rt = cli::run_zeros(tom);
    RunConfig som = tom;
    som.method = Method::Som;
    RunOutput rs = cli::run_zeros(som);
    bool legendre_ok = rt.total_iterations < rs.total_iterations &&
                       rt.records.size() == 10000 && rs.records.size() == 10000;

    RunConfig bt;
    bt.params = BesselParams{100.0};
    bt.interval = {{100.0 + 1e-9, 1100.0}};
    RunOutput rbt = cli::run_zeros(bt);
    RunConfig bn = bt;
    bn.method = Method::Newton;
    RunOutput rbn = cli::run_zeros(bn);
    bool bessel_ok = rbt.total_iterations <= rbn.total_iterations &&
                     rbt.records.size() == rbn.records.size() && !rbt.records.empty();

    double secs = seconds_since(t0);
    bool ok = legendre_ok && bessel_ok && secs < 30.0;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "iteration trend: legendre 1e4 TOM=%d < SOM=%d; bessel mu=100 TOM=%d <= NEWTON=%d "
                  "(%.2f s)",
                  rt.total_iterations, rs.total_iterations, rbt.total_iterations, rbn.total_iterations,
                  secs);
    report(10, ok, buf);
}

void criterion_11() {
    int pairs = 0, violations = 0;
    const double bound = M_PI / 2.0 + 1e-9;

    auto check_fixture = [&](const FamilyProblem& fp, const SweepPlan& plan, bool r_positive,
                             double w_scan_lo, double w_scan_hi) {
        SweepReport rep = sweep_interval(fp, plan, fp.opts);
        oracle::OracleConfig cfg;
        cfg.grid_step = 0.5;
        cfg.evaluator = [&fp](double z) { return fp.w_of_x(fp.prob.x_of_z(z)); };
        auto sings = oracle::scan_and_bisect(cfg, w_scan_lo, w_scan_hi);
        for (const auto& zr : rep.zeros) {
            if (r_positive) {
                // nearest singularity below the zero
                double best = -kInf;
                for (double s : sings)
                    if (s < zr.z_star) best = std::max(best, s);
                if (std::isfinite(best)) {
                    ++pairs;
                    if (!(zr.z_star - best < bound)) ++violations;
                }
            } else {
                double best = kInf;
                for (double s : sings)
                    if (s > zr.z_star) best = std::min(best, s);
                if (std::isfinite(best)) {
                    ++pairs;
                    if (!(best - zr.z_star < bound)) ++violations;
                }
            }
        }
    };

    {
        FamilyProblem fp = bessel_problem(10.0);
        SweepPlan plan = fp.plan;
        plan.bounds = {10.0, 60.0};
        check_fixture(fp, plan, true, 10.0, 65.0);
    }
    {
        FamilyProblem fp = bessel_problem(0.25);
        SweepPlan plan = fp.plan;
        plan.bounds = {plan.bounds.lo, 40.0};
        check_fixture(fp, plan, false, 2.0, 45.0);
    }
    {
        FamilyProblem fp = legendre_problem(12);
        check_fixture(fp, fp.plan, false, 0.1, legendre_problem(12).prob.z_of_x(0.999));
    }
    {
        FamilyProblem fp = hermite_problem(11);
        check_fixture(fp, fp.plan, false, 0.1, hermite_problem(11).prob.z_of_x(std::sqrt(23.0)));
    }
    {
        // Kummer zeros all sit left of z_r where r > 0.
        FamilyProblem fp = kummer_problem(-3.0, 1.0);
        check_fixture(fp, fp.plan, true, fp.plan.bounds.lo - 2.0, fp.plan.bounds.hi);
    }

    bool ok = pairs >= 10 && violations == 0;
    report(11, ok, "pi/2 distance bounds on " + std::to_string(pairs) +
                       " (singularity, zero) pairs, violations=" + std::to_string(violations));
}

}  // namespace

int main() {
    criterion_1();
    polynomial_criterion(2, false, {5, 100, 1000});
    polynomial_criterion(3, true, {4, 101, 1000});
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    std::printf("%d of 11 criteria passed\n", 11 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
