#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace zerofind::cli {

namespace {

constexpr int kExitVerifyFail = 1;
constexpr int kExitUnsupported = 2;
constexpr int kExitEvaluator = 3;
constexpr int kExitHistory = 4;

IterationOptions effective_opts(const FamilyProblem& fp, const RunConfig& config) {
    IterationOptions opts = fp.opts;
    opts.method = config.method;
    if (config.tol) {
        opts.rel_tol = 0.0;
        opts.abs_tol = *config.tol;
    }
    if (config.max_iter) opts.max_iter = *config.max_iter;
    return opts;
}

bool needs_interval(const FamilyParams& params) {
    return std::holds_alternative<BesselParams>(params) || std::holds_alternative<CylinderParams>(params);
}

SweepPlan plan_for(const FamilyProblem& fp, const RunConfig& config) {
    SweepPlan plan = fp.plan;
    if (!config.accel) plan.accel = std::nullopt;
    if (!config.interval) return plan;

    auto [lo, hi] = *config.interval;
    if (!(hi > lo)) throw UnsupportedParameter("interval must satisfy lo < hi");
    plan.bounds = {fp.prob.z_of_x(lo), fp.prob.z_of_x(hi)};
    if (plan.guess_rule == GuessRule::TableRZero && plan.r_zero) {
        if (!plan.bounds.contains(*plan.r_zero)) {
            plan.guess_rule = GuessRule::TableClosedInterval;
            // r decreases through z_r: ahead of it the drift is positive.
            plan.direction = (plan.bounds.hi <= *plan.r_zero) ? Direction::Backward : Direction::Forward;
        }
    } else if (plan.guess_rule == GuessRule::TableNonzeroRNeg ||
               plan.guess_rule == GuessRule::TableNonzeroRPos) {
        plan.guess_rule = GuessRule::TableClosedInterval;
    }
    return plan;
}

struct OracleSetup {
    oracle::OracleConfig config;  // evaluator in z
    Interval z_window;
};

// The oracle scans the underlying function, never the ratio; the window is
// the swept z-range (positive-side window for the symmetric families).
OracleSetup oracle_setup(const FamilyProblem& fp, const RunConfig& config, const SweepPlan& plan) {
    OracleSetup s;
    s.config.grid_step = 0.6;
    const auto& prob = fp.prob;
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, LegendreParams>) {
                int n = p.n;
                s.config.evaluator = [n, &prob](double z) {
                    return oracle::legendre_p_weighted(n, prob.x_of_z(z));
                };
            } else if constexpr (std::is_same_v<T, HermiteParams>) {
                int n = p.n;
                s.config.evaluator = [n, &prob](double z) {
                    return oracle::hermite_scaled(n, prob.x_of_z(z));
                };
            } else if constexpr (std::is_same_v<T, BesselParams>) {
                double mu = p.mu;
                s.config.evaluator = [mu](double z) { return oracle::bessel_j_ref(mu, z); };
            } else if constexpr (std::is_same_v<T, CylinderParams>) {
                double mu = p.mu, alpha = p.alpha;
                s.config.evaluator = [mu, alpha](double z) { return oracle::cylinder_ref(mu, alpha, z); };
            } else if constexpr (std::is_same_v<T, KummerParams>) {
                double a = p.a, b = p.b;
                s.config.evaluator = [a, b, &prob](double z) {
                    return oracle::kummer_m_ref(a, b, prob.x_of_z(z));
                };
            } else {
                double L = p.L, eta = p.eta;
                s.config.evaluator = [L, eta, &prob](double z) {
                    return oracle::coulomb_f_ref(L, eta, prob.x_of_z(z));
                };
            }
        },
        config.params);

    SweepPlan effective = plan_for(fp, config);
    s.z_window = effective.bounds;
    // Clip the default windows of the polynomial families to where their
    // zeros live (Szego-type bracket for Legendre, the 2n+1 bound for
    // Hermite); the far tail has no sign changes and only costs time.
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, LegendreParams>) {
                if (!config.interval) {
                    double x_up = std::cos(0.5 * M_PI / (p.n + 0.5));
                    s.z_window.hi = std::min(s.z_window.hi, prob.z_of_x(x_up) + M_PI);
                }
                s.z_window.lo = std::max(s.z_window.lo, 1e-6);
            } else if constexpr (std::is_same_v<T, HermiteParams>) {
                if (!config.interval) {
                    double x_up = std::sqrt(2.0 * p.n + 1.0);
                    s.z_window.hi = std::min(s.z_window.hi, prob.z_of_x(x_up));
                }
                s.z_window.lo = std::max(s.z_window.lo, 1e-6);
            } else {
                (void)p;
            }
        },
        config.params);
    return s;
}

void emit_record(std::ostream& os, OutputFormat fmt, const ZeroRecord& r) {
    if (fmt == OutputFormat::Csv) {
        os << r.index << ',' << std::setprecision(17) << r.x << ',' << r.z << ',' << r.iterations << ','
           << std::setprecision(3) << r.residual << ',' << std::setprecision(17) << r.guess << '\n';
    } else {
        nlohmann::json j{{"index", r.index},     {"x", r.x},
                         {"z", r.z},             {"iterations", r.iterations},
                         {"residual", r.residual}, {"guess", r.guess}};
        os << j.dump() << '\n';
    }
}

}  // namespace

RunOutput run_zeros(const RunConfig& config) {
    RunOutput out{.records = {}, .total_iterations = 0, .report = {}, .problem = make_problem(config.params)};
    FamilyProblem& fp = out.problem;
    if (!config.interval && needs_interval(config.params))
        throw UnsupportedRegime(fp.label + ": --interval is required (infinitely many zeros)");

    SweepPlan plan = plan_for(fp, config);
    IterationOptions opts = effective_opts(fp, config);
    out.report = sweep_interval(fp, plan, opts);

    auto guess_for = [&](double z_star) {
        for (const auto& g : out.report.guesses_used)
            if (std::abs(g.converged_z - z_star) <= 1e-9 * std::max(1.0, std::abs(z_star))) return g.guess_z;
        return kNaN;
    };

    std::vector<ZeroRecord> recs;
    for (const auto& zr : out.report.zeros) {
        ZeroRecord r;
        r.x = zr.x_star;
        r.z = zr.z_star;
        r.iterations = zr.iterations;
        r.residual = zr.final_residual;
        r.guess = guess_for(zr.z_star);
        recs.push_back(r);
    }

    if (fp.symmetric && !config.interval) {
        std::vector<ZeroRecord> full;
        for (auto it = recs.rbegin(); it != recs.rend(); ++it) {
            ZeroRecord m = *it;
            m.x = -m.x;
            m.z = -m.z;
            m.guess = -m.guess;
            full.push_back(m);
        }
        if (fp.zero_at_origin) {
            ZeroRecord o;
            o.x = 0.0;
            o.z = 0.0;
            o.iterations = 0;
            o.residual = 0.0;
            o.guess = 0.0;
            full.push_back(o);
        }
        for (const auto& r : recs) full.push_back(r);
        recs = std::move(full);
    } else if (fp.symmetric && config.interval) {
        // The sweep covered the positive part; reflect into the negative part
        // of the requested interval and add the origin when it qualifies.
        auto [lo, hi] = *config.interval;
        std::vector<ZeroRecord> full;
        for (auto it = recs.rbegin(); it != recs.rend(); ++it) {
            if (-it->x >= lo && -it->x <= hi && it->x > 0) {
                ZeroRecord m = *it;
                m.x = -m.x;
                m.z = -m.z;
                m.guess = -m.guess;
                full.push_back(m);
            }
        }
        if (fp.zero_at_origin && lo <= 0.0 && hi >= 0.0) full.push_back(ZeroRecord{0, 0, 0, 0, 0, 0});
        for (const auto& r : recs)
            if (r.x >= lo && r.x <= hi) full.push_back(r);
        recs = std::move(full);
    }

    std::sort(recs.begin(), recs.end(), [](const ZeroRecord& a, const ZeroRecord& b) { return a.x < b.x; });
    int idx = 1;
    for (auto& r : recs) {
        r.index = idx++;
        out.total_iterations += r.iterations;
    }
    out.records = std::move(recs);
    return out;
}

std::vector<double> oracle_zeros(const RunConfig& config, const RunOutput& out) {
    OracleSetup setup = oracle_setup(out.problem, config, out.problem.plan);
    auto z_zeros = oracle::scan_and_bisect(setup.config, setup.z_window.lo, setup.z_window.hi);
    std::vector<double> xs;
    xs.reserve(z_zeros.size());
    for (double z : z_zeros) xs.push_back(out.problem.prob.x_of_z(z));
    std::sort(xs.begin(), xs.end());
    return xs;
}

int cmd_zeros(const RunConfig& config, std::ostream& out, std::ostream& err) {
    RunOutput run;
    try {
        run = run_zeros(config);
    } catch (const UnsupportedParameter& e) {
        err << "error: " << e.what() << '\n';
        return kExitUnsupported;
    } catch (const UnsupportedRegime& e) {
        err << "error: " << e.what() << '\n';
        return kExitUnsupported;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitEvaluator;
    }

    if (config.format == OutputFormat::Csv) out << "index,x,z,iterations,residual,guess\n";
    for (const auto& r : run.records) emit_record(out, config.format, r);

    std::optional<AuditRecord> audit;
    if (config.audit) {
        try {
            auto ref = oracle_zeros(config, run);
            std::vector<double> got;
            for (const auto& r : run.records)
                if (r.x > 0 || !run.problem.symmetric) got.push_back(r.x);
            // Positive-side audit for symmetric families.
            std::vector<double> ref_pos;
            for (double x : ref)
                if (x > 1e-12 || !run.problem.symmetric) ref_pos.push_back(x);
            audit = oracle::audit_zeros(got, ref_pos);
        } catch (const std::exception& e) {
            err << "audit error: " << e.what() << '\n';
            return kExitEvaluator;
        }
    }

    if (config.format == OutputFormat::Csv) {
        out << "# total_zeros=" << run.records.size() << " total_iterations=" << run.total_iterations;
        if (audit)
            out << " audit_matched=" << audit->matched << " audit_missed=" << audit->missed
                << " audit_spurious=" << audit->spurious;
        out << '\n';
    } else {
        nlohmann::json j{{"summary",
                          {{"total_zeros", run.records.size()}, {"total_iterations", run.total_iterations}}}};
        if (audit) {
            j["summary"]["audit"] = {{"matched", audit->matched},
                                     {"missed", audit->missed},
                                     {"spurious", audit->spurious},
                                     {"max_relative_error", audit->max_relative_error}};
        }
        out << j.dump() << '\n';
    }
    return 0;
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
    RunOutput run;
    std::vector<double> reference;
    try {
        run = run_zeros(config);
        if (config.ref_file) {
            std::ifstream f(*config.ref_file);
            if (!f) throw UnsupportedParameter("cannot open reference file " + *config.ref_file);
            auto set = oracle::load_reference(f);
            for (auto& [zero, tag] : set.zeros) reference.push_back(zero);
        } else {
            reference = oracle_zeros(config, run);
        }
    } catch (const UnsupportedParameter& e) {
        err << "error: " << e.what() << '\n';
        return kExitUnsupported;
    } catch (const UnsupportedRegime& e) {
        err << "error: " << e.what() << '\n';
        return kExitUnsupported;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitEvaluator;
    }

    std::vector<double> got;
    for (const auto& r : run.records)
        if (r.x > 1e-12 || !run.problem.symmetric) got.push_back(r.x);

    out << "computed,reference,relative_error\n";
    size_t n = std::min(got.size(), reference.size());
    double max_re = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double re = reference[i] != 0.0 ? oracle::relative_error(got[i], reference[i]) : 0.0;
        max_re = std::max(max_re, re);
        out << std::setprecision(17) << got[i] << ',' << reference[i] << ',' << std::setprecision(3) << re
            << '\n';
    }
    bool count_ok = got.size() == reference.size();
    bool re_ok = max_re <= config.verify_threshold;
    out << "# count_computed=" << got.size() << " count_reference=" << reference.size()
        << " max_relative_error=" << std::setprecision(3) << max_re << " threshold=" << config.verify_threshold
        << " verdict=" << ((count_ok && re_ok) ? "ok" : "fail") << '\n';
    return (count_ok && re_ok) ? 0 : kExitVerifyFail;
}

int cmd_bench(const std::vector<RunConfig>& configs, std::ostream& out, std::ostream& err) {
    struct Row {
        std::string family, params, method;
        long t_iter = 0;
        double a_time_s = 0;
        size_t zeros = 0;
        int exit_code = 0;
        std::string error;
    };
    std::vector<Row> rows(configs.size());

    int threads = 1;
    if (const char* env = std::getenv("ZEROFINDER_THREADS")) threads = std::max(1, std::atoi(env));
    threads = std::min<int>(threads, std::max<size_t>(1, configs.size()));

    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= configs.size()) break;
            const RunConfig& cfg = configs[i];
            Row& row = rows[i];
            row.family = family_name(cfg.params);
            row.params = params_label(cfg.params);
            row.method = method_name(cfg.method);
            try {
                double total = 0.0;
                RunOutput run;
                for (int rep = 0; rep < cfg.bench_runs; ++rep) {
                    auto t0 = std::chrono::steady_clock::now();
                    run = run_zeros(cfg);
                    auto t1 = std::chrono::steady_clock::now();
                    total += std::chrono::duration<double>(t1 - t0).count();
                }
                row.t_iter = run.total_iterations;
                row.a_time_s = total / std::max(1, cfg.bench_runs);
                row.zeros = run.records.size();
            } catch (const UnsupportedParameter& e) {
                row.exit_code = kExitUnsupported;
                row.error = e.what();
            } catch (const UnsupportedRegime& e) {
                row.exit_code = kExitUnsupported;
                row.error = e.what();
            } catch (const std::exception& e) {
                row.exit_code = kExitEvaluator;
                row.error = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    out << "family,params,method,t_iter,a_time_s,zeros\n";
    int rc = 0;
    for (const auto& row : rows) {
        if (row.exit_code != 0) {
            err << "bench error (" << row.family << ' ' << row.params << "): " << row.error << '\n';
            rc = row.exit_code;
            continue;
        }
        out << row.family << ',' << row.params << ',' << row.method << ',' << row.t_iter << ','
            << std::setprecision(6) << row.a_time_s << ',' << row.zeros << '\n';
    }
    return rc;
}

int cmd_order(const RunConfig& config, int zero_index, std::ostream& out, std::ostream& err) {
    RunConfig cfg = config;
    cfg.tol = cfg.tol ? cfg.tol : std::optional<double>(1e-13);  // longer histories
    cfg.accel = false;  // plain pi/2 guesses give more usable iterates
    RunOutput run;
    try {
        run = run_zeros(cfg);
    } catch (const UnsupportedParameter& e) {
        err << "error: " << e.what() << '\n';
        return kExitUnsupported;
    } catch (const UnsupportedRegime& e) {
        err << "error: " << e.what() << '\n';
        return kExitUnsupported;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitEvaluator;
    }

    // Index into the sweep's own zeros (ascending z), 1-based.
    if (zero_index < 1 || zero_index > static_cast<int>(run.report.zeros.size())) {
        err << "error: zero index out of range (have " << run.report.zeros.size() << ")\n";
        return kExitHistory;
    }
    const ZeroResult& res = run.report.zeros[zero_index - 1];

    // Polish the reference zero with a tight third-order run.
    IterationOptions polish = run.problem.opts;
    polish.method = Method::Tom;
    polish.rel_tol = 0.0;
    polish.abs_tol = 1e-15 * std::max(1.0, std::abs(res.z_star));
    polish.stop_in_z = true;
    ZeroResult ref = solve_zero(run.problem.prob, res.z_star, polish);
    double z_star = ref.converged() ? ref.z_star : res.z_star;

    double order;
    try {
        order = estimate_order(res.history, z_star);
    } catch (const InsufficientHistory& e) {
        err << "error: " << e.what() << '\n';
        return kExitHistory;
    }

    out << "m,abs_error\n";
    for (size_t m = 0; m < res.history.size(); ++m)
        out << m << ',' << std::setprecision(6) << std::abs(res.history[m] - z_star) << '\n';
    out << "# method=" << method_name(config.method) << " zero_index=" << zero_index
        << " estimated_order=" << std::setprecision(4) << order << '\n';
    return 0;
}

}  // namespace zerofind::cli
