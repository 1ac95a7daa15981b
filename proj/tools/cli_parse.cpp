#include <CLI11.hpp>
#include <iostream>

#include "cli.hpp"

namespace zerofind::cli {

namespace {

struct ParsedFamily {
    std::string family;
    int n = 0;
    double mu = 0, alpha = 0, a = 0, b = 0, L = 0, eta = 0;
    bool allow_experimental = false;
};

FamilyParams to_params(const ParsedFamily& f) {
    if (f.family == "legendre") return LegendreParams{f.n};
    if (f.family == "hermite") return HermiteParams{f.n};
    if (f.family == "bessel") return BesselParams{f.mu};
    if (f.family == "cylinder") return CylinderParams{f.mu, f.alpha};
    if (f.family == "kummer") return KummerParams{f.a, f.b, f.allow_experimental};
    if (f.family == "coulomb") return CoulombParams{f.L, f.eta};
    throw UnsupportedParameter("unknown family " + f.family);
}

void add_family_options(CLI::App* app, ParsedFamily& f, RunConfig& cfg, std::vector<double>& interval) {
    app->add_option("--family", f.family, "legendre|hermite|bessel|cylinder|kummer|coulomb")->required();
    app->add_option("--n", f.n, "polynomial degree");
    app->add_option("--mu", f.mu, "bessel/cylinder order");
    app->add_option("--alpha", f.alpha, "cylinder phase in [0, pi)");
    app->add_option("--a", f.a, "kummer a < -1");
    app->add_option("--b", f.b, "kummer b > 0");
    app->add_option("--L", f.L, "coulomb L > 0");
    app->add_option("--eta", f.eta, "coulomb eta");
    app->add_flag("--experimental-small-b", f.allow_experimental, "enable the kummer b < 1/6 path");
    app->add_option("--interval", interval, "x interval [lo hi]")->expected(2);
    app->add_option("--tol", [&cfg](const std::vector<std::string>& v) {
        cfg.tol = std::stod(v[0]);
        return true;
    }, "absolute stopping tolerance override");
    app->add_option("--max-iter", [&cfg](const std::vector<std::string>& v) {
        cfg.max_iter = std::stoi(v[0]);
        return true;
    }, "iteration cap per zero");
    app->add_flag("--no-accel", [&cfg](size_t) { cfg.accel = false; }, "disable convexity-accelerated guesses");
    std::map<std::string, Method> methods{{"tom", Method::Tom},
                                          {"newton", Method::Newton},
                                          {"som", Method::Som},
                                          {"fom", Method::Fom}};
    app->add_option("--method", cfg.method, "tom|newton|som|fom")
        ->transform(CLI::CheckedTransformer(methods, CLI::ignore_case));
    std::map<std::string, OutputFormat> formats{{"csv", OutputFormat::Csv},
                                                {"json-lines", OutputFormat::JsonLines}};
    app->add_option("--format", cfg.format, "csv|json-lines")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
}

}  // namespace

int run_main(int argc, char** argv) {
    CLI::App app{"zerofind: all zeros of special functions and orthogonal polynomials in an interval"};
    app.require_subcommand(1);

    ParsedFamily fam;
    RunConfig cfg;
    std::vector<double> interval;
    std::vector<std::string> methods_list;
    int zero_index = 1;

    CLI::App* zeros = app.add_subcommand("zeros", "compute all zeros");
    add_family_options(zeros, fam, cfg, interval);
    zeros->add_flag("--audit", cfg.audit, "cross-check the zero list against the sign-scan oracle");

    CLI::App* verify = app.add_subcommand("verify", "compare computed zeros against the oracle");
    add_family_options(verify, fam, cfg, interval);
    verify->add_option("--threshold", cfg.verify_threshold, "max allowed relative error");
    verify->add_option("--ref", [&cfg](const std::vector<std::string>& v) {
        cfg.ref_file = v[0];
        return true;
    }, "reference zero table file (family params zero tag per line)");

    CLI::App* bench = app.add_subcommand("bench", "timing/iteration comparison across methods");
    add_family_options(bench, fam, cfg, interval);
    bench->add_option("--methods", methods_list, "comma- or space-separated list of methods")
        ->delimiter(',');
    bench->add_option("--runs", cfg.bench_runs, "repetitions per configuration (mean reported)");

    CLI::App* order = app.add_subcommand("order", "convergence-order estimate for one zero");
    add_family_options(order, fam, cfg, interval);
    order->add_option("--index", zero_index, "1-based zero index within the sweep");

    CLI11_PARSE(app, argc, argv);

    try {
        cfg.params = to_params(fam);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    if (interval.size() == 2) cfg.interval = std::make_pair(interval[0], interval[1]);

    if (zeros->parsed()) return cmd_zeros(cfg, std::cout, std::cerr);
    if (verify->parsed()) return cmd_verify(cfg, std::cout, std::cerr);
    if (order->parsed()) return cmd_order(cfg, zero_index, std::cout, std::cerr);
    if (bench->parsed()) {
        std::vector<RunConfig> configs;
        if (methods_list.empty()) methods_list = {"tom"};
        std::map<std::string, Method> methods{{"tom", Method::Tom},
                                              {"newton", Method::Newton},
                                              {"som", Method::Som},
                                              {"fom", Method::Fom}};
        for (const auto& m : methods_list) {
            auto it = methods.find(m);
            if (it == methods.end()) {
                std::cerr << "error: unknown method " << m << '\n';
                return 2;
            }
            RunConfig c = cfg;
            c.method = it->second;
            configs.push_back(c);
        }
        return cmd_bench(configs, std::cout, std::cerr);
    }
    return 0;
}

}  // namespace zerofind::cli
