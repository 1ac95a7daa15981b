#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "zerofind/families.hpp"
#include "zerofind/oracle.hpp"
#include "zerofind/sweep.hpp"

namespace zerofind::cli {

enum class OutputFormat { Csv, JsonLines };

struct RunConfig {
    FamilyParams params = LegendreParams{10};
    std::optional<std::pair<double, double>> interval;  // in x
    Method method = Method::Tom;
    std::optional<double> tol;
    std::optional<int> max_iter;
    bool accel = true;
    bool audit = false;
    OutputFormat format = OutputFormat::Csv;
    double verify_threshold = 1e-10;
    std::optional<std::string> ref_file;
    int bench_runs = 10;
};

// One output record per zero.
struct ZeroRecord {
    int index = 0;
    double x = 0, z = 0;
    int iterations = 0;
    double residual = 0;
    double guess = kNaN;
};

struct RunOutput {
    std::vector<ZeroRecord> records;
    int total_iterations = 0;
    SweepReport report;
    FamilyProblem problem;
};

// Shared pipeline: build the problem, plan the requested interval, sweep,
// and assemble the full ordered record list (symmetric families include the
// reflected negatives and the origin).
RunOutput run_zeros(const RunConfig& config);

// Oracle scan matching the swept window; returns reference zeros in x.
std::vector<double> oracle_zeros(const RunConfig& config, const RunOutput& out);

int cmd_zeros(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_bench(const std::vector<RunConfig>& configs, std::ostream& out, std::ostream& err);
int cmd_order(const RunConfig& config, int zero_index, std::ostream& out, std::ostream& err);

int run_main(int argc, char** argv);

}  // namespace zerofind::cli
