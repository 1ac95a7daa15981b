#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zerofind/riccati.hpp"

namespace zerofind {

// Which global-convergence hypothesis holds on an interval of z.
struct RegimeCertificate {
    enum class Kind {
        DecreasingRPos,     // r decreasing, 0 < r < 1
        DecreasingRNeg,     // r decreasing, -1 < r < 0
        DecreasingAbsRLt1,  // r non-increasing, |r| < 1 (sign may change or vanish)
        RHasUniqueZero,     // r decreasing through a unique zero z_r
        SlowlyIncreasingR,  // |r| < k2, 0 <= dr/dz < k1, 8 k2^2 + 6 k1 - 3 < 0
        Unsupported,
    };

    Kind kind = Kind::Unsupported;
    Interval interval;  // in z
    double k1 = kNaN, k2 = kNaN;

    bool supported() const { return kind != Kind::Unsupported; }
};

const char* regime_name(RegimeCertificate::Kind k);

enum class Direction { Forward, Backward };
enum class GuessRule { TableNonzeroRPos, TableNonzeroRNeg, TableRZero, TableClosedInterval };

// Convexity-acceleration state: the last two inter-zero gaps in z.  The
// accelerated rule engages from the fourth zero of a sweep onward.
struct AccelState {
    double prev_gap = kNaN;
    double prev_prev_gap = kNaN;
    int zeros_seen = 0;
};

struct SweepPlan {
    Direction direction = Direction::Forward;
    GuessRule guess_rule = GuessRule::TableClosedInterval;
    Interval bounds;                 // z
    std::optional<double> r_zero;    // z_r when the regime has one
    std::optional<AccelState> accel; // engaged only when the Omega trend allows it
};

struct GuessRecord {
    double guess_z = kNaN;
    double converged_z = kNaN;
    bool accelerated = false;
    bool retried = false;
};

struct AuditRecord {
    int matched = 0;
    int missed = 0;
    int spurious = 0;
    double max_relative_error = 0.0;
};

struct SweepReport {
    std::vector<ZeroResult> zeros;  // ascending in z
    std::vector<GuessRecord> guesses_used;
    std::vector<RegimeCertificate> certificates;
    std::optional<AuditRecord> missed_zero_audit;
    std::vector<std::string> notes;

    int total_iterations() const {
        int t = 0;
        for (const auto& z : zeros) t += z.iterations;
        return t;
    }
};

}  // namespace zerofind
