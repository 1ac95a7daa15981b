#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "zerofind/sweep_types.hpp"

namespace zerofind {

// The first-order coupled system y' = c1 y + c2 w, w' = c3 w + c4 y behind a
// family adapter; kept for algebra cross-checks of the derived r and maps.
struct CoupledSystem {
    std::function<double(double)> c1, c2, c3, c4;
    Interval valid_x;

    double k(double x) const { return std::sqrt(-c4(x) / c2(x)); }
    double c2_tilde(double x) const { return std::abs(c2(x)) * k(x); }

    // r(z(x)) reconstructed from the coefficients; k'/k by central difference.
    double r_from_cde(double x) const {
        double d = 1e-6 * std::max(1.0, std::abs(x));
        double kd = (k(x + d) - k(x - d)) / (2.0 * d);
        double c3t = c3(x) - kd / k(x);
        return (c3t - c1(x)) / (2.0 * c2_tilde(x));
    }
};

struct LegendreParams { int n; };
struct HermiteParams { int n; };
struct BesselParams { double mu; };
struct CylinderParams { double mu; double alpha; };
struct KummerParams { double a; double b; bool allow_experimental = false; };
struct CoulombParams { double L; double eta; };

using FamilyParams =
    std::variant<LegendreParams, HermiteParams, BesselParams, CylinderParams, KummerParams, CoulombParams>;

enum class CaseId {
    LegendreStd,
    HermiteStd,
    BesselCase1,
    BesselCase2a,
    BesselCase2b,
    BesselCase2c,
    CylinderCase1,
    CylinderCase2a,
    CylinderCase2b,
    KummerMain,
    KummerSmallB,
    CoulombRepulsive,  // eta >= 0
    CoulombAttractive, // eta < 0, r has a zero
};

const char* case_name(CaseId id);

struct FamilyProblem;  // fwd

struct FamilyCase {
    CaseId id;
    std::optional<Interval> zero_free_region;  // in x
    std::optional<std::string> special_first_zero;
    // Bespoke first-zero seed (z coordinate), or nullopt when the corner
    // region holds no zero.
    std::function<std::optional<double>(const FamilyProblem&)> first_zero_guess;
};

enum class OmegaTrend { Increasing, Decreasing, Unknown };

// Everything a sweep needs: the Riccati problem plus the per-family facts
// (case split, certificates, guess plan, stopping rule, parity/count
// metadata).  The evaluator behind eval_x may keep a Taylor cursor, so one
// FamilyProblem instance serves one sweep at a time.
struct FamilyProblem {
    RiccatiProblem prob;
    FamilyCase fcase;
    SweepPlan plan;  // default plan over the certified region
    std::vector<RegimeCertificate> certificates;
    IterationOptions opts;
    OmegaTrend omega = OmegaTrend::Unknown;

    std::optional<int> positive_zero_count;  // polynomial families
    bool zero_at_origin = false;
    bool symmetric = false;

    std::function<double(double)> y_of_x;  // target function, sign-accurate
    std::function<double(double)> w_of_x;  // companion, sign-accurate
    CoupledSystem cde;
    std::string label;

    std::shared_ptr<void> state;  // owns the evaluator cursors
};

FamilyProblem legendre_problem(int n);
FamilyProblem hermite_problem(int n);
FamilyProblem bessel_problem(double mu);
FamilyProblem cylinder_problem(double mu, double alpha);
FamilyProblem kummer_problem(double a, double b, bool allow_experimental = false);
FamilyProblem coulomb_problem(double L, double eta);

FamilyProblem make_problem(const FamilyParams& params);
std::string family_name(const FamilyParams& params);
std::string params_label(const FamilyParams& params);

inline constexpr double kMaxBesselOrder = 1000.0;

}  // namespace zerofind
