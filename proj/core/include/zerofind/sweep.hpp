#pragma once

#include "zerofind/families.hpp"
#include "zerofind/sweep_types.hpp"

namespace zerofind {

// Sign conventions used by the closed-interval guess rules.
// xi1: +1 for x >= 0; xi2: +1 for x > 0.
int xi1(double x);
int xi2(double x);

// Match the requested z interval against the adapter's declared regimes.
RegimeCertificate classify_regime(const FamilyProblem& fp, const Interval& interval);

// Plain next guess: previous zero +/- pi/2 (or the accelerated gap when the
// plan carries acceleration state and enough zeros are known).  Returns
// nullopt when the step leaves the plan bounds, which ends the sweep.
std::optional<double> next_guess(SweepPlan& plan, double previous_zero);

// Table-3 first guess from an endpoint value of h.
double first_guess_closed_interval(const SweepPlan& plan, double h_at_endpoint, int r_sign);

// Straddling-pair guesses around the zero of r: (left, right).
std::pair<double, double> guess_around_r_zero(const SweepPlan& plan, const RatioSample& h_at_zr);

// Convexity-accelerated guess from the last zeros (needs >= 2); falls back
// to the pi/2 rule when no gap is known yet.
double accelerate_guess(const SweepPlan& plan, const std::vector<double>& last_zeros);

// Find all zeros of h in plan.bounds, ordered ascending in z.
SweepReport sweep_interval(const FamilyProblem& fp, const SweepPlan& plan, const IterationOptions& opts);

// Convenience: sweep the family's default plan restricted to [a, b] in x
// (polynomial families: positive-zero sweep).
SweepReport sweep_family(const FamilyProblem& fp, const IterationOptions& opts);

}  // namespace zerofind
