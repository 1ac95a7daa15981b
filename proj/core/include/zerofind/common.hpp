#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace zerofind {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// |ratio| beyond this is treated as pole adjacency (the companion function
// vanished to within roundoff of the numerator scale).
inline constexpr double kPoleThreshold = 1e12;

// Denominator guard: below this magnitude a division is not attempted.
inline constexpr double kDenFloor = 1e-300;

struct Interval {
    double lo = -kInf;
    double hi = kInf;

    bool contains(double v) const { return v >= lo && v <= hi; }
    bool contains(const Interval& other) const { return other.lo >= lo && other.hi <= hi; }
    bool strictly_inside(double v) const { return v > lo && v < hi; }
    double width() const { return hi - lo; }
};

enum class Method { Tom, Newton, Som, Fom };

inline const char* method_name(Method m) {
    switch (m) {
        case Method::Tom: return "tom";
        case Method::Newton: return "newton";
        case Method::Som: return "som";
        case Method::Fom: return "fom";
    }
    return "?";
}

// One evaluation of a solution ratio.  `value` is meaningless when
// `singular` is set.  y_val/y_prime_val carry the underlying solution pair
// when the evaluator is Taylor-backed, NaN otherwise.
struct RatioSample {
    double value = 0.0;
    bool singular = false;
    double y_val = kNaN;
    double y_prime_val = kNaN;

    static RatioSample sing() { return RatioSample{kNaN, true, kNaN, kNaN}; }
    static RatioSample of(double v) { return RatioSample{v, false, kNaN, kNaN}; }
    static RatioSample of(double v, double y, double yp) { return RatioSample{v, false, y, yp}; }

    // Ratio of two finite components with pole detection.
    static RatioSample ratio(double num, double den, double y = kNaN, double yp = kNaN) {
        if (!std::isfinite(num) || !std::isfinite(den)) return sing();
        if (std::abs(den) < kDenFloor * (1.0 + std::abs(num))) return sing();
        double v = num / den;
        if (!std::isfinite(v) || std::abs(v) >= kPoleThreshold) return sing();
        return RatioSample{v, false, y, yp};
    }
};

struct ZeroDenominator : std::runtime_error {
    explicit ZeroDenominator(const std::string& w) : std::runtime_error("zero denominator: " + w) {}
};
struct NonPositiveA : std::runtime_error {
    explicit NonPositiveA(const std::string& w) : std::runtime_error("non-positive A: " + w) {}
};
struct InsufficientHistory : std::runtime_error {
    explicit InsufficientHistory(const std::string& w) : std::runtime_error("insufficient history: " + w) {}
};
struct NonFiniteSample : std::runtime_error {
    explicit NonFiniteSample(const std::string& w) : std::runtime_error("non-finite sample: " + w) {}
};
struct UnsupportedParameter : std::runtime_error {
    explicit UnsupportedParameter(const std::string& w) : std::runtime_error("unsupported parameter: " + w) {}
};
struct UnsupportedRegime : std::runtime_error {
    explicit UnsupportedRegime(const std::string& w) : std::runtime_error("unsupported regime: " + w) {}
};
struct UnsupportedMethod : std::runtime_error {
    explicit UnsupportedMethod(const std::string& w) : std::runtime_error("unsupported method: " + w) {}
};
struct TruncationNotMet : std::runtime_error {
    explicit TruncationNotMet(const std::string& w) : std::runtime_error("truncation not met: " + w) {}
};
struct NoConvergence : std::runtime_error {
    explicit NoConvergence(const std::string& w) : std::runtime_error("no convergence: " + w) {}
};
struct CancellationLoss : std::runtime_error {
    explicit CancellationLoss(const std::string& w) : std::runtime_error("cancellation loss: " + w) {}
};
struct GridTooCoarse : std::runtime_error {
    explicit GridTooCoarse(const std::string& w) : std::runtime_error("grid too coarse: " + w) {}
};
struct ZeroReference : std::runtime_error {
    explicit ZeroReference(const std::string& w) : std::runtime_error("zero reference: " + w) {}
};

}  // namespace zerofind
