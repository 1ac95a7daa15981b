#include "zerofind/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace zerofind::oracle {

namespace {

double bisect(const std::function<double(double)>& f, double a, double b, double fa, double tol) {
    for (int it = 0; it < 200 && (b - a) > tol; ++it) {
        double m = 0.5 * (a + b);
        double fm = f(m);
        if (fm == 0.0) return m;
        if (fa * fm < 0.0) {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

std::vector<double> scan_and_bisect(const OracleConfig& config, double a, double b) {
    if (!(b > a)) return {};
    const auto& f = config.evaluator;
    const long n = std::max(2L, std::lround(std::ceil((b - a) / config.grid_step)));
    std::vector<double> zeros;

    double xp = a, fp = f(xp);
    if (!std::isfinite(fp)) throw NonFiniteSample("oracle grid node");
    for (long i = 1; i <= n; ++i) {
        double xn = (i == n) ? b : a + (b - a) * static_cast<double>(i) / n;
        double fn = f(xn);
        if (!std::isfinite(fn)) throw NonFiniteSample("oracle grid node");

        double xm = 0.5 * (xp + xn);
        double fm = f(xm);
        int changes = (fp * fm < 0.0) + (fm * fn < 0.0);
        if (changes == 2) throw GridTooCoarse("two sign changes in one cell");
        if (fp == 0.0) {
            if (zeros.empty() || std::abs(zeros.back() - xp) > config.bisect_tol) zeros.push_back(xp);
        } else if (fp * fm < 0.0) {
            zeros.push_back(bisect(f, xp, xm, fp, config.bisect_tol));
        } else if (fm * fn < 0.0) {
            zeros.push_back(bisect(f, xm, xn, fm, config.bisect_tol));
        } else if (fm == 0.0) {
            zeros.push_back(xm);
        }
        xp = xn;
        fp = fn;
    }
    if (fp == 0.0 && (zeros.empty() || std::abs(zeros.back() - xp) > config.bisect_tol)) zeros.push_back(xp);
    std::sort(zeros.begin(), zeros.end());
    return zeros;
}

double relative_error(double x_computed, double x_reference) {
    if (x_reference == 0.0) throw ZeroReference("relative_error");
    return std::abs(1.0 - x_computed / x_reference);
}

AuditRecord audit_zeros(const std::vector<double>& computed, const std::vector<double>& reference,
                        double match_tol) {
    AuditRecord rec;
    std::vector<bool> used(computed.size(), false);
    for (double ref : reference) {
        int best = -1;
        double best_d = kInf;
        for (size_t i = 0; i < computed.size(); ++i) {
            double d = std::abs(computed[i] - ref);
            if (!used[i] && d < best_d) {
                best = static_cast<int>(i);
                best_d = d;
            }
        }
        if (best >= 0 && best_d <= match_tol) {
            used[best] = true;
            rec.matched += 1;
            if (ref != 0.0) rec.max_relative_error = std::max(rec.max_relative_error, relative_error(computed[best], ref));
        } else {
            rec.missed += 1;
        }
    }
    for (bool u : used)
        if (!u) rec.spurious += 1;
    return rec;
}

AuditRecord audit_sweep(const SweepReport& report, const OracleConfig& config, Interval z_window,
                        const std::function<double(double)>& x_of_z, double match_tol) {
    std::vector<double> ref_z = scan_and_bisect(config, z_window.lo, z_window.hi);
    std::vector<double> ref_x;
    ref_x.reserve(ref_z.size());
    for (double z : ref_z) ref_x.push_back(x_of_z(z));
    std::vector<double> got;
    got.reserve(report.zeros.size());
    for (const auto& zr : report.zeros) got.push_back(zr.x_star);
    std::sort(ref_x.begin(), ref_x.end());
    return audit_zeros(got, ref_x, match_tol);
}

double legendre_p(int n, double x) {
    double pm = 1.0, pc = x;
    if (n == 0) return pm;
    for (int k = 2; k <= n; ++k) {
        double pn = ((2.0 * k - 1.0) * x * pc - (k - 1.0) * pm) / k;
        pm = pc;
        pc = pn;
    }
    return pc;
}

double legendre_p_weighted(int n, double x) { return std::sqrt(1.0 - x * x) * legendre_p(n, x); }

double hermite_scaled(int n, double x) {
    // Orthonormal Hermite-function recurrence with dynamic rescaling: the
    // weight e^{-x^2/2} underflows on its own for large |x|, so carry the
    // unweighted sequence and fold scale factors back in by powers of two.
    // Sign-accurate everywhere; magnitudes are exact until the weighted
    // value itself leaves the double range.
    double pm = 0.7511255444649425;  // pi^{-1/4}
    long expo = 0;                   // pending exponent of 2
    double pc = std::sqrt(2.0) * x * pm;
    if (n == 0) pc = pm;
    for (int k = (n == 0 ? n : 1); k < n; ++k) {
        double pn = std::sqrt(2.0 / (k + 1.0)) * x * pc - std::sqrt(k / (k + 1.0)) * pm;
        pm = pc;
        pc = pn;
        if (std::abs(pc) > 1e200) {
            pc = std::ldexp(pc, -600);
            pm = std::ldexp(pm, -600);
            expo += 600;
        }
    }
    // weight exponent: e^{-x^2/2} = 2^(-x^2/(2 ln 2))
    double w2 = -x * x / (2.0 * 0.6931471805599453) + expo;
    if (w2 < -1020.0) return (pc >= 0.0 ? 1.0 : -1.0) * 1e-280;  // sign only
    return pc * std::exp2(w2);
}

double bessel_j_ref(double mu, double x) {
    if (mu >= 0.0) return std::cyl_bessel_j(mu, x);
    double nu = -mu;  // in (0, 1)
    return std::cos(nu * M_PI) * std::cyl_bessel_j(nu, x) - std::sin(nu * M_PI) * std::cyl_neumann(nu, x);
}

double bessel_y_ref(double mu, double x) {
    if (mu >= 0.0) return std::cyl_neumann(mu, x);
    double nu = -mu;
    return std::sin(nu * M_PI) * std::cyl_bessel_j(nu, x) + std::cos(nu * M_PI) * std::cyl_neumann(nu, x);
}

double cylinder_ref(double mu, double alpha, double x) {
    return bessel_j_ref(mu, x) * std::cos(alpha) - bessel_y_ref(mu, x) * std::sin(alpha);
}

double kummer_m_ref(double a, double b, double x) {
    long double sum = 1.0L, t = 1.0L;
    for (int k = 0; k < 200000; ++k) {
        t *= (static_cast<long double>(a) + k) * x / ((static_cast<long double>(b) + k) * (k + 1.0L));
        if (t == 0.0L) break;
        sum += t;
        if (k > 4 && std::abs(static_cast<double>(t)) <= 1e-22 * std::abs(static_cast<double>(sum))) break;
    }
    return static_cast<double>(sum);
}

double coulomb_f_ref(double L, double eta, double x) {
    // Scaled by the (positive) normalization constant: sign/zeros of F_L.
    long double b2 = 0.0L, b1 = 1.0L, p = 1.0L, sum = 1.0L;
    bool prev_small = false;
    for (int m = 1; m < 200000; ++m) {
        long double bm = (2.0L * eta * b1 - b2) / ((2.0L * L + 1.0L + m) * m);
        b2 = b1;
        b1 = bm;
        p *= x;
        long double t = bm * p;
        sum += t;
        bool small =
            std::abs(static_cast<double>(t)) <= 1e-22 * std::max(1.0, std::abs(static_cast<double>(sum)));
        if (m > 6 && small && prev_small) break;  // eta = 0 zeroes alternate terms
        prev_small = small;
    }
    return static_cast<double>(std::pow(static_cast<long double>(x), static_cast<long double>(L + 1.0)) * sum);
}

void save_reference(std::ostream& os, const ReferenceZeroSet& set) {
    os.precision(17);
    for (const auto& [zero, tag] : set.zeros)
        os << set.family << ' ' << set.params << ' ' << zero << ' ' << tag << '\n';
}

ReferenceZeroSet load_reference(std::istream& is) {
    ReferenceZeroSet set;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string family, params, tag;
        double zero;
        if (!(ls >> family >> params >> zero >> tag)) continue;
        if (set.family.empty()) {
            set.family = family;
            set.params = params;
        }
        set.zeros.emplace_back(zero, tag);
    }
    std::sort(set.zeros.begin(), set.zeros.end());
    return set;
}

}  // namespace zerofind::oracle
