#include "zerofind/bessel.hpp"

#include <algorithm>
#include <cmath>

namespace zerofind {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEulerGamma = 0.57721566490153286061;
constexpr double kFpMin = 1e-30;
constexpr double kCfEps = 1e-16;
constexpr int kMaxIt = 10000;
constexpr double kXSmall = 2.0;  // series/CF2 switch

// Y_0 and Y_1 by their ascending series; x < ~2.
double y0_series(double x) {
    double j0 = bessel_j_series(0.0, x);
    double q = x * x / 4.0;
    double sum = 0.0, term = 1.0, hk = 0.0;
    for (int k = 1; k <= 60; ++k) {
        term *= q / (static_cast<double>(k) * k);
        hk += 1.0 / k;
        double add = (k % 2 ? 1.0 : -1.0) * hk * term;
        sum += add;
        if (std::abs(add) < 1e-19 * std::abs(sum)) break;
    }
    return 2.0 / kPi * ((std::log(x / 2.0) + kEulerGamma) * j0 + sum);
}

double y1_series(double x) {
    double j1 = bessel_j_series(1.0, x);
    double q = -x * x / 4.0;
    double sum = 0.0, term = 1.0, hk = 0.0, hk1 = 1.0;
    for (int k = 0; k <= 60; ++k) {
        if (k > 0) {
            term *= q / (static_cast<double>(k) * (k + 1.0));
            hk += 1.0 / k;
            hk1 += 1.0 / (k + 1.0);
        }
        double add = (-2.0 * kEulerGamma + hk + hk1) * term;
        sum += add;
        if (k > 3 && std::abs(add) < 1e-19 * std::abs(sum)) break;
    }
    return 2.0 / kPi * std::log(x / 2.0) * j1 - 2.0 / (kPi * x) - x / (2.0 * kPi) * sum;
}

struct SmallXY {
    double ymu, ymu1;  // Y at orders xmu, xmu+1
};

SmallXY small_x_y(double xmu, double x) {
    if (std::abs(xmu) < 1e-10) {
        return {y0_series(x), y1_series(x)};
    }
    double s = std::sin(xmu * kPi);
    if (std::abs(s) < 1e-8)
        throw NoConvergence("near-integer order at small x (reflection cancellation)");
    double c = std::cos(xmu * kPi);
    double ymu = (bessel_j_series(xmu, x) * c - bessel_j_series(-xmu, x)) / s;
    // sin((xmu+1)pi) = -s, cos((xmu+1)pi) = -c
    double ymu1 = (bessel_j_series(xmu + 1.0, x) * c + bessel_j_series(-xmu - 1.0, x)) / s;
    return {ymu, ymu1};
}

JYPair bessel_jy_nonneg(double nu, double x) {
    const double xi = 1.0 / x, xi2 = 2.0 * xi;
    const double w = xi2 / kPi;  // Wronskian J Y' - J' Y

    int nl = (x < kXSmall) ? static_cast<int>(nu + 0.5)
                           : std::max(0, static_cast<int>(nu - x + 1.5));
    double xmu = nu - nl;

    // CF1: J'_nu/J_nu with denominator sign bookkeeping.
    double isign = 1.0;
    double h = nu * xi;
    if (h < kFpMin) h = kFpMin;
    double b = xi2 * nu, c = h, d = 0.0;
    int i = 1;
    for (; i <= kMaxIt; ++i) {
        b += xi2;
        d = b - d;
        if (std::abs(d) < kFpMin) d = kFpMin;
        c = b - 1.0 / c;
        if (std::abs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        double del = c * d;
        h *= del;
        if (d < 0.0) isign = -isign;
        if (std::abs(del - 1.0) <= kCfEps) break;
    }
    if (i > kMaxIt) throw NoConvergence("bessel cf1");

    double rjl = isign * kFpMin, rjpl = h * rjl;
    const double rjl_nu = rjl, rjpl_nu = rjpl;
    double fact = nu * xi;
    for (int l = nl; l >= 1; --l) {
        double rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
    }
    if (rjl == 0.0) rjl = kCfEps;
    const double f = rjpl / rjl;  // J'_xmu/J_xmu

    double rjmu, rymu, rymup, ry1;
    if (x < kXSmall) {
        SmallXY sy = small_x_y(xmu, x);
        rymu = sy.ymu;
        ry1 = sy.ymu1;
        rymup = xmu * xi * rymu - ry1;
        rjmu = bessel_j_series(xmu, x);
    } else {
        // CF2: p + i q = (J' + i Y')/(J + i Y) at order xmu.
        double a = 0.25 - xmu * xmu;
        double p = -0.5 * xi, q = 1.0;
        double br = 2.0 * x, bi = 2.0;
        double fct = a * xi / (p * p + q * q);
        double cr = br + q * fct, ci = bi + p * fct;
        double den = br * br + bi * bi;
        double dr = br / den, di = -bi / den;
        double dlr = cr * dr - ci * di, dli = cr * di + ci * dr;
        double temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        int k = 2;
        for (; k <= kMaxIt; ++k) {
            a += 2.0 * (k - 1);
            bi += 2.0;
            dr = a * dr + br;
            di = a * di + bi;
            if (std::abs(dr) + std::abs(di) < kFpMin) dr = kFpMin;
            fct = a / (cr * cr + ci * ci);
            cr = br + cr * fct;
            ci = bi - ci * fct;
            if (std::abs(cr) + std::abs(ci) < kFpMin) cr = kFpMin;
            den = dr * dr + di * di;
            dr = dr / den;
            di = -di / den;
            dlr = cr * dr - ci * di;
            dli = cr * di + ci * dr;
            temp = p * dlr - q * dli;
            q = p * dli + q * dlr;
            p = temp;
            if (std::abs(dlr - 1.0) + std::abs(dli) < kCfEps) break;
        }
        if (k > kMaxIt) throw NoConvergence("bessel cf2");
        double gam = (p - f) / q;
        rjmu = std::sqrt(w / ((p - f) * gam + q));
        rjmu = std::copysign(rjmu, rjl);
        rymu = rjmu * gam;
        rymup = rymu * (p + q / gam);
        ry1 = xmu * xi * rymu - rymup;
    }

    // Rescale the order-nu seed.  rjmu and rjl both represent J_xmu (true and
    // unnormalized), so the ratio stays stable even next to a zero of J_xmu.
    double scale = rjmu / rjl;
    JYPair out;
    out.j = rjl_nu * scale;
    out.jp = rjpl_nu * scale;

    for (int l = 1; l <= nl; ++l) {
        double rytemp = (xmu + l) * xi2 * ry1 - rymu;
        rymu = ry1;
        ry1 = rytemp;
    }
    out.y = rymu;
    out.yp = nu * xi * rymu - ry1;
    return out;
}

}  // namespace

double bessel_j_series(double nu, double x) {
    if (x <= 0.0) throw UnsupportedParameter("bessel series needs x > 0");
    if (nu <= -2.0 || (nu < 0.0 && std::abs(nu - std::round(nu)) < 1e-12))
        throw UnsupportedParameter("bessel series order out of range");
    double t = std::pow(x / 2.0, nu) / std::tgamma(nu + 1.0);
    double q = x * x / 4.0;
    double sum = t;
    for (int k = 0; k < 300; ++k) {
        t *= -q / ((k + 1.0) * (nu + k + 1.0));
        sum += t;
        if (k > 3 && std::abs(t) <= 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

RatioSample bessel_ratio_cf(double mu, double x) {
    if (!(mu > 0.0) || !(x > 0.0)) throw UnsupportedParameter("bessel_ratio_cf needs mu > 0, x > 0");
    // f = J_mu/J_{mu-1} = 1/(b1 - 1/(b2 - 1/(b3 - ...))), b_k = 2(mu+k-1)/x
    double fv = kFpMin, C = fv, D = 0.0;
    double last_del = kInf;
    for (int k = 1; k <= kMaxIt; ++k) {
        double bk = 2.0 * (mu + k - 1.0) / x;
        double ak = (k == 1) ? 1.0 : -1.0;
        D = bk + ak * D;
        if (std::abs(D) < kFpMin) D = kFpMin;
        C = bk + ak / C;
        if (std::abs(C) < kFpMin) C = kFpMin;
        D = 1.0 / D;
        double del = C * D;
        fv *= del;
        last_del = std::abs(del - 1.0);
        if (last_del <= kCfEps) {
            if (!std::isfinite(fv) || std::abs(fv) >= kPoleThreshold) return RatioSample::sing();
            return RatioSample::of(fv);
        }
    }
    if (last_del < 1e-13) {  // stagnated at ulp wobble
        if (!std::isfinite(fv) || std::abs(fv) >= kPoleThreshold) return RatioSample::sing();
        return RatioSample::of(fv);
    }
    throw NoConvergence("bessel_ratio_cf");
}

JYPair bessel_jy(double nu, double x) {
    if (!(x > 0.0)) throw UnsupportedParameter("bessel_jy needs x > 0");
    if (!(nu > -1.0)) throw UnsupportedParameter("bessel_jy needs nu > -1");
    if (nu >= 0.0) return bessel_jy_nonneg(nu, x);

    double mu = -nu;  // in (0, 1)
    JYPair p = bessel_jy_nonneg(mu, x);
    double c = std::cos(mu * kPi), s = std::sin(mu * kPi);
    JYPair out;
    out.j = c * p.j - s * p.y;
    out.jp = c * p.jp - s * p.yp;
    out.y = s * p.j + c * p.y;
    out.yp = s * p.jp + c * p.yp;
    return out;
}

double bessel_j(double mu, double x) { return bessel_jy(mu, x).j; }
double bessel_y(double mu, double x) { return bessel_jy(mu, x).y; }

std::pair<double, double> cylinder_pair(double mu, double alpha, double x) {
    JYPair p = bessel_jy(mu, x);
    double ca = std::cos(alpha), sa = std::sin(alpha);
    double cmu = p.j * ca - p.y * sa;
    double cmup = p.jp * ca - p.yp * sa;
    double cmum1 = cmup + (mu / x) * cmu;  // C_{mu-1} = C'_mu + (mu/x) C_mu
    return {cmu, cmum1};
}

RatioSample cylinder_ratio(double mu, double alpha, double x) {
    auto [cmu, cmum1] = cylinder_pair(mu, alpha, x);
    return RatioSample::ratio(cmu, cmum1);
}

}  // namespace zerofind
