#pragma once
// Numerics shared by the simulator and the reports: Gaussian tail Q and its
// inverse, the analytic error bound for the uncoded integer level, and exact
// (Clopper-Pearson) binomial confidence intervals via the regularized
// incomplete beta function.

#include <cmath>
#include <utility>

#include "errors.hpp"

namespace ldpclat {

inline double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

// bisection inverse of the strictly decreasing q_function on p in (0, 1)
inline double q_inverse(double p) {
    if (!(p > 0.0 && p < 1.0)) throw ConfigError("q_inverse: p must be in (0, 1)");
    if (p > 0.5) return -q_inverse(1.0 - p);
    double lo = 0.0, hi = 45.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (q_function(mid) > p)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// P(any of n components rounds to a wrong multiple of q under N(0, sigma^2));
// per component the two-sided tail is 2 Q(q / (2 sigma))
inline double pe_uncoded(double q, int n, double sigma) {
    if (!(q > 0.0) || n < 1 || !(sigma > 0.0))
        throw ConfigError("pe_uncoded: need q > 0, n >= 1, sigma > 0");
    double tail = 2.0 * q_function(q / (2.0 * sigma));
    if (tail >= 1.0) return 1.0;
    return -std::expm1(static_cast<double>(n) * std::log1p(-tail));
}

namespace detail {

// continued fraction for the regularized incomplete beta (Lentz's method)
inline double beta_cf(double a, double b, double x) {
    constexpr double eps = 3e-14, tiny = 1e-300;
    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0, d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 300; ++m) {
        double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) break;
    }
    return h;
}

inline double beta_reg(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double lbt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                 b * std::log1p(-x);
    double bt = std::exp(lbt);
    if (x < (a + 1.0) / (a + b + 2.0)) return bt * beta_cf(a, b, x) / a;
    return 1.0 - bt * beta_cf(b, a, 1.0 - x) / b;
}

// monotone bisection inverse of beta_reg in x
inline double beta_inv(double p, double a, double b) {
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (beta_reg(a, b, mid) < p)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

// exact two-sided binomial confidence interval for k successes in n trials
inline std::pair<double, double> clopper_pearson(long long k, long long n,
                                                 double confidence = 0.95) {
    if (n < 1 || k < 0 || k > n) throw ConfigError("clopper_pearson: need 0 <= k <= n, n >= 1");
    if (!(confidence > 0.0 && confidence < 1.0))
        throw ConfigError("clopper_pearson: confidence must be in (0, 1)");
    double alpha = 1.0 - confidence;
    double lo = (k == 0) ? 0.0
                         : detail::beta_inv(alpha / 2.0, static_cast<double>(k),
                                            static_cast<double>(n - k + 1));
    double hi = (k == n) ? 1.0
                         : detail::beta_inv(1.0 - alpha / 2.0, static_cast<double>(k + 1),
                                            static_cast<double>(n - k));
    return {lo, hi};
}

}  // namespace ldpclat
