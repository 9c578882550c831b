#pragma once
// Rate allocation for two coded levels plus the uncoded integer level.
// Objective: maximize R0 + R1 + log2(sigma), i.e. minimize the VNR, subject to
//   f(R0, sigma) + f(R1, sigma/2) + pe_uncoded(4, n, sigma) <= pe_target,
// where f(R, s) is the word error rate of a rate-R LDPC code at noise s.
// f is measured on a local grid of (check count, noise) points with plain
// PEG codes as the rate family, then interpolated by an affine model of
// log10 f in (R, 20 log10 s). The inner allocation splits the residual error
// budget between the levels; both searches are plain grid scans.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "errors.hpp"
#include "lattice.hpp"
#include "peg.hpp"
#include "sim.hpp"
#include "stats.hpp"

namespace ldpclat {

// noise level at which the uncoded level alone spends the whole error budget
inline double equal_error_sigma(int levels, int n, double pe_target) {
    if (levels < 1 || n < 1 || !(pe_target > 0.0 && pe_target < 1.0))
        throw ConfigError("equal_error_sigma: bad arguments");
    double q = std::ldexp(1.0, levels);
    double lo = 1e-4, hi = 10.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (pe_uncoded(q, n, mid) < pe_target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

struct AffineFit {
    double a = 0.0;        // intercept
    double b_rate = 0.0;   // slope in the code rate
    double c_sigma = 0.0;  // slope in 20 log10(sigma)
};

struct GridPoint {
    int m = 0;
    double rate = 0.0;
    double sigma = 0.0;  // noise seen by this level
    double wer = 0.0;
    long long trials = 0;
    long long errors = 0;
};

struct RateDesignConfig {
    int n = 1000;
    double pe_target = 1e-2;
    int dv = 3;
    std::uint64_t seed = 1;
    // grids bracket the design point tightly: the affine model of log10 f is
    // only locally valid on a steep waterfall, and every default point stays
    // measurable (neither saturated nor error-free) within grid_max_trials
    std::vector<int> m0_grid{550, 525, 500, 475, 450};
    std::vector<int> m1_grid{42, 32, 22, 17, 12};
    std::vector<double> sigma_grid{0.28, 0.285, 0.29, 0.295, 0.30};  // level-0 noise
    long long grid_max_trials = 6000;
    long long grid_target_errors = 60;
    double sigma_step = 0.0005;  // outer search resolution
    double split_step = 0.005;   // budget split resolution
    int threads = 1;
    BpOptions bp{};
};

struct RateDesignResult {
    int m0 = 0, m1 = 0;
    double rate0 = 0.0, rate1 = 0.0;
    double sigma = 0.0;
    double vnr_db = 0.0;
    double split = 0.0;  // fraction of the coded budget spent on level 0
    AffineFit fit0, fit1;
    std::vector<GridPoint> grid0, grid1;
};

namespace detail {

inline double sigma_db(double sigma) { return 20.0 * std::log10(sigma); }

}  // namespace detail

// least-squares affine fit of log10(wer) over (rate, 20 log10 sigma)
inline AffineFit fit_affine(const std::vector<GridPoint>& points) {
    if (points.size() < 3) throw DesignError("fit_affine: need at least 3 points");
    // normal equations for [1, R, s] -> y
    double s11 = 0, s1r = 0, s1s = 0, srr = 0, srs = 0, sss = 0;
    double y1 = 0, yr = 0, ys = 0;
    for (const auto& p : points) {
        double r = p.rate, s = detail::sigma_db(p.sigma), y = std::log10(p.wer);
        s11 += 1;
        s1r += r;
        s1s += s;
        srr += r * r;
        srs += r * s;
        sss += s * s;
        y1 += y;
        yr += y * r;
        ys += y * s;
    }
    double det = s11 * (srr * sss - srs * srs) - s1r * (s1r * sss - srs * s1s) +
                 s1s * (s1r * srs - srr * s1s);
    if (std::fabs(det) < 1e-12) throw DesignError("fit_affine: degenerate grid");
    auto solve = [&](double r1, double r2, double r3) {
        // Cramer's rule column replacement
        double d1 = r1 * (srr * sss - srs * srs) - s1r * (r2 * sss - srs * r3) +
                    s1s * (r2 * srs - srr * r3);
        double d2 = s11 * (r2 * sss - srs * r3) - r1 * (s1r * sss - srs * s1s) +
                    s1s * (s1r * r3 - r2 * s1s);
        double d3 = s11 * (srr * r3 - r2 * srs) - s1r * (s1r * r3 - r2 * s1s) +
                    r1 * (s1r * srs - srr * s1s);
        return std::array<double, 3>{d1 / det, d2 / det, d3 / det};
    };
    auto coef = solve(y1, yr, ys);
    return AffineFit{coef[0], coef[1], coef[2]};
}

inline double fit_log10_wer(const AffineFit& fit, double rate, double sigma) {
    return fit.a + fit.b_rate * rate + fit.c_sigma * detail::sigma_db(sigma);
}

// word error rate of one plain PEG code at one noise level, zero syndrome
inline GridPoint measure_grid_point(int n, int m, int dv, double sigma,
                                    const RateDesignConfig& cfg, std::uint64_t seed) {
    LatticeSpec one;
    one.n = n;
    one.h = {peg_construct(n, m, dv, derive_seed(seed, "grid-code", static_cast<std::uint64_t>(m)))};
    auto decoders = make_level_decoders(one);
    SimConfig sim;
    sim.sigma = sigma;
    sim.max_trials = cfg.grid_max_trials;
    sim.target_errors = cfg.grid_target_errors;
    sim.rare_target_errors = cfg.grid_target_errors;
    sim.threads = cfg.threads;
    sim.round_trials = 256;
    sim.seed = derive_seed(seed, "grid-noise", static_cast<std::uint64_t>(m));
    sim.bp = cfg.bp;
    WerPoint p = simulate_point(one, decoders, sim);
    GridPoint g;
    g.m = m;
    g.rate = static_cast<double>(n - m) / n;
    g.sigma = sigma;
    g.trials = p.trials;
    g.errors = p.errors_coded;
    // half-an-error floor keeps log10 finite on error-free points
    g.wer = std::max(static_cast<double>(p.errors_coded), 0.5) / static_cast<double>(p.trials);
    return g;
}

inline std::vector<GridPoint> measure_grid(const std::vector<int>& m_grid,
                                           const std::vector<double>& level_sigmas,
                                           const RateDesignConfig& cfg, std::uint64_t seed) {
    std::vector<GridPoint> grid;
    std::uint64_t counter = 0;
    for (int m : m_grid)
        for (double s : level_sigmas)
            grid.push_back(
                measure_grid_point(cfg.n, m, cfg.dv, s, cfg, derive_seed(seed, "grid", counter++)));
    return grid;
}

// inner+outer grid search on the fitted models; pure function of the fits
inline RateDesignResult optimize_rates(const AffineFit& fit0, const AffineFit& fit1,
                                       const RateDesignConfig& cfg) {
    if (!(fit0.b_rate > 0.0) || !(fit1.b_rate > 0.0))
        throw DesignError("optimize_rates: fitted error rates must increase with rate");
    double r0_lo = 1.0 - static_cast<double>(cfg.m0_grid.front()) / cfg.n;
    double r0_hi = 1.0 - static_cast<double>(cfg.m0_grid.back()) / cfg.n;
    if (r0_lo > r0_hi) std::swap(r0_lo, r0_hi);
    double r1_lo = 1.0 - static_cast<double>(cfg.m1_grid.front()) / cfg.n;
    double r1_hi = 1.0 - static_cast<double>(cfg.m1_grid.back()) / cfg.n;
    if (r1_lo > r1_hi) std::swap(r1_lo, r1_hi);
    double sigma_lo = *std::min_element(cfg.sigma_grid.begin(), cfg.sigma_grid.end());
    double sigma_hi = *std::max_element(cfg.sigma_grid.begin(), cfg.sigma_grid.end());
    RateDesignResult best;
    double best_obj = -HUGE_VAL;
    for (double sigma = sigma_lo; sigma <= sigma_hi + 1e-12; sigma += cfg.sigma_step) {
        double unc = pe_uncoded(4.0, cfg.n, sigma);
        if (unc >= cfg.pe_target) continue;
        double budget = cfg.pe_target - unc;
        for (double t = cfg.split_step; t < 1.0; t += cfg.split_step) {
            // invert each affine model at its share of the budget
            double r0 = (std::log10(t * budget) - fit0.a -
                         fit0.c_sigma * detail::sigma_db(sigma)) /
                        fit0.b_rate;
            double r1 = (std::log10((1.0 - t) * budget) - fit1.a -
                         fit1.c_sigma * detail::sigma_db(sigma / 2.0)) /
                        fit1.b_rate;
            r0 = std::clamp(r0, r0_lo, r0_hi);
            r1 = std::clamp(r1, r1_lo, r1_hi);
            // clamping can push a level past its budget share; re-check the
            // whole constraint at the clamped rates before scoring (with float
            // headroom: unclamped inversions reconstruct the budget exactly)
            double predicted = std::pow(10.0, fit_log10_wer(fit0, r0, sigma)) +
                               std::pow(10.0, fit_log10_wer(fit1, r1, sigma / 2.0)) + unc;
            if (predicted > cfg.pe_target * (1.0 + 1e-9)) continue;
            double obj = r0 + r1 + std::log2(sigma);
            if (obj > best_obj) {
                best_obj = obj;
                best.sigma = sigma;
                best.split = t;
                best.m0 = static_cast<int>(std::lround(cfg.n * (1.0 - r0)));
                best.m1 = static_cast<int>(std::lround(cfg.n * (1.0 - r1)));
            }
        }
    }
    if (best_obj == -HUGE_VAL)
        throw DesignError("optimize_rates: error budget infeasible over the search range");
    best.rate0 = static_cast<double>(cfg.n - best.m0) / cfg.n;
    best.rate1 = static_cast<double>(cfg.n - best.m1) / cfg.n;
    best.fit0 = fit0;
    best.fit1 = fit1;
    best.vnr_db = 10.0 * std::log10(vnr_from_rate(2, best.rate0 + best.rate1, best.sigma));
    return best;
}

// full pipeline: measure both grids, fit, optimize
inline RateDesignResult design_rates(const RateDesignConfig& cfg) {
    if (cfg.n < 8 || cfg.m0_grid.empty() || cfg.m1_grid.empty() || cfg.sigma_grid.size() < 2)
        throw ConfigError("design_rates: invalid configuration");
    std::vector<double> level1_sigmas;
    for (double s : cfg.sigma_grid) level1_sigmas.push_back(s / 2.0);
    auto grid0 = measure_grid(cfg.m0_grid, cfg.sigma_grid, cfg, derive_seed(cfg.seed, "level0"));
    auto grid1 = measure_grid(cfg.m1_grid, level1_sigmas, cfg, derive_seed(cfg.seed, "level1"));
    RateDesignResult res = optimize_rates(fit_affine(grid0), fit_affine(grid1), cfg);
    res.grid0 = std::move(grid0);
    res.grid1 = std::move(grid1);
    return res;
}

}  // namespace ldpclat
