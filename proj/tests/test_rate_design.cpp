#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ldpclat/rate_design.hpp"

using namespace ldpclat;

namespace {

// synthetic grid whose log10 wer is exactly affine in (rate, 20 log10 sigma)
std::vector<GridPoint> synthetic_grid(double a, double b_rate, double c_sigma) {
    std::vector<GridPoint> grid;
    for (int m : {60, 50, 40}) {
        for (double s : {0.3, 0.4, 0.5}) {
            GridPoint p;
            p.m = m;
            p.rate = (100.0 - m) / 100.0;
            p.sigma = s;
            p.wer = std::pow(10.0, a + b_rate * p.rate + c_sigma * 20.0 * std::log10(s));
            p.trials = 1000;
            p.errors = 10;
            grid.push_back(p);
        }
    }
    return grid;
}

}  // namespace

TEST_CASE("equal-error noise matches the first design working point") {
    double sigma = equal_error_sigma(2, 1024, 1e-5 / 3.0);
    CHECK(sigma == Catch::Approx(0.3380).margin(5e-4));
    CHECK(pe_uncoded(4.0, 1024, sigma) == Catch::Approx(1e-5 / 3.0).epsilon(1e-9));
    // rates (1024-788)/1024 and (1024-103)/1024 put that noise at 2.34 dB
    double rate_total = (236.0 + 921.0) / 1024.0;
    CHECK(10.0 * std::log10(vnr_from_rate(2, rate_total, sigma)) ==
          Catch::Approx(2.34).margin(0.01));
    CHECK_THROWS_AS(equal_error_sigma(2, 1024, 0.0), ConfigError);
}

TEST_CASE("affine fit recovers exact planar data") {
    auto fit = fit_affine(synthetic_grid(-25.0, 22.0, 0.8));
    CHECK(fit.a == Catch::Approx(-25.0).margin(1e-8));
    CHECK(fit.b_rate == Catch::Approx(22.0).margin(1e-8));
    CHECK(fit.c_sigma == Catch::Approx(0.8).margin(1e-8));
    CHECK(fit_log10_wer(fit, 0.5, 0.4) ==
          Catch::Approx(-25.0 + 11.0 + 0.8 * 20.0 * std::log10(0.4)).margin(1e-8));
}

TEST_CASE("affine fit rejects degenerate grids") {
    std::vector<GridPoint> flat(5);
    for (auto& p : flat) {
        p.rate = 0.5;
        p.sigma = 0.3;
        p.wer = 0.01;
    }
    CHECK_THROWS_AS(fit_affine(flat), DesignError);
    CHECK_THROWS_AS(fit_affine(std::vector<GridPoint>(2)), DesignError);
}

TEST_CASE("budget split optimum follows the slope ratio") {
    // with affine models, the best split of the coded budget solves
    // 1/(t b0) = 1/((1-t) b1), i.e. t* = b1 / (b0 + b1)
    RateDesignConfig cfg;  // default grids give the clamp hull
    AffineFit fit0{-6.95, 20.0, 0.5};
    AffineFit fit1{-33.36, 40.0, 0.5};
    auto res = optimize_rates(fit0, fit1, cfg);
    CHECK(res.split == Catch::Approx(2.0 / 3.0).margin(0.01));
    // both slopes lose less rate than log2(sigma) gains, so sigma maxes out
    CHECK(res.sigma == Catch::Approx(0.30).margin(1e-3));
    CHECK(res.rate0 == Catch::Approx(0.500).margin(0.005));
    CHECK(res.rate1 == Catch::Approx(0.978).margin(0.005));
    CHECK(res.m0 == std::lround(1000 * (1.0 - res.rate0)));
    CHECK(std::isfinite(res.vnr_db));
}

TEST_CASE("optimizer rejects non-increasing fits and infeasible budgets") {
    RateDesignConfig cfg;
    CHECK_THROWS_AS(optimize_rates(AffineFit{0.0, -1.0, 0.5}, AffineFit{0.0, 10.0, 0.5}, cfg),
                    DesignError);
    cfg.pe_target = 1e-12;  // the uncoded level alone exceeds this everywhere
    CHECK_THROWS_AS(optimize_rates(AffineFit{-7.0, 20.0, 0.5}, AffineFit{-33.0, 40.0, 0.5}, cfg),
                    DesignError);
}

TEST_CASE("grid measurement is reproducible and sane") {
    RateDesignConfig cfg;
    cfg.n = 96;
    cfg.grid_max_trials = 800;
    cfg.grid_target_errors = 30;
    auto a = measure_grid_point(96, 48, 3, 0.35, cfg, 42);
    auto b = measure_grid_point(96, 48, 3, 0.35, cfg, 42);
    CHECK(a.trials == b.trials);
    CHECK(a.errors == b.errors);
    CHECK(a.wer == b.wer);
    CHECK(a.rate == 0.5);
    CHECK(a.wer > 0.0);
    CHECK(a.wer <= 1.0);
    CHECK(a.trials <= 800);
}

TEST_CASE("end-to-end rate design on a small family") {
    RateDesignConfig cfg;
    cfg.n = 128;
    cfg.pe_target = 1e-1;
    cfg.m0_grid = {72, 64, 56};
    cfg.m1_grid = {16, 12, 8};
    cfg.sigma_grid = {0.30, 0.34};
    cfg.grid_max_trials = 500;
    cfg.grid_target_errors = 25;
    cfg.sigma_step = 0.002;
    cfg.split_step = 0.02;
    cfg.seed = 9;
    auto res = design_rates(cfg);
    CHECK(res.grid0.size() == 6);
    CHECK(res.grid1.size() == 6);
    CHECK(res.rate0 > 0.0);
    CHECK(res.rate0 < res.rate1);
    CHECK(res.rate1 < 1.0);
    CHECK(res.m0 > res.m1);
    CHECK(res.sigma >= 0.30);
    CHECK(res.sigma <= 0.34 + 1e-9);
    CHECK(std::isfinite(res.vnr_db));
}
