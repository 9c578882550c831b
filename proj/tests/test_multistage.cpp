#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "ldpclat/alt.hpp"
#include "ldpclat/multistage.hpp"
#include "ldpclat/peg.hpp"
#include "ldpclat/split.hpp"
#include "ldpclat/stats.hpp"

using namespace ldpclat;

namespace {

// composite Simpson quadrature of the standard normal density over [x, 40]
double q_by_quadrature(double x) {
    const int steps = 200000;  // even
    long double a = x, b = 40.0L;
    long double h = (b - a) / steps;
    auto pdf = [](long double t) {
        return expl(-t * t / 2.0L) / sqrtl(2.0L * 3.14159265358979323846264338327950288L);
    };
    long double acc = pdf(a) + pdf(b);
    for (int i = 1; i < steps; ++i) acc += pdf(a + i * h) * ((i & 1) ? 4.0L : 2.0L);
    return static_cast<double>(acc * h / 3.0L);
}

// binomial tail probabilities, long double via log-gamma
long double binom_tail_geq(long long n, long long k, double p) {
    long double acc = 0.0L;
    for (long long i = k; i <= n; ++i) {
        long double lt = lgammal(n + 1.0L) - lgammal(i + 1.0L) - lgammal(n - i + 1.0L) +
                         i * logl(p) + (n - i) * log1pl(-p);
        acc += expl(lt);
    }
    return acc;
}

long double binom_tail_leq(long long n, long long k, double p) {
    long double acc = 0.0L;
    for (long long i = 0; i <= k; ++i) {
        long double lt = lgammal(n + 1.0L) - lgammal(i + 1.0L) - lgammal(n - i + 1.0L) +
                         i * logl(p) + (n - i) * log1pl(-p);
        acc += expl(lt);
    }
    return acc;
}

LatticeSpec worked_three_level() {
    auto h0 = SparseIntMatrix::from_dense({{1, 1, 1, 1}, {1, 0, 1, 0}, {1, 1, 0, 0}}, 2);
    auto h1 = SparseIntMatrix::from_dense({{1, 1, 1, 1}, {1, 0, 1, 0}}, 4);
    auto h2 = SparseIntMatrix::from_dense({{1, 1, 1, 1}}, 8);
    LatticeSpec spec;
    spec.n = 4;
    spec.h = {h0, h1, h2};
    return spec;
}

}  // namespace

TEST_CASE("gaussian tail matches direct quadrature") {
    CHECK(q_function(0.0) == 0.5);
    for (double x : {0.25, 0.5, 1.0, 2.0, 3.0, 5.9172}) {
        double ref = q_by_quadrature(x);
        CHECK(q_function(x) == Catch::Approx(ref).epsilon(1e-10));
    }
}

TEST_CASE("q_inverse round-trips through q_function") {
    for (double x = 0.1; x <= 6.0; x += 0.3)
        CHECK(q_inverse(q_function(x)) == Catch::Approx(x).margin(1e-9));
    for (double p : {0.3, 0.1, 1e-3, 1e-6, 1e-10})
        CHECK(q_function(q_inverse(p)) == Catch::Approx(p).epsilon(1e-9));
    CHECK(q_inverse(0.5) == Catch::Approx(0.0).margin(1e-12));
    CHECK(q_inverse(0.9) == Catch::Approx(-q_inverse(0.1)).margin(1e-12));
    CHECK_THROWS_AS(q_inverse(0.0), ConfigError);
    CHECK_THROWS_AS(q_inverse(1.0), ConfigError);
}

TEST_CASE("uncoded level error bound") {
    // single component: exactly the two-sided tail
    CHECK(pe_uncoded(2.0, 1, 0.5) == Catch::Approx(2.0 * q_function(2.0)).epsilon(1e-14));
    // the working point used by the equal-error design
    CHECK(pe_uncoded(4.0, 1024, 0.33800) == Catch::Approx(1e-5 / 3.0).epsilon(0.05));
    CHECK(pe_uncoded(4.0, 2048, 0.338) > pe_uncoded(4.0, 1024, 0.338));
    CHECK(pe_uncoded(4.0, 1024, 0.4) > pe_uncoded(4.0, 1024, 0.338));
    CHECK(pe_uncoded(0.1, 5, 10.0) == Catch::Approx(1.0).margin(1e-9));
    CHECK_THROWS_AS(pe_uncoded(0.0, 1, 0.5), ConfigError);
    CHECK_THROWS_AS(pe_uncoded(1.0, 0, 0.5), ConfigError);
}

TEST_CASE("clopper-pearson endpoints match closed forms at the extremes") {
    auto [lo0, hi0] = clopper_pearson(0, 100);
    CHECK(lo0 == 0.0);
    CHECK(hi0 == Catch::Approx(1.0 - std::pow(0.025, 0.01)).margin(1e-10));
    auto [lon, hin] = clopper_pearson(100, 100);
    CHECK(hin == 1.0);
    CHECK(lon == Catch::Approx(std::pow(0.025, 0.01)).margin(1e-10));
}

TEST_CASE("clopper-pearson bounds satisfy the binomial tail equations") {
    for (auto [k, n] : std::vector<std::pair<long long, long long>>{
             {3, 50}, {7, 100}, {42, 100}, {100, 1000}}) {
        auto [lo, hi] = clopper_pearson(k, n);
        CHECK(lo < static_cast<double>(k) / n);
        CHECK(hi > static_cast<double>(k) / n);
        CHECK(static_cast<double>(binom_tail_geq(n, k, lo)) == Catch::Approx(0.025).margin(1e-7));
        CHECK(static_cast<double>(binom_tail_leq(n, k, hi)) == Catch::Approx(0.025).margin(1e-7));
    }
    CHECK_THROWS_AS(clopper_pearson(-1, 10), ConfigError);
    CHECK_THROWS_AS(clopper_pearson(11, 10), ConfigError);
    CHECK_THROWS_AS(clopper_pearson(1, 10, 1.0), ConfigError);
}

TEST_CASE("multistage decoding recovers every word of the worked family") {
    auto spec = worked_three_level();
    REQUIRE(validate_spec(spec).valid);
    auto decoders = make_level_decoders(spec);
    auto book = enumerate_codebook(spec);
    REQUIRE(book.size() == 64);
    for (const auto& w : book) {
        std::vector<double> r(w.begin(), w.end());
        auto res = multistage_decode(spec, decoders, r, 0.02);
        CHECK(res.all_converged);
        CHECK(res.composed == w);
        for (int l = 0; l < 3; ++l)
            for (int j = 0; j < 4; ++j)
                CHECK(static_cast<int>(res.levels[l][j]) == ((w[j] >> l) & 1));
    }
}

TEST_CASE("decode-side syndromes agree with encode-side syndromes on valid words") {
    auto spec = worked_three_level();
    auto book = enumerate_codebook(spec);
    for (const auto& w : book) {
        std::vector<BitVec> levels;
        IntVec acc(4, 0);
        for (int l = 0; l < 3; ++l) {
            BitVec bits(4);
            for (int j = 0; j < 4; ++j) bits[j] = static_cast<std::uint8_t>((w[j] >> l) & 1);
            CHECK(decode_syndrome(spec, l, acc) == syndrome(spec, l, levels));
            levels.push_back(bits);
            for (int j = 0; j < 4; ++j) acc[j] += static_cast<std::int64_t>(bits[j]) << l;
        }
    }
}

TEST_CASE("multistage decoding survives moderate noise on a two-level code") {
    auto top = peg_construct_triangular(128, 16, 3, 4, 1);
    auto bot = triangular_peg_check_split(top, 4, 48, 1);
    auto spec = lift_family({bot.h, top}, {bot.f});
    REQUIRE(validate_spec(spec).valid);
    auto encode = make_alt_coset_encoder(spec);
    auto decoders = make_level_decoders(spec);
    std::mt19937 rng(71);
    std::normal_distribution<double> noise(0.0, 0.08);
    for (int trial = 0; trial < 15; ++trial) {
        std::vector<BitVec> msgs;
        for (int l = 0; l < 2; ++l) {
            BitVec u(spec.k(l));
            for (auto& b : u) b = static_cast<std::uint8_t>(rng() & 1);
            msgs.push_back(u);
        }
        auto word = sequential_encode(spec, encode, msgs);
        std::vector<double> r(128);
        for (int j = 0; j < 128; ++j) r[j] = static_cast<double>(word.composed[j]) + noise(rng);
        auto res = multistage_decode(spec, decoders, r, 0.08);
        CHECK(res.all_converged);
        CHECK(res.composed == word.composed);
    }
}

TEST_CASE("uncoded rounding uses ties-to-even") {
    IntVec composed{0, 0, 0, 1};
    auto z = round_uncoded({2.0, 6.0, -2.0, 3.0}, composed, 2);
    CHECK(z == IntVec{0, 2, 0, 0});
}

TEST_CASE("lattice decoding recovers codebook words shifted by coarse lattice points") {
    auto spec = worked_three_level();
    auto decoders = make_level_decoders(spec);
    auto book = enumerate_codebook(spec);
    IntVec shift{-2, 1, 0, 3};
    for (const auto& w : book) {
        std::vector<double> r(4);
        for (int j = 0; j < 4; ++j) r[j] = static_cast<double>(w[j] + 8 * shift[j]) + 0.03;
        auto point = lattice_decode(spec, decoders, r, 0.02);
        for (int j = 0; j < 4; ++j) CHECK(point[j] == w[j] + 8 * shift[j]);
        CHECK(is_lattice_point(spec, point));
    }
}

TEST_CASE("multistage validates its inputs") {
    auto spec = worked_three_level();
    auto decoders = make_level_decoders(spec);
    CHECK_THROWS_AS(multistage_decode(spec, decoders, {0.0, 0.0}, 0.1), ConfigError);
    decoders.pop_back();
    CHECK_THROWS_AS(multistage_decode(spec, decoders, {0.0, 0.0, 0.0, 0.0}, 0.1), ConfigError);
}
