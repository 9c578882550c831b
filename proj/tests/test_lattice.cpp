#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "ldpclat/lattice.hpp"
#include "ldpclat/peg.hpp"
#include "ldpclat/rng.hpp"
#include "ldpclat/split.hpp"
#include "oracle.hpp"

using namespace ldpclat;

namespace {

using Dense = std::vector<std::vector<std::int64_t>>;

LatticeSpec spec_from_dense(const std::vector<Dense>& hs, const std::vector<Dense>& fs = {}) {
    LatticeSpec spec;
    spec.n = static_cast<int>(hs[0][0].size());
    for (std::size_t l = 0; l < hs.size(); ++l)
        spec.h.push_back(SparseIntMatrix::from_dense(hs[l], std::int64_t{1} << (l + 1)));
    for (const auto& f : fs) spec.coupling.push_back(SparseIntMatrix::from_dense(f, 0));
    return spec;
}

// three nested parity-check matrices sharing rows (the submatrix chain)
LatticeSpec nested_chain_spec() {
    return spec_from_dense({{{1, 1, 1, 1}, {1, 0, 1, 0}, {1, 1, 0, 0}},
                            {{1, 1, 1, 1}, {1, 0, 1, 0}},
                            {{1, 1, 1, 1}}},
                           {{{1, 0, 0}, {0, 1, 0}}, {{1, 0}}});
}

// integer-coupled three-level family with a non-binary top matrix
LatticeSpec coupled_family_spec() {
    return spec_from_dense({{{1, 1, 1, 1}, {1, 0, 1, 0}, {1, 1, 0, 0}},
                            {{1, 0, 1, 0}, {0, 1, 0, 1}},
                            {{3, 1, 3, 1}}},
                           {{{2, 7, 4}, {11, 9, 6}}, {{3, 5}}});
}

}  // namespace

TEST_CASE("validation accepts the worked three-level families") {
    auto chain = nested_chain_spec();
    auto report = validate_spec(chain);
    CHECK(report.valid);
    CHECK(report.coupling_verified);
    CHECK_FALSE(report.degenerate_single_level);

    auto coupled = coupled_family_spec();
    auto coupled_report = validate_spec(coupled);
    CHECK(coupled_report.valid);
    CHECK(coupled_report.coupling_verified);
    CHECK(coupled.rate(0) == 0.25);
    CHECK(coupled.rate(1) == 0.5);
    CHECK(coupled.rate(2) == 0.75);
    CHECK(coupled.rate_total() == 1.5);
    CHECK(coupled.log2_cardinality() == 6);
}

TEST_CASE("validation reports rank deficiency and absent coupling") {
    auto spec = coupled_family_spec();
    // zero out the second row of the middle matrix
    spec.h[1] = SparseIntMatrix::from_dense({{1, 0, 1, 0}, {0, 0, 0, 0}}, 4);
    auto report = validate_spec(spec);
    CHECK_FALSE(report.valid);
    CHECK_FALSE(report.levels[1].full_rank);

    auto no_f = coupled_family_spec();
    no_f.coupling.clear();
    auto nf_report = validate_spec(no_f);
    CHECK(nf_report.valid);
    CHECK_FALSE(nf_report.coupling_present);
    CHECK_FALSE(nf_report.coupling_verified);
}

TEST_CASE("single-level specs validate but are flagged as degenerate") {
    auto spec = spec_from_dense({{{1, 1, 0}, {0, 1, 1}}});
    auto report = validate_spec(spec);
    CHECK(report.valid);
    CHECK(report.degenerate_single_level);
}

TEST_CASE("syndromes of the nested chain match the worked sequence") {
    auto spec = nested_chain_spec();
    BitVec c0{1, 1, 1, 1};
    BitVec c1{0, 1, 1, 0};
    CHECK(syndrome(spec, 0, {}) == BitVec{0, 0, 0});
    CHECK(syndrome(spec, 1, {c0}) == BitVec{0, 1});
    CHECK(syndrome(spec, 2, {c0, c1}) == BitVec{0});
}

TEST_CASE("syndrome signals inconsistent prior levels") {
    auto spec = nested_chain_spec();
    BitVec bad{1, 0, 0, 0};  // not a member of the level-0 code
    CHECK_THROWS_AS(syndrome(spec, 1, {bad}), DesignError);
}

TEST_CASE("the integer-coupled family yields the alternative syndrome") {
    // same first-level word, but the coupled family computes s_1 with its own
    // integer matrix and lands in a different coset
    auto spec = coupled_family_spec();
    BitVec c0{1, 1, 1, 1};
    CHECK(syndrome(spec, 1, {c0}) == BitVec{1, 1});
}

TEST_CASE("sequential encoding reproduces the worked codeword") {
    auto spec = nested_chain_spec();
    CosetEncoder fixed = [](int level, const BitVec& s, const BitVec&) -> BitVec {
        if (level == 0) {
            REQUIRE(s == BitVec{0, 0, 0});
            return {1, 1, 1, 1};
        }
        if (level == 1) {
            REQUIRE(s == BitVec{0, 1});
            return {0, 1, 1, 0};
        }
        REQUIRE(s == BitVec{0});
        return {0, 0, 1, 1};
    };
    auto word = sequential_encode(spec, fixed, {BitVec(1, 0), BitVec(2, 0), BitVec(3, 0)});
    CHECK(word.composed == IntVec{1, 3, 7, 5});
    CHECK(word.syndromes[1] == BitVec{0, 1});
    CHECK(word.syndromes[2] == BitVec{0});
    CHECK(is_lattice_point(spec, word.composed));
}

TEST_CASE("encoding rejects a coset solver that misses its syndrome") {
    auto spec = nested_chain_spec();
    CosetEncoder broken = [](int, const BitVec&, const BitVec&) -> BitVec {
        return {1, 0, 0, 0};
    };
    CHECK_THROWS_AS(sequential_encode(spec, broken, {BitVec(1, 0), BitVec(2, 0), BitVec(3, 0)}),
                    DesignError);
}

TEST_CASE("membership testing on worked vectors") {
    auto spec = nested_chain_spec();
    CHECK(is_lattice_point(spec, {1, 3, 7, 5}));
    CHECK_FALSE(is_lattice_point(spec, {1, 3, 7, 6}));
    CHECK(is_lattice_point(spec, {0, 0, 0, 0}));
    CHECK(is_lattice_point(spec, {8, 0, 0, 0}));   // 2^L Z^n is always inside
    CHECK(is_lattice_point(spec, {-8, 8, 0, 16}));
}

TEST_CASE("a two-level repetition-style code enumerates to four words") {
    auto spec = spec_from_dense({{{1, 1}}, {{1, 1}}});
    auto book = enumerate_codebook(spec);
    std::vector<IntVec> expect{{0, 0}, {1, 3}, {2, 2}, {3, 1}};
    CHECK(book == expect);
    CHECK(static_cast<long long>(book.size()) == (1LL << spec.log2_cardinality()));
}

TEST_CASE("codebook sizes match the product-of-levels cardinality") {
    for (auto spec : {nested_chain_spec(), coupled_family_spec()}) {
        auto book = enumerate_codebook(spec);
        CHECK(book.size() == 64);
        CHECK(static_cast<long long>(book.size()) == (1LL << spec.log2_cardinality()));
    }
}

TEST_CASE("different syndrome labels need not separate codebooks") {
    // the two three-level families label cosets through different matrices
    // (level-1 syndromes (1,1) vs (0,1) for the same first-level word), yet
    // exhaustive enumeration shows they carve out the same 64 codewords
    auto coupled = coupled_family_spec();
    auto chain = nested_chain_spec();
    CHECK(enumerate_codebook(coupled) == enumerate_codebook(chain));
    // (3,3,1,1) = (1,1,1,1) + 2*(1,1,0,0) is reachable in both families
    CHECK(is_lattice_point(coupled, {3, 3, 1, 1}));
    CHECK(is_lattice_point(chain, {3, 3, 1, 1}));
}

TEST_CASE("a non-binary second-level matrix can change the codebook") {
    // two-level family whose level-1 matrix is non-binary mod 4: the all-ones
    // word is a member, but no submatrix-nested binary chain with the same
    // component codes admits it (its forced level-1 word would be all-zero,
    // which cannot produce the required odd syndrome)
    auto coupled = spec_from_dense({{{1, 0, 0, 1}, {1, 1, 0, 0}}, {{0, 1, 0, 3}}}, {{{3, 1}}});
    REQUIRE(validate_spec(coupled).valid);
    CHECK(is_lattice_point(coupled, {1, 1, 1, 1}));
    // the only binary parity check for the bigger component code is (0,1,0,1);
    // both completions to a nested two-row base matrix exclude the word
    for (Dense h0 : {Dense{{0, 1, 0, 1}, {1, 1, 0, 0}}, Dense{{0, 1, 0, 1}, {1, 0, 0, 1}}}) {
        auto chain = spec_from_dense({h0, {{0, 1, 0, 1}}});
        REQUIRE(validate_spec(chain).valid);
        CHECK_FALSE(is_lattice_point(chain, {1, 1, 1, 1}));
    }
}

TEST_CASE("two-level integer-lift family admits the all-ones word") {
    auto spec = spec_from_dense({{{1, 0, 0, 1}, {1, 1, 0, 0}}, {{0, 1, 0, 3}}}, {{{3, 1}}});
    REQUIRE(validate_spec(spec).valid);
    CHECK(syndrome(spec, 1, {BitVec{1, 1, 1, 1}}) == BitVec{0});
    CHECK(is_lattice_point(spec, {1, 1, 1, 1}));
}

TEST_CASE("codebooks are closed under addition mod 2^L") {
    auto spec = coupled_family_spec();
    auto book = enumerate_codebook(spec);
    std::int64_t radix = 8;
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const auto& a = book[rng.next_below(book.size())];
        const auto& b = book[rng.next_below(book.size())];
        IntVec sum(a.size());
        for (std::size_t j = 0; j < a.size(); ++j) sum[j] = (a[j] + b[j]) % radix;
        CHECK(std::binary_search(book.begin(), book.end(), sum));
    }
}

TEST_CASE("partial encodings already satisfy the next level's congruence") {
    // if the first l levels are consistent (H_{l-1} v = 0 mod 2^l), then the
    // coupled H_l inherits divisibility, which is what makes every syndrome
    // an exact integer; partial words are where this is non-trivial
    auto spec = coupled_family_spec();
    auto encoder = oracle::brute_coset_encoder(spec);
    Rng rng(23);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<BitVec> msgs;
        for (int l = 0; l < spec.levels(); ++l) {
            BitVec u(spec.k(l));
            for (auto& bit : u) bit = rng.next_bit();
            msgs.push_back(std::move(u));
        }
        auto word = sequential_encode(spec, encoder, msgs);
        for (int l = 1; l < spec.levels(); ++l) {
            std::int64_t q = std::int64_t{1} << l;
            IntVec partial(spec.n, 0);
            for (int i = 0; i < l; ++i)
                for (int j = 0; j < spec.n; ++j)
                    partial[j] += (std::int64_t{1} << i) * word.levels[i][j];
            for (int r = 0; r < spec.h[l].rows; ++r) {
                std::int64_t t = 0;
                for (std::size_t i = 0; i < spec.h[l].row_support[r].size(); ++i)
                    t += spec.h[l].row_values[r][i] * partial[spec.h[l].row_support[r][i]];
                CHECK(((t % q) + q) % q == 0);
            }
        }
    }
}

TEST_CASE("sequential encoding reaches the whole codebook and nothing else") {
    Rng rng(17);
    for (int trial = 0; trial < 6; ++trial) {
        // random nested family on n=6 via repeated splitting, lifted to integers
        int n = 6;
        auto top = peg_construct(n, 1, 1, derive_seed(11, "lat-top", trial));
        auto mid = peg_check_split(top, 2, trial);
        auto bot = peg_check_split(mid.h, 3 + static_cast<int>(rng.next_below(2)), trial);
        auto spec = lift_family({bot.h, mid.h, top}, {bot.f, mid.f});
        REQUIRE(validate_spec(spec).valid);

        auto book = enumerate_codebook(spec);
        CHECK(static_cast<long long>(book.size()) == (1LL << spec.log2_cardinality()));

        auto encoder = oracle::brute_coset_encoder(spec);
        std::vector<IntVec> reached;
        std::vector<int> k = {spec.k(0), spec.k(1), spec.k(2)};
        std::uint32_t total = 1u << (k[0] + k[1] + k[2]);
        for (std::uint32_t mask = 0; mask < total; ++mask) {
            std::vector<BitVec> msgs(3);
            int offset = 0;
            for (int l = 0; l < 3; ++l) {
                msgs[l].resize(k[l]);
                for (int b = 0; b < k[l]; ++b) msgs[l][b] = (mask >> (offset + b)) & 1;
                offset += k[l];
            }
            reached.push_back(sequential_encode(spec, encoder, msgs).composed);
        }
        std::sort(reached.begin(), reached.end());
        CHECK(std::adjacent_find(reached.begin(), reached.end()) == reached.end());
        CHECK(reached == book);
    }
}

TEST_CASE("lifted families reduce mod 2 to their binary inputs") {
    auto base = peg_construct(12, 2, 1, 3);
    auto split = peg_check_split(base, 5, 1);
    auto spec = lift_family({split.h, base}, {split.f});
    REQUIRE(spec.levels() == 2);
    CHECK(spec.h[0].mod2() == split.h.mod2());
    CHECK(spec.h[1].mod2() == base.mod2());
    CHECK(validate_spec(spec).valid);
}

TEST_CASE("volume-to-noise ratio follows the design formula") {
    // two-level design with total rate 1.13 at its published noise level
    CHECK(std::abs(10.0 * std::log10(vnr_from_rate(2, 1.13, 0.3380)) - 2.34) < 0.01);
    // unit ratio when the noise variance equals the normalized volume term
    double sigma = 1.0 / std::sqrt(2.0 * 3.14159265358979323846 * std::exp(1.0));
    CHECK(std::abs(vnr_from_rate(2, 2.0, sigma) - 1.0) < 1e-12);
    // closed-form inversion round-trips through the dB value
    for (double db : {-0.5, 0.0, 1.356, 2.34, 5.0}) {
        double s = sigma_for_vnr_db(2, 1.478, db);
        CHECK(std::abs(10.0 * std::log10(vnr_from_rate(2, 1.478, s)) - db) < 1e-9);
    }
}

TEST_CASE("enumeration guard rejects oversized instances") {
    auto h = peg_construct(16, 4, 3, 0);
    LatticeSpec spec;
    spec.n = 16;
    spec.h.push_back(h);
    spec.h.push_back(detail::with_modulus(peg_construct(16, 2, 1, 0), 4));
    CHECK_THROWS_AS(enumerate_codebook(spec), ConfigError);
}
