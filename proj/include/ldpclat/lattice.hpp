#pragma once
// Multilevel lattice specs built from a chain of parity-check matrices.
// The lattice is { v in Z^n : H_l v^T = 0 mod 2^(l+1), 0 <= l < L } and the
// finite codebook is its intersection with [0, 2^L)^n. Encoding runs level by
// level: each level solves a binary coset problem whose syndrome is an exact
// integer functional of the previous levels.

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "sparse.hpp"

namespace ldpclat {

using IntVec = std::vector<std::int64_t>;

struct LatticeSpec {
    int n = 0;
    std::vector<SparseIntMatrix> h;         // h[l] stored mod 2^(l+1)
    std::vector<SparseIntMatrix> coupling;  // empty, or L-1 matrices: h[l] vs h[l-1]

    int levels() const { return static_cast<int>(h.size()); }
    int m(int level) const { return h[level].rows; }
    int k(int level) const { return n - h[level].rows; }
    double rate(int level) const { return static_cast<double>(k(level)) / n; }
    double rate_total() const {
        double r = 0;
        for (int l = 0; l < levels(); ++l) r += rate(l);
        return r;
    }
    // log2 of the fundamental volume: n(L - R) = sum of all row counts
    long long log2_volume() const {
        long long v = 0;
        for (const auto& mat : h) v += mat.rows;
        return v;
    }
    long long log2_cardinality() const {
        return static_cast<long long>(n) * levels() - log2_volume();
    }
};

struct LevelStatus {
    int level = 0;
    int rows = 0;
    int rank = 0;
    bool full_rank = false;
    bool coupling_checked = false;
    bool coupling_ok = false;
};

struct ValidationReport {
    bool valid = false;                 // shapes, moduli, ranks, row-count ordering
    bool coupling_verified = false;     // all congruences h[l] = F[l] h[l-1] held
    bool coupling_present = false;
    bool degenerate_single_level = false;
    std::vector<LevelStatus> levels;
    std::vector<std::string> messages;
};

struct LatticeCodeword {
    std::vector<BitVec> levels;     // c_l
    std::vector<BitVec> syndromes;  // s_l actually used
    IntVec composed;                // sum over l of 2^l c_l
};

// solves one level's binary coset problem: given (level, syndrome, message)
// return c with phi(H_level) c^T = syndrome mod 2
using CosetEncoder = std::function<BitVec(int, const BitVec&, const BitVec&)>;

inline ValidationReport validate_spec(const LatticeSpec& spec) {
    ValidationReport report;
    report.valid = true;
    if (spec.h.empty()) {
        report.valid = false;
        report.messages.push_back("no parity-check matrices");
        return report;
    }
    if (spec.levels() == 1) {
        report.degenerate_single_level = true;
        report.messages.push_back("single-level spec: integer span of one binary code plus 2Z^n");
    }
    if (spec.levels() > 62) {
        report.valid = false;
        report.messages.push_back("too many levels for 64-bit arithmetic");
        return report;
    }
    for (int l = 0; l < spec.levels(); ++l) {
        const auto& mat = spec.h[l];
        LevelStatus st;
        st.level = l;
        st.rows = mat.rows;
        if (mat.cols != spec.n) {
            report.valid = false;
            report.messages.push_back("level " + std::to_string(l) + ": column count mismatch");
        }
        if (mat.modulus != (std::int64_t{1} << (l + 1))) {
            report.valid = false;
            report.messages.push_back("level " + std::to_string(l) +
                                      ": entries must be stored mod 2^" + std::to_string(l + 1));
        }
        if (mat.rows < 1 || mat.rows > mat.cols) {
            report.valid = false;
            report.messages.push_back("level " + std::to_string(l) + ": bad row count");
        } else {
            st.rank = gf2_rank(mat);
            st.full_rank = st.rank == mat.rows;
            if (!st.full_rank) {
                report.valid = false;
                report.messages.push_back("level " + std::to_string(l) +
                                          ": rank " + std::to_string(st.rank) + " < " +
                                          std::to_string(mat.rows));
            }
        }
        if (l > 0 && spec.h[l].rows > spec.h[l - 1].rows) {
            report.valid = false;
            report.messages.push_back("level " + std::to_string(l) +
                                      ": row counts must be non-increasing across levels");
        }
        report.levels.push_back(st);
    }
    if (!spec.coupling.empty()) {
        report.coupling_present = true;
        if (static_cast<int>(spec.coupling.size()) != spec.levels() - 1) {
            report.valid = false;
            report.messages.push_back("coupling list must have one matrix per level above 0");
        } else {
            report.coupling_verified = true;
            for (int l = 1; l < spec.levels(); ++l) {
                auto& st = report.levels[l];
                st.coupling_checked = true;
                const auto& f = spec.coupling[l - 1];
                std::int64_t q = std::int64_t{1} << l;  // congruence modulus at this level
                bool ok = f.rows == spec.h[l].rows && f.cols == spec.h[l - 1].rows;
                if (ok) {
                    auto lhs = spec.h[l].reduced(q);
                    auto rhs = int_matmul_mod(f, spec.h[l - 1], q);
                    ok = lhs == rhs;
                }
                st.coupling_ok = ok;
                if (!ok) {
                    report.valid = false;
                    report.coupling_verified = false;
                    report.messages.push_back("level " + std::to_string(l) +
                                              ": coupling congruence fails");
                }
            }
        }
    } else if (spec.levels() > 1) {
        report.messages.push_back("coupling matrices absent: nesting congruences unverified");
    }
    return report;
}

// s_l from the integer accumulation of prior levels; exact division by 2^l
inline BitVec syndrome(const LatticeSpec& spec, int level,
                       const std::vector<BitVec>& prior_levels) {
    const auto& mat = spec.h[level];
    BitVec s(mat.rows, 0);
    if (level == 0) return s;
    IntVec acc(spec.n, 0);
    for (int i = 0; i < level; ++i)
        for (int j = 0; j < spec.n; ++j) acc[j] += (std::int64_t{1} << i) * prior_levels[i][j];
    for (int r = 0; r < mat.rows; ++r) {
        std::int64_t t = 0;
        for (std::size_t idx = 0; idx < mat.row_support[r].size(); ++idx)
            t += mat.row_values[r][idx] * acc[mat.row_support[r][idx]];
        if (t & ((std::int64_t{1} << level) - 1))
            throw DesignError("syndrome: accumulated word violates a lower level's congruence");
        s[r] = static_cast<std::uint8_t>((t >> level) & 1);  // sign flip is a no-op mod 2
    }
    return s;
}

namespace detail {

inline BitVec mod2_syndrome_of(const SparseIntMatrix& mat, const BitVec& word) {
    BitVec out(mat.rows, 0);
    for (int r = 0; r < mat.rows; ++r) {
        int acc = 0;
        for (std::size_t idx = 0; idx < mat.row_support[r].size(); ++idx)
            if (mat.row_values[r][idx] & 1) acc ^= word[mat.row_support[r][idx]];
        out[r] = static_cast<std::uint8_t>(acc);
    }
    return out;
}

}  // namespace detail

inline LatticeCodeword sequential_encode(const LatticeSpec& spec, const CosetEncoder& encode_coset,
                                         const std::vector<BitVec>& messages) {
    if (static_cast<int>(messages.size()) != spec.levels())
        throw DesignError("sequential_encode: one message per level required");
    LatticeCodeword word;
    word.composed.assign(spec.n, 0);
    for (int l = 0; l < spec.levels(); ++l) {
        if (static_cast<int>(messages[l].size()) != spec.k(l))
            throw DesignError("sequential_encode: message length must be n - m at its level");
        BitVec s = syndrome(spec, l, word.levels);
        BitVec c = encode_coset(l, s, messages[l]);
        if (static_cast<int>(c.size()) != spec.n)
            throw DesignError("sequential_encode: coset encoder returned a wrong-sized word");
        if (detail::mod2_syndrome_of(spec.h[l], c) != s)
            throw DesignError("sequential_encode: coset encoder output violates its syndrome");
        for (int j = 0; j < spec.n; ++j)
            word.composed[j] += (std::int64_t{1} << l) * c[j];
        word.levels.push_back(std::move(c));
        word.syndromes.push_back(std::move(s));
    }
    return word;
}

inline bool is_lattice_point(const LatticeSpec& spec, const IntVec& v) {
    if (static_cast<int>(v.size()) != spec.n) return false;
    for (int l = 0; l < spec.levels(); ++l) {
        const auto& mat = spec.h[l];
        std::int64_t q = std::int64_t{1} << (l + 1);
        for (int r = 0; r < mat.rows; ++r) {
            std::int64_t t = 0;
            for (std::size_t idx = 0; idx < mat.row_support[r].size(); ++idx)
                t += mat.row_values[r][idx] * v[mat.row_support[r][idx]];
            if (((t % q) + q) % q != 0) return false;
        }
    }
    return true;
}

// exhaustive codebook, lexicographically sorted; guarded to tiny instances
inline std::vector<IntVec> enumerate_codebook(const LatticeSpec& spec) {
    long long bits = static_cast<long long>(spec.n) * spec.levels();
    if (bits > 24) throw ConfigError("enumerate_codebook: 2^(n*L) exceeds the enumeration guard");
    std::int64_t radix = std::int64_t{1} << spec.levels();
    std::vector<IntVec> out;
    IntVec v(spec.n, 0);
    for (;;) {
        if (is_lattice_point(spec, v)) out.push_back(v);
        int pos = spec.n - 1;
        while (pos >= 0 && v[pos] == radix - 1) v[pos--] = 0;
        if (pos < 0) break;
        ++v[pos];
    }
    return out;  // odometer order is already lexicographic
}

inline double vnr_from_rate(int levels, double rate_total, double sigma) {
    double l_minus_r = levels - rate_total;
    return std::pow(2.0, 2.0 * l_minus_r) / (2.0 * 3.14159265358979323846 * std::exp(1.0) * sigma * sigma);
}

inline double vnr(const LatticeSpec& spec, double sigma) {
    return vnr_from_rate(spec.levels(), spec.rate_total(), sigma);
}

inline double vnr_db(const LatticeSpec& spec, double sigma) {
    return 10.0 * std::log10(vnr(spec, sigma));
}

// closed-form inverse of the VNR definition
inline double sigma_for_vnr_db(int levels, double rate_total, double vnr_db_value) {
    double l_minus_r = levels - rate_total;
    double linear = std::pow(10.0, vnr_db_value / 10.0);
    return std::pow(2.0, l_minus_r) /
           std::sqrt(2.0 * 3.14159265358979323846 * std::exp(1.0) * linear);
}

namespace detail {

inline SparseIntMatrix with_modulus(const SparseIntMatrix& a, std::int64_t q) {
    std::vector<std::tuple<int, int, std::int64_t>> tr;
    for (int i = 0; i < a.rows; ++i)
        for (std::size_t idx = 0; idx < a.row_support[i].size(); ++idx)
            tr.emplace_back(i, a.row_support[i][idx], a.row_values[i][idx]);
    return SparseIntMatrix::from_triplets(a.rows, a.cols, tr, q);
}

}  // namespace detail

// integer lift of a nested binary family: level 0 is kept, each next level
// becomes F_l * H_{l-1} reduced mod 2^l (stored mod 2^(l+1)), which reduces
// mod 2 back to the given binary matrix whenever the binary congruence
// binary[l] = F_l * binary[l-1] mod 2 held
inline LatticeSpec lift_family(const std::vector<SparseIntMatrix>& binary,
                               const std::vector<SparseIntMatrix>& coupling) {
    if (binary.empty()) throw DesignError("lift_family: at least one level required");
    if (coupling.size() + 1 != binary.size())
        throw DesignError("lift_family: need one coupling matrix per level above 0");
    LatticeSpec spec;
    spec.n = binary[0].cols;
    spec.h.push_back(detail::with_modulus(binary[0], 2));
    for (std::size_t l = 1; l < binary.size(); ++l) {
        std::int64_t q = std::int64_t{1} << l;
        auto lifted = int_matmul_mod(coupling[l - 1], spec.h[l - 1], q);
        spec.h.push_back(detail::with_modulus(lifted, q * 2));
        spec.coupling.push_back(coupling[l - 1]);
    }
    return spec;
}

}  // namespace ldpclat
