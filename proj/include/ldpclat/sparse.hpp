#pragma once
// Sparse row/column-indexed matrix with small nonnegative integer entries.
// One type covers binary parity-check matrices, mod-2^l lifted matrices and
// plain integer coupling matrices; `modulus` declares the entry domain:
//   modulus == 0   plain integers (no reduction implied)
//   modulus == 2^k entries live in [1, 2^k) (zeros are simply absent)
// Supports are kept sorted; matrices are value types and cheap to copy at the
// sizes used here (n <= ~10^4, column weight <= ~8).

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace ldpclat {

// binary words (one byte per bit) travel between every layer of the library
using BitVec = std::vector<std::uint8_t>;

struct SparseIntMatrix {
    int rows = 0;
    int cols = 0;
    std::int64_t modulus = 2;
    std::vector<std::vector<int>> row_support;           // sorted column indices per row
    std::vector<std::vector<std::int64_t>> row_values;   // aligned with row_support
    std::vector<std::vector<int>> col_support;           // sorted row indices per column
    std::vector<std::vector<std::int64_t>> col_values;   // aligned with col_support

    static SparseIntMatrix from_triplets(int m, int n,
                                         const std::vector<std::tuple<int, int, std::int64_t>>& entries,
                                         std::int64_t modulus = 2) {
        SparseIntMatrix a;
        a.rows = m;
        a.cols = n;
        a.modulus = modulus;
        a.row_support.resize(m);
        a.row_values.resize(m);
        a.col_support.resize(n);
        a.col_values.resize(n);
        std::vector<std::tuple<int, int, std::int64_t>> sorted = entries;
        std::sort(sorted.begin(), sorted.end());
        for (auto& [i, j, v] : sorted) {
            if (i < 0 || i >= m || j < 0 || j >= n)
                throw std::invalid_argument("matrix entry out of range");
            if (v == 0) continue;
            if (v < 0 || (modulus != 0 && v >= modulus))
                throw std::invalid_argument("matrix entry outside declared modulus");
            if (!a.row_support[i].empty() && a.row_support[i].back() == j)
                throw std::invalid_argument("duplicate matrix entry");
            a.row_support[i].push_back(j);
            a.row_values[i].push_back(v);
            a.col_support[j].push_back(i);
            a.col_values[j].push_back(v);
        }
        return a;
    }

    // rows given as dense initializer data; convenience for tests and goldens
    static SparseIntMatrix from_dense(const std::vector<std::vector<std::int64_t>>& dense,
                                      std::int64_t modulus = 2) {
        int m = static_cast<int>(dense.size());
        int n = m > 0 ? static_cast<int>(dense[0].size()) : 0;
        std::vector<std::tuple<int, int, std::int64_t>> tr;
        for (int i = 0; i < m; ++i) {
            if (static_cast<int>(dense[i].size()) != n)
                throw std::invalid_argument("ragged dense matrix");
            for (int j = 0; j < n; ++j)
                if (dense[i][j] != 0) tr.emplace_back(i, j, dense[i][j]);
        }
        return from_triplets(m, n, tr, modulus);
    }

    static SparseIntMatrix binary_from_rows(int m, int n, const std::vector<std::vector<int>>& supports) {
        std::vector<std::tuple<int, int, std::int64_t>> tr;
        for (int i = 0; i < m; ++i)
            for (int j : supports[i]) tr.emplace_back(i, j, 1);
        return from_triplets(m, n, tr, 2);
    }

    std::int64_t value_at(int i, int j) const {
        const auto& s = row_support[i];
        auto it = std::lower_bound(s.begin(), s.end(), j);
        if (it == s.end() || *it != j) return 0;
        return row_values[i][static_cast<std::size_t>(it - s.begin())];
    }

    std::size_t nnz() const {
        std::size_t t = 0;
        for (const auto& r : row_support) t += r.size();
        return t;
    }

    bool is_binary() const {
        for (const auto& vals : row_values)
            for (auto v : vals)
                if (v != 1) return false;
        return true;
    }

    // mod-2 image: odd entries become 1, even entries vanish
    SparseIntMatrix mod2() const {
        std::vector<std::tuple<int, int, std::int64_t>> tr;
        for (int i = 0; i < rows; ++i)
            for (std::size_t k = 0; k < row_support[i].size(); ++k)
                if (row_values[i][k] & 1) tr.emplace_back(i, row_support[i][k], 1);
        return from_triplets(rows, cols, tr, 2);
    }

    // entries reduced into [0, q); zeros dropped
    SparseIntMatrix reduced(std::int64_t q) const {
        std::vector<std::tuple<int, int, std::int64_t>> tr;
        for (int i = 0; i < rows; ++i)
            for (std::size_t k = 0; k < row_support[i].size(); ++k) {
                std::int64_t v = row_values[i][k] % q;
                if (v < 0) v += q;
                if (v != 0) tr.emplace_back(i, row_support[i][k], v);
            }
        return from_triplets(rows, cols, tr, q);
    }

    friend bool operator==(const SparseIntMatrix& a, const SparseIntMatrix& b) {
        return a.rows == b.rows && a.cols == b.cols && a.modulus == b.modulus &&
               a.row_support == b.row_support && a.row_values == b.row_values;
    }
};

inline SparseIntMatrix permute_rows(const SparseIntMatrix& a, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != a.rows) throw std::invalid_argument("bad row permutation");
    std::vector<std::tuple<int, int, std::int64_t>> tr;
    for (int i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.row_support[i].size(); ++k)
            tr.emplace_back(perm[i], a.row_support[i][k], a.row_values[i][k]);
    return SparseIntMatrix::from_triplets(a.rows, a.cols, tr, a.modulus);
}

inline SparseIntMatrix permute_cols(const SparseIntMatrix& a, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != a.cols) throw std::invalid_argument("bad column permutation");
    std::vector<std::tuple<int, int, std::int64_t>> tr;
    for (int i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.row_support[i].size(); ++k)
            tr.emplace_back(i, perm[a.row_support[i][k]], a.row_values[i][k]);
    return SparseIntMatrix::from_triplets(a.rows, a.cols, tr, a.modulus);
}

namespace detail {

// dense bit matrix, 64 columns per word; workhorse for rank and inversion
struct BitMatrix {
    int rows = 0;
    int cols = 0;
    int words = 0;
    std::vector<std::uint64_t> bits;

    BitMatrix() = default;
    BitMatrix(int m, int n) : rows(m), cols(n), words((n + 63) / 64), bits(static_cast<std::size_t>(m) * words) {}

    std::uint64_t* row(int i) { return bits.data() + static_cast<std::size_t>(i) * words; }
    const std::uint64_t* row(int i) const { return bits.data() + static_cast<std::size_t>(i) * words; }
    bool get(int i, int j) const { return (row(i)[j >> 6] >> (j & 63)) & 1; }
    void set(int i, int j) { row(i)[j >> 6] |= 1ULL << (j & 63); }
    void xor_rows(int dst, int src) {
        auto* d = row(dst);
        const auto* s = row(src);
        for (int w = 0; w < words; ++w) d[w] ^= s[w];
    }
    void swap_rows(int a, int b) {
        if (a == b) return;
        auto* pa = row(a);
        auto* pb = row(b);
        for (int w = 0; w < words; ++w) std::swap(pa[w], pb[w]);
    }
};

inline BitMatrix to_bits_mod2(const SparseIntMatrix& a) {
    BitMatrix b(a.rows, a.cols);
    for (int i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.row_support[i].size(); ++k)
            if (a.row_values[i][k] & 1) b.set(i, a.row_support[i][k]);
    return b;
}

inline int bitmatrix_rank(BitMatrix b) {
    int rank = 0;
    for (int j = 0; j < b.cols && rank < b.rows; ++j) {
        int pivot = -1;
        for (int i = rank; i < b.rows; ++i)
            if (b.get(i, j)) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        b.swap_rows(rank, pivot);
        for (int i = 0; i < b.rows; ++i)
            if (i != rank && b.get(i, j)) b.xor_rows(i, rank);
        ++rank;
    }
    return rank;
}

// Gauss-Jordan inverse of a square bit matrix; returns false if singular.
inline bool bitmatrix_invert(const BitMatrix& a, BitMatrix& inv) {
    if (a.rows != a.cols) return false;
    int n = a.rows;
    BitMatrix work = a;
    inv = BitMatrix(n, n);
    for (int i = 0; i < n; ++i) inv.set(i, i);
    for (int j = 0; j < n; ++j) {
        int pivot = -1;
        for (int i = j; i < n; ++i)
            if (work.get(i, j)) {
                pivot = i;
                break;
            }
        if (pivot < 0) return false;
        work.swap_rows(j, pivot);
        inv.swap_rows(j, pivot);
        for (int i = 0; i < n; ++i)
            if (i != j && work.get(i, j)) {
                work.xor_rows(i, j);
                inv.xor_rows(i, j);
            }
    }
    return true;
}

}  // namespace detail

// rank of the mod-2 image
inline int gf2_rank(const SparseIntMatrix& a) {
    return detail::bitmatrix_rank(detail::to_bits_mod2(a));
}

// exact integer product F*H (no reduction); result carries modulus 0
inline SparseIntMatrix int_matmul(const SparseIntMatrix& f, const SparseIntMatrix& h) {
    if (f.cols != h.rows) throw std::invalid_argument("int_matmul: inner dimensions disagree");
    std::vector<std::int64_t> acc(static_cast<std::size_t>(h.cols), 0);
    std::vector<int> touched;
    std::vector<std::tuple<int, int, std::int64_t>> tr;
    for (int i = 0; i < f.rows; ++i) {
        touched.clear();
        for (std::size_t k = 0; k < f.row_support[i].size(); ++k) {
            int mid = f.row_support[i][k];
            std::int64_t fv = f.row_values[i][k];
            for (std::size_t t = 0; t < h.row_support[mid].size(); ++t) {
                int j = h.row_support[mid][t];
                if (acc[j] == 0) touched.push_back(j);
                acc[j] += fv * h.row_values[mid][t];
            }
        }
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        for (int j : touched) {
            if (acc[j] != 0) tr.emplace_back(i, j, acc[j]);
            acc[j] = 0;
        }
    }
    return SparseIntMatrix::from_triplets(f.rows, h.cols, tr, 0);
}

// integer product with entries reduced into [0, q); q must be a power of two >= 2
inline SparseIntMatrix int_matmul_mod(const SparseIntMatrix& f, const SparseIntMatrix& h, std::int64_t q) {
    if (q < 2 || (q & (q - 1)) != 0) throw std::invalid_argument("int_matmul_mod: modulus must be a power of two >= 2");
    return int_matmul(f, h).reduced(q);
}

}  // namespace ldpclat
