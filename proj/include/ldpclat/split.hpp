#pragma once
// Check splitting: refine a binary base matrix B (b x n) into H (m x n, m >=
// b) such that each base row's support is partitioned among its "child" rows,
// so B = F H over the integers with F the binary parent-indicator matrix.
// Edge placement follows the PEG rule (maximize distance, avoid duplicate
// columns, minimize new shortest cycles, then balance check weights); the
// triangular variant keeps the canonical ALT layout with the same gap, so the
// split matrix encodes exactly as cheaply as its base.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "errors.hpp"
#include "peg.hpp"
#include "rng.hpp"
#include "sparse.hpp"
#include "tanner.hpp"

namespace ldpclat {

struct ParentMapping {
    int child_rows = 0;   // m
    int parent_rows = 0;  // b
    std::vector<int> parent;                 // child row -> parent row
    std::vector<std::vector<int>> preimage;  // parent row -> sorted child rows

    void rebuild_preimage() {
        preimage.assign(parent_rows, {});
        for (int r = 0; r < child_rows; ++r) preimage[parent[r]].push_back(r);
    }
    bool surjective() const {
        for (const auto& pre : preimage)
            if (pre.empty()) return false;
        return true;
    }
};

struct SplitResult {
    SparseIntMatrix h;  // m x n binary
    SparseIntMatrix f;  // b x m binary, row supports are the parent preimages
    ParentMapping mapping;
    int attempts = 1;
};

namespace detail {

inline void require_binary_base(const SparseIntMatrix& b, int m, const char* who) {
    if (b.modulus != 2 || !b.is_binary())
        throw DesignError(std::string(who) + ": base matrix must be binary");
    if (b.rows < 1 || m < b.rows)
        throw DesignError(std::string(who) + ": need target rows >= base rows >= 1");
    for (int j = 0; j < b.cols; ++j)
        if (b.col_support[j].empty())
            throw DesignError(std::string(who) + ": base matrix has an empty column");
}

// exact comparison of mu(k) = weight_k / (count_k + 1) as rationals
inline bool mu_less(std::int64_t wa, std::int64_t ca, std::int64_t wb, std::int64_t cb) {
    return wa * (cb + 1) < wb * (ca + 1);
}

// greedy argmax of mu over `candidates`; ties by policy
inline int pick_parent(const std::vector<int>& candidates, const std::vector<int>& weight,
                       const std::vector<int>& count, TieBreak policy, Rng& rng) {
    std::vector<int> tied;
    for (int k : candidates) {
        if (tied.empty() || mu_less(weight[tied[0]], count[tied[0]], weight[k], count[k])) {
            tied.clear();
            tied.push_back(k);
        } else if (!mu_less(weight[k], count[k], weight[tied[0]], count[tied[0]])) {
            tied.push_back(k);
        }
    }
    if (tied.empty()) throw DesignError("check split: no eligible parent row");
    if (policy == TieBreak::lowest_index || tied.size() == 1) return tied[0];
    return tied[rng.next_below(tied.size())];
}

inline ParentMapping parent_mapping_impl(const SparseIntMatrix& b, int gap, int m,
                                         bool triangular, TieBreak policy, Rng& rng) {
    int rows = b.rows, n = b.cols;
    ParentMapping map;
    map.child_rows = m;
    map.parent_rows = rows;
    map.parent.assign(m, -1);
    std::vector<int> weight(rows), count(rows, 1);
    for (int k = 0; k < rows; ++k) weight[k] = static_cast<int>(b.row_support[k].size());
    std::vector<int> everyone(rows);
    for (int k = 0; k < rows; ++k) everyone[k] = k;
    if (!triangular) {
        // identity prefix, then append children to the currently heaviest
        // parent (by expected child weight after one more split)
        for (int r = 0; r < rows; ++r) map.parent[r] = r;
        for (int r = rows; r < m; ++r) {
            int k = pick_parent(everyone, weight, count, policy, rng);
            map.parent[r] = k;
            ++count[k];
        }
    } else {
        // the bottom b child rows copy the base rows (aligning gap rows with
        // gap rows and shared diagonals); the new top rows each take a parent
        // that covers the child's own diagonal column
        for (int r = m - rows; r < m; ++r) map.parent[r] = r - (m - rows);
        for (int r = m - rows - 1; r >= 0; --r) {
            int diag_col = n - m + gap + r;
            std::vector<int> covering;
            for (std::size_t t = 0; t < b.col_support[diag_col].size(); ++t)
                if (b.col_values[diag_col][t] & 1) covering.push_back(b.col_support[diag_col][t]);
            if (covering.empty())
                throw DesignError("check split: no base row covers a required diagonal column");
            int k = pick_parent(covering, weight, count, policy, rng);
            map.parent[r] = k;
            ++count[k];
        }
    }
    map.rebuild_preimage();
    return map;
}

inline SparseIntMatrix split_once(const SparseIntMatrix& b, int gap, int m, bool triangular,
                                  const ParentMapping& map, TieBreak policy, Rng& rng) {
    int n = b.cols;
    GrowingGraph graph(m, n);
    TannerBfs bfs;
    std::vector<int> order(n), candidates;
    for (int j = 0; j < n; ++j) order[j] = triangular ? n - 1 - j : j;
    for (int c : order) {
        std::vector<int> parents;
        for (std::size_t t = 0; t < b.col_support[c].size(); ++t)
            if (b.col_values[c][t] & 1) parents.push_back(b.col_support[c][t]);
        int min_row = 0;
        if (triangular && c >= n - m + gap) {
            int diag = c - (n - m + gap);
            int k0 = map.parent[diag];
            auto it = std::find(parents.begin(), parents.end(), k0);
            if (it == parents.end())
                throw DesignError("check split: parent of a diagonal row misses its column");
            parents.erase(it);
            graph.add_edge(diag, c);
            min_row = diag + 1;
        }
        for (std::size_t t = 0; t < parents.size(); ++t) {
            int k = parents[t];
            candidates.clear();
            for (int i : map.preimage[k])
                if (i >= min_row && !graph.has_edge(i, c)) candidates.push_back(i);
            int pick =
                peg_select(graph, bfs, c, t + 1 == parents.size(), candidates, policy, rng);
            if (pick < 0) throw DesignError("check split: no admissible child row for an edge");
            graph.add_edge(pick, c);
        }
    }
    return graph.to_matrix();
}

inline SparseIntMatrix indicator_from_mapping(const ParentMapping& map) {
    std::vector<std::tuple<int, int, std::int64_t>> tr;
    for (int r = 0; r < map.child_rows; ++r) tr.emplace_back(map.parent[r], r, 1);
    return SparseIntMatrix::from_triplets(map.parent_rows, map.child_rows, tr, 2);
}

inline SplitResult split_with_retries(const SparseIntMatrix& b, int gap, int m, bool triangular,
                                      std::uint64_t seed) {
    detail::require_binary_base(b, m, triangular ? "triangular_peg_check_split" : "peg_check_split");
    if (triangular && !verify_alt_form(b, gap))
        throw DesignError("triangular_peg_check_split: base matrix does not carry the requested gap");
    if (gf2_rank(b) != b.rows)
        throw DesignError("check split: base matrix is rank deficient");
    for (int attempt = 0; attempt <= kMaxRankRetries; ++attempt) {
        TieBreak policy = attempt == 0 ? TieBreak::lowest_index : TieBreak::seeded;
        Rng rng(derive_seed(seed, "split-attempt", attempt));
        auto map = parent_mapping_impl(b, gap, m, triangular, policy, rng);
        auto h = split_once(b, gap, m, triangular, map, policy, rng);
        if (gf2_rank(h) == m) {
            SplitResult out{std::move(h), indicator_from_mapping(map), std::move(map), attempt + 1};
            return out;
        }
    }
    throw DesignError("check split: rank deficient after retry budget exhausted");
}

}  // namespace detail

// parent mapping balancing expected child weights; identity on the base rows
inline ParentMapping create_parent_mapping(const SparseIntMatrix& b, int m) {
    detail::require_binary_base(b, m, "create_parent_mapping");
    Rng rng(0);
    return detail::parent_mapping_impl(b, 0, m, false, TieBreak::lowest_index, rng);
}

// variant that guarantees each new triangular row's parent covers its
// diagonal column (base matrix must be in canonical ALT form with this gap)
inline ParentMapping create_parent_mapping_triangular(const SparseIntMatrix& b, int gap, int m) {
    detail::require_binary_base(b, m, "create_parent_mapping_triangular");
    if (!verify_alt_form(b, gap))
        throw DesignError("create_parent_mapping_triangular: base matrix does not carry the gap");
    Rng rng(0);
    return detail::parent_mapping_impl(b, gap, m, true, TieBreak::lowest_index, rng);
}

inline SplitResult peg_check_split(const SparseIntMatrix& b, int m, std::uint64_t seed = 0) {
    return detail::split_with_retries(b, 0, m, false, seed);
}

inline SplitResult triangular_peg_check_split(const SparseIntMatrix& b, int gap, int m,
                                              std::uint64_t seed = 0) {
    return detail::split_with_retries(b, gap, m, true, seed);
}

// true iff the result's rows partition the base supports column-exactly:
// column weights preserved, F rows equal the parent preimages, and B = F H
// over the integers
inline bool verify_split(const SparseIntMatrix& b, const SplitResult& result) {
    const auto& h = result.h;
    const auto& f = result.f;
    const auto& map = result.mapping;
    if (h.cols != b.cols || f.rows != b.rows || f.cols != h.rows) return false;
    if (!h.is_binary() || !f.is_binary()) return false;
    if (map.child_rows != h.rows || map.parent_rows != b.rows) return false;
    if (static_cast<int>(map.parent.size()) != map.child_rows) return false;
    ParentMapping check = map;
    check.rebuild_preimage();
    if (!check.surjective()) return false;
    for (int k = 0; k < f.rows; ++k)
        if (f.row_support[k] != check.preimage[k]) return false;
    for (int j = 0; j < b.cols; ++j)
        if (h.col_support[j].size() != b.col_support[j].size()) return false;
    auto product = int_matmul(f, h);
    if (product.rows != b.rows || product.cols != b.cols) return false;
    for (int i = 0; i < b.rows; ++i) {
        if (product.row_support[i] != b.row_support[i]) return false;
        for (std::size_t t = 0; t < b.row_support[i].size(); ++t)
            if (product.row_values[i][t] != b.row_values[i][t]) return false;
    }
    return true;
}

}  // namespace ldpclat
