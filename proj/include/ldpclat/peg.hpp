#pragma once
// Progressive edge-growth construction of variable-regular parity-check
// matrices, plus the gap-g triangular variant.
//
// Canonical approximate-triangular (ALT) layout used throughout the toolkit:
// the parity block is the trailing m columns of H, split as [gap | tri]:
//   - gap columns: block positions [0, g), unrestricted;
//   - triangular column at block position g+j (actual column n-m+g+j) has its
//     unit diagonal at row j and no entries above row j;
//   - rows [m-g, m) are the unrestricted gap rows.
// So the parity block is [[B, L],[D, E]] with L lower-unit-triangular in the
// top-right, and back substitution solves the first m-g parity bits in order.

#include <cstdint>
#include <vector>

#include "errors.hpp"
#include "rng.hpp"
#include "sparse.hpp"
#include "tanner.hpp"

namespace ldpclat {

enum class TieBreak { lowest_index, seeded };

struct PegStats {
    int attempts = 1;  // constructions tried until the rank condition held
};

inline constexpr int kMaxRankRetries = 32;

namespace detail {

// graph under construction; converted to a matrix at the end
struct GrowingGraph {
    std::vector<std::vector<int>> check_to_var;
    std::vector<std::vector<int>> var_to_check;
    GrowingGraph(int m, int n) : check_to_var(m), var_to_check(n) {}
    void add_edge(int check, int var) {
        check_to_var[check].push_back(var);
        var_to_check[var].push_back(check);
    }
    bool has_edge(int check, int var) const {
        for (int v : check_to_var[check])
            if (v == var) return true;
        return false;
    }
    SparseIntMatrix to_matrix() const {
        std::vector<std::tuple<int, int, std::int64_t>> tr;
        for (int i = 0; i < static_cast<int>(check_to_var.size()); ++i)
            for (int j : check_to_var[i]) tr.emplace_back(i, j, 1);
        return SparseIntMatrix::from_triplets(static_cast<int>(check_to_var.size()),
                                              static_cast<int>(var_to_check.size()), tr, 2);
    }
};

// PEG edge selection: among `candidates` (none adjacent to `var` yet), prefer
// maximal distance from `var` (unreachable sorts greatest).  Within the best
// distance class, when the edge closes cycles, refuse to complete an exact
// copy of an existing column whenever an alternative exists (identical
// columns are weight-2 codewords and dominate the error floor of very
// high-rate graphs), then close as few shortest cycles as possible, then keep
// check degrees balanced; remaining ties follow the policy.
inline int peg_select(const GrowingGraph& graph, TannerBfs& bfs, int var, bool final_edge,
                      const std::vector<int>& candidates, TieBreak policy, Rng& rng) {
    if (candidates.empty()) return -1;
    bfs.from_variable(graph.check_to_var, graph.var_to_check, var);
    // checks that would make this column's pattern duplicate a finished column
    std::vector<char> duplicate(graph.check_to_var.size(), 0);
    const auto& have = graph.var_to_check[var];
    if (final_edge && !have.empty()) {
        int anchor = have[0];
        for (int r : have)
            if (graph.check_to_var[r].size() < graph.check_to_var[anchor].size()) anchor = r;
        for (int j : graph.check_to_var[anchor]) {
            if (j == var) continue;
            const auto& pat = graph.var_to_check[j];
            if (pat.size() != have.size() + 1) continue;
            int extra = -1;
            bool superset = true;
            for (int r : pat) {
                bool known = false;
                for (int s : have) known = known || (s == r);
                if (known) continue;
                if (extra >= 0) {
                    superset = false;
                    break;
                }
                extra = r;
            }
            if (superset && extra >= 0) duplicate[extra] = 1;
        }
    }
    long long best_dist = -1;
    int best_dup = 0;
    double best_paths = 0.0;
    std::size_t best_deg = 0;
    std::vector<int> tied;
    for (int c : candidates) {
        int d = bfs.dist_check[c];
        long long dist = d == kUnreachable ? static_cast<long long>(kUnreachable) + 1 : d;
        int dup = duplicate[c];
        double paths = d == kUnreachable ? 0.0 : bfs.count_check[c];
        std::size_t deg = graph.check_to_var[c].size();
        int cmp;
        if (dist != best_dist)
            cmp = dist > best_dist ? -1 : 1;
        else if (dup != best_dup)
            cmp = dup < best_dup ? -1 : 1;
        else if (paths != best_paths)
            cmp = paths < best_paths ? -1 : 1;
        else if (deg != best_deg)
            cmp = deg < best_deg ? -1 : 1;
        else
            cmp = 0;
        if (cmp < 0) {
            best_dist = dist;
            best_dup = dup;
            best_paths = paths;
            best_deg = deg;
            tied.clear();
            tied.push_back(c);
        } else if (cmp == 0) {
            tied.push_back(c);
        }
    }
    if (policy == TieBreak::lowest_index || tied.size() == 1) return tied[0];
    return tied[rng.next_below(tied.size())];
}

inline SparseIntMatrix peg_construct_once(int n, int m, int dv, int gap, bool triangular,
                                          TieBreak policy, Rng& rng) {
    GrowingGraph graph(m, n);
    TannerBfs bfs;
    std::vector<int> candidates;
    candidates.reserve(m);
    // triangular layout processes columns right to left so each triangular
    // column only sees already-anchored rows below its diagonal
    std::vector<int> order(n);
    for (int j = 0; j < n; ++j) order[j] = triangular ? n - 1 - j : j;
    for (int c : order) {
        int edges_wanted = dv;
        int min_row = 0;  // rows [min_row, m) are allowed for PEG-placed edges
        if (triangular && c >= n - m + gap) {
            int diag = c - (n - m + gap);
            graph.add_edge(diag, c);
            --edges_wanted;
            min_row = diag + 1;
        }
        for (int e = 0; e < edges_wanted; ++e) {
            candidates.clear();
            for (int i = min_row; i < m; ++i)
                if (!graph.has_edge(i, c)) candidates.push_back(i);
            int pick = peg_select(graph, bfs, c, e == edges_wanted - 1, candidates, policy, rng);
            if (pick < 0) {
                if (triangular) break;  // narrow triangular columns keep fewer edges
                throw DesignError("peg_construct: variable degree exceeds available checks");
            }
            graph.add_edge(pick, c);
        }
    }
    return graph.to_matrix();
}

inline SparseIntMatrix peg_with_retries(int n, int m, int dv, int gap, bool triangular,
                                        std::uint64_t seed, PegStats* stats) {
    if (m < 1 || n < m) throw DesignError("peg_construct: need n >= m >= 1");
    if (dv < 1 || dv > m) throw DesignError("peg_construct: need 1 <= dv <= m");
    if (triangular && (gap < 0 || gap > m)) throw DesignError("peg_construct: gap must be in [0, m]");
    for (int attempt = 0; attempt <= kMaxRankRetries; ++attempt) {
        // first attempt is fully deterministic; retries re-randomize tie-breaks
        TieBreak policy = attempt == 0 ? TieBreak::lowest_index : TieBreak::seeded;
        Rng rng(derive_seed(seed, "peg-attempt", attempt));
        auto h = peg_construct_once(n, m, dv, gap, triangular, policy, rng);
        if (gf2_rank(h) == m) {
            if (stats) stats->attempts = attempt + 1;
            return h;
        }
    }
    throw DesignError("peg_construct: rank deficient after retry budget exhausted");
}

}  // namespace detail

// variable-regular PEG matrix, m x n with column weight dv, full rank mod 2
inline SparseIntMatrix peg_construct(int n, int m, int dv, std::uint64_t seed = 0,
                                     PegStats* stats = nullptr) {
    return detail::peg_with_retries(n, m, dv, 0, false, seed, stats);
}

// PEG matrix in canonical ALT form with the given gap; gap == m removes every
// triangular constraint and coincides with peg_construct
inline SparseIntMatrix peg_construct_triangular(int n, int m, int dv, int gap,
                                                std::uint64_t seed = 0, PegStats* stats = nullptr) {
    return detail::peg_with_retries(n, m, dv, gap, true, seed, stats);
}

// true iff H carries the canonical ALT structure for this gap
inline bool verify_alt_form(const SparseIntMatrix& h, int gap) {
    int m = h.rows, n = h.cols;
    if (gap < 0 || gap > m || n < m) return false;
    for (int j = 0; j < m - gap; ++j) {
        int c = n - m + gap + j;
        bool diag = false;
        for (std::size_t k = 0; k < h.col_support[c].size(); ++k)
            if (h.col_values[c][k] & 1) {
                int row = h.col_support[c][k];
                if (row < j) return false;
                if (row == j) diag = true;
            }
        if (!diag) return false;
    }
    return true;
}

// smallest gap whose canonical ALT structure H satisfies (m if none smaller).
// Gap g works iff every parity column n-m+t with t in [g, m) has its topmost
// odd entry exactly at row t-g, i.e. t - top(t) is constant == g on a suffix.
inline int detect_alt_gap(const SparseIntMatrix& h) {
    int m = h.rows, n = h.cols;
    if (n < m) throw DesignError("detect_alt_gap: wider-than-tall matrix required");
    if (m == 0) return 0;
    auto top_odd_row = [&](int t) {
        for (std::size_t k = 0; k < h.col_support[n - m + t].size(); ++k)
            if (h.col_values[n - m + t][k] & 1) return h.col_support[n - m + t][k];
        return -1;
    };
    int top = top_odd_row(m - 1);
    if (top < 0) return m;
    int gap = m - 1 - top;  // only candidate below m: constancy of t - top(t)
    for (int t = m - 2; t >= gap; --t)
        if (t - top_odd_row(t) != gap) return m;
    return gap;
}

}  // namespace ldpclat
