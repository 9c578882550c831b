#pragma once
// BFS utilities on the Tanner graph of a matrix.  Edges follow the mod-2
// support: an entry contributes an edge iff it is odd.  Distances count edges,
// so a direct check-variable edge has distance 1 and check-to-check or
// variable-to-variable distances are even.

#include <limits>
#include <queue>
#include <vector>

#include "sparse.hpp"

namespace ldpclat {

inline constexpr int kUnreachable = std::numeric_limits<int>::max();

namespace detail {

// adjacency on the mod-2 support; rows/cols may be larger than the populated part
struct TannerAdjacency {
    std::vector<std::vector<int>> check_to_var;
    std::vector<std::vector<int>> var_to_check;

    explicit TannerAdjacency(const SparseIntMatrix& a)
        : check_to_var(a.rows), var_to_check(a.cols) {
        for (int i = 0; i < a.rows; ++i)
            for (std::size_t k = 0; k < a.row_support[i].size(); ++k)
                if (a.row_values[i][k] & 1) {
                    int j = a.row_support[i][k];
                    check_to_var[i].push_back(j);
                    var_to_check[j].push_back(i);
                }
    }
};

}  // namespace detail

// Reusable BFS scratch for the bipartite graph.  Distances from one variable
// node to every check node, plus the number of shortest paths realizing each
// distance (the multiplicity of new shortest cycles an edge to that check
// would close); the graph is passed as raw adjacency so callers with matrices
// under construction can reuse it.
struct TannerBfs {
    std::vector<int> dist_check;
    std::vector<int> dist_var;
    std::vector<double> count_check;  // shortest-path multiplicities (exact below 2^53)
    std::vector<double> count_var;
    std::vector<int> queue_var;
    std::vector<int> queue_check;

    // fills dist_check with edge counts from variable `start`; kUnreachable where disconnected
    void from_variable(const std::vector<std::vector<int>>& check_to_var,
                       const std::vector<std::vector<int>>& var_to_check, int start) {
        int m = static_cast<int>(check_to_var.size());
        int n = static_cast<int>(var_to_check.size());
        dist_check.assign(m, kUnreachable);
        dist_var.assign(n, kUnreachable);
        count_check.assign(m, 0.0);
        count_var.assign(n, 0.0);
        queue_var.clear();
        queue_check.clear();
        dist_var[start] = 0;
        count_var[start] = 1.0;
        queue_var.push_back(start);
        int d = 0;
        while (!queue_var.empty()) {
            queue_check.clear();
            for (int v : queue_var)
                for (int c : var_to_check[v])
                    if (dist_check[c] == kUnreachable) {
                        dist_check[c] = d + 1;
                        queue_check.push_back(c);
                    }
            for (int c : queue_check)
                for (int v : check_to_var[c])
                    if (dist_var[v] == d) count_check[c] += count_var[v];
            std::vector<int> next;
            for (int c : queue_check)
                for (int v : check_to_var[c])
                    if (dist_var[v] == kUnreachable) {
                        dist_var[v] = d + 2;
                        next.push_back(v);
                    }
            for (int v : next)
                for (int c : var_to_check[v])
                    if (dist_check[c] == d + 1) count_var[v] += count_check[c];
            queue_var.swap(next);
            d += 2;
        }
    }
};

// minimum number of edges on a path from check i to variable j; kUnreachable if none
inline int check_variable_distance(const SparseIntMatrix& a, int i, int j) {
    if (i < 0 || i >= a.rows || j < 0 || j >= a.cols)
        throw std::invalid_argument("check_variable_distance: node out of range");
    detail::TannerAdjacency adj(a);
    std::vector<int> dist_check(a.rows, kUnreachable), dist_var(a.cols, kUnreachable);
    dist_check[i] = 0;
    std::vector<int> frontier_check{i}, frontier_var;
    int d = 0;
    while (true) {
        frontier_var.clear();
        for (int c : frontier_check)
            for (int v : adj.check_to_var[c])
                if (dist_var[v] == kUnreachable) {
                    dist_var[v] = d + 1;
                    frontier_var.push_back(v);
                }
        if (dist_var[j] != kUnreachable) return dist_var[j];
        if (frontier_var.empty()) return kUnreachable;
        frontier_check.clear();
        for (int v : frontier_var)
            for (int c : adj.var_to_check[v])
                if (dist_check[c] == kUnreachable) {
                    dist_check[c] = d + 2;
                    frontier_check.push_back(c);
                }
        if (frontier_check.empty() && frontier_var.empty()) return kUnreachable;
        d += 2;
    }
}

// length of the shortest cycle in the Tanner graph; kUnreachable when acyclic.
// BFS from every variable node; a non-tree edge at depths (du, dv) closes a
// cycle of length du+dv+1 through the root.  Depth is pruned by the incumbent.
inline int girth(const SparseIntMatrix& a) {
    detail::TannerAdjacency adj(a);
    int m = a.rows, n = a.cols;
    int best = kUnreachable;
    // unified node ids: variables [0,n), checks [n, n+m)
    std::vector<std::vector<int>> nbr(n + m);
    for (int i = 0; i < m; ++i)
        for (int j : adj.check_to_var[i]) {
            nbr[j].push_back(n + i);
            nbr[n + i].push_back(j);
        }
    std::vector<int> dist(n + m), parent(n + m);
    std::vector<int> q;
    for (int root = 0; root < n; ++root) {
        if (best == 4) break;  // bipartite minimum
        std::fill(dist.begin(), dist.end(), -1);
        q.clear();
        q.push_back(root);
        dist[root] = 0;
        parent[root] = -1;
        std::size_t head = 0;
        while (head < q.size()) {
            int u = q[head++];
            if (best != kUnreachable && 2 * dist[u] + 1 >= best) continue;
            for (int v : nbr[u]) {
                if (v == parent[u]) continue;
                if (dist[v] < 0) {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    q.push_back(v);
                } else {
                    int cyc = dist[u] + dist[v] + 1;
                    if (cyc < best) best = cyc;
                }
            }
        }
    }
    return best;
}

}  // namespace ldpclat
