#pragma once
// Linear-time coset encoder. For a full-rank binary-view matrix H (m x n) it
// finds a column split [systematic | gap | triangular] and a row split
// [diagonal rows | gap rows] so the parity sub-block looks like
//     [ B  L ]      L: (m-g) x (m-g) lower-unit-triangular on the chosen
//     [ D  E ]      diagonal pairs, g: the gap
// Solving H c^T = s for the parity bits then costs two substitution passes
// plus one dense g x g solve: O(nnz + g^2) per word.
//
// Matrices already carrying the canonical ALT layout keep their designated
// columns; anything else goes through greedy peeling (repeatedly retiring a
// column whose residual support is a single row; when none exists, the row of
// highest residual degree is surrendered to the gap). Gap columns are chosen
// by GF(2) rank extension, so the parity block is invertible by construction.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <memory>
#include <vector>

#include "errors.hpp"
#include "lattice.hpp"
#include "peg.hpp"
#include "sparse.hpp"

namespace ldpclat {

class AltEncoder {
public:
    explicit AltEncoder(const SparseIntMatrix& h) : h_(h), n_(h.cols), m_(h.rows) {
        if (m_ < 1 || n_ < m_) throw DesignError("alt encoder: need cols >= rows >= 1");
        int native_gap = detect_alt_gap(h_);
        if (native_gap < m_)
            adopt_native_layout(native_gap);
        else
            peel_layout();
        choose_gap_columns();
        index_rows();
        build_schur_inverse();
    }

    int n() const { return n_; }
    int m() const { return m_; }
    int gap() const { return gap_; }
    int message_length() const { return n_ - m_; }
    const std::vector<int>& systematic_columns() const { return sys_cols_; }
    const std::vector<int>& gap_columns() const { return gap_cols_; }
    const std::vector<int>& triangular_columns() const { return tri_cols_; }

    // c with phi(H) c^T = syndrome (mod 2) and c[systematic_columns()] = message
    BitVec encode(const BitVec& syndrome, const BitVec& message) const {
        if (static_cast<int>(syndrome.size()) != m_)
            throw DesignError("alt encoder: syndrome length mismatch");
        if (static_cast<int>(message.size()) != message_length())
            throw DesignError("alt encoder: message length mismatch");
        BitVec c(n_, 0);
        // y = syndrome - H u^T restricted to the systematic columns
        BitVec y(syndrome);
        for (int idx = 0; idx < message_length(); ++idx) {
            if (!message[idx]) continue;
            int col = sys_cols_[idx];
            c[col] = 1;
            for (std::size_t t = 0; t < h_.col_support[col].size(); ++t)
                if (h_.col_values[col][t] & 1) y[h_.col_support[col][t]] ^= 1;
        }
        int tri_count = m_ - gap_;
        // pass A: z = L^{-1} y_tri ignoring gap-column contributions
        BitVec z(tri_count, 0);
        for (int j = 0; j < tri_count; ++j) {
            int acc = y[diag_row_[j]];
            for (int prev : tri_entries_[diag_row_[j]])
                if (prev < j) acc ^= z[prev];
            z[j] = static_cast<std::uint8_t>(acc);
        }
        // dense solve for the gap bits: p_gap = Phi^{-1} (y_gap - E z)
        BitVec pgap(gap_, 0);
        for (int i = 0; i < gap_; ++i) {
            int acc = y[gap_rows_[i]];
            for (int j : tri_entries_[gap_rows_[i]]) acc ^= z[j];
            if (acc)
                for (int t = 0; t < gap_; ++t) pgap[t] ^= schur_inv_.get(t, i);
        }
        for (int i = 0; i < gap_; ++i) c[gap_cols_[i]] = pgap[i];
        // pass B: p_tri = L^{-1} (y_tri - B p_gap)
        for (int j = 0; j < tri_count; ++j) {
            int acc = y[diag_row_[j]];
            for (int i : gap_entries_[diag_row_[j]]) acc ^= pgap[i];
            for (int prev : tri_entries_[diag_row_[j]])
                if (prev < j) acc ^= c[tri_cols_[prev]];
            c[tri_cols_[j]] = static_cast<std::uint8_t>(acc);
        }
        return c;
    }

private:
    static bool odd_at(const SparseIntMatrix& h, int row, int col) {
        return h.value_at(row, col) & 1;
    }

    void adopt_native_layout(int native_gap) {
        gap_ = native_gap;
        int tri_count = m_ - gap_;
        tri_cols_.resize(tri_count);
        diag_row_.resize(tri_count);
        for (int j = 0; j < tri_count; ++j) {
            tri_cols_[j] = n_ - m_ + gap_ + j;
            diag_row_[j] = j;
        }
        for (int i = m_ - gap_; i < m_; ++i) gap_rows_.push_back(i);
        preferred_gap_cols_.resize(gap_);
        for (int i = 0; i < gap_; ++i) preferred_gap_cols_[i] = n_ - m_ + i;
    }

    // retire degree-1 columns from the back of the triangular order; rows
    // surrendered while stuck become gap rows
    void peel_layout() {
        std::vector<std::vector<int>> col_rows(n_);
        for (int col = 0; col < n_; ++col)
            for (std::size_t t = 0; t < h_.col_support[col].size(); ++t)
                if (h_.col_values[col][t] & 1) col_rows[col].push_back(h_.col_support[col][t]);
        std::vector<int> col_deg(n_, 0), row_deg(m_, 0);
        for (int col = 0; col < n_; ++col) {
            col_deg[col] = static_cast<int>(col_rows[col].size());
            for (int r : col_rows[col]) ++row_deg[r];
        }
        std::vector<char> row_alive(m_, 1), col_used(n_, 0);
        std::vector<std::pair<int, int>> reversed;  // (row, col) back to front
        int alive = m_;
        std::vector<int> ones;  // lazy stack of columns that hit residual degree 1
        for (int col = 0; col < n_; ++col)
            if (col_deg[col] == 1) ones.push_back(col);
        while (alive > 0) {
            int pick_col = -1;
            while (!ones.empty()) {
                int col = ones.back();
                ones.pop_back();
                if (!col_used[col] && col_deg[col] == 1) {
                    pick_col = col;
                    break;
                }
            }
            int retire_row = -1;
            if (pick_col >= 0) {
                for (int r : col_rows[pick_col])
                    if (row_alive[r]) retire_row = r;
                col_used[pick_col] = 1;
                --row_deg[retire_row];
                reversed.emplace_back(retire_row, pick_col);
            } else {
                // stuck: surrender the densest remaining row to the gap
                for (int r = 0; r < m_; ++r)
                    if (row_alive[r] && (retire_row < 0 || row_deg[r] > row_deg[retire_row]))
                        retire_row = r;
                gap_rows_.push_back(retire_row);
            }
            row_alive[retire_row] = 0;
            --alive;
            for (std::size_t t = 0; t < h_.row_support[retire_row].size(); ++t) {
                if (!(h_.row_values[retire_row][t] & 1)) continue;
                int col = h_.row_support[retire_row][t];
                if (--col_deg[col] == 1 && !col_used[col]) ones.push_back(col);
            }
        }
        gap_ = static_cast<int>(gap_rows_.size());
        std::sort(gap_rows_.begin(), gap_rows_.end());
        for (auto it = reversed.rbegin(); it != reversed.rend(); ++it) {
            diag_row_.push_back(it->first);
            tri_cols_.push_back(it->second);
        }
    }

    // extend the independent triangular columns to a full-rank parity block;
    // basis[r] holds a reduced column vector whose lowest set bit is row r
    void choose_gap_columns() {
        std::vector<char> used(n_, 0);
        for (int col : tri_cols_) used[col] = 1;
        int words = (m_ + 63) / 64;
        std::vector<std::vector<std::uint64_t>> basis(m_);
        auto insert_col = [&](int col) {
            std::vector<std::uint64_t> vec(words, 0);
            for (std::size_t t = 0; t < h_.col_support[col].size(); ++t)
                if (h_.col_values[col][t] & 1) {
                    int r = h_.col_support[col][t];
                    vec[r >> 6] |= 1ULL << (r & 63);
                }
            for (int w = 0; w < words; ++w)
                while (vec[w]) {
                    int r = w * 64 + std::countr_zero(vec[w]);
                    if (basis[r].empty()) {
                        basis[r] = std::move(vec);
                        return true;
                    }
                    for (int t = w; t < words; ++t) vec[t] ^= basis[r][t];
                }
            return false;
        };
        for (int col : tri_cols_)
            if (!insert_col(col)) throw DesignError("alt encoder: triangular columns not independent");
        // candidates: designated gap block first, then trailing columns
        std::vector<int> scan = preferred_gap_cols_;
        for (int col = n_ - 1; col >= 0; --col) scan.push_back(col);
        for (int col : scan) {
            if (static_cast<int>(gap_cols_.size()) == gap_) break;
            if (used[col]) continue;
            if (insert_col(col)) {
                used[col] = 1;
                gap_cols_.push_back(col);
            }
        }
        if (static_cast<int>(gap_cols_.size()) != gap_)
            throw DesignError("alt encoder: matrix is rank deficient");
        for (int col = 0; col < n_; ++col)
            if (!used[col]) sys_cols_.push_back(col);
    }

    void index_rows() {
        int tri_count = m_ - gap_;
        std::vector<int> tri_index(n_, -1), gap_index(n_, -1);
        for (int j = 0; j < tri_count; ++j) tri_index[tri_cols_[j]] = j;
        for (int i = 0; i < gap_; ++i) gap_index[gap_cols_[i]] = i;
        tri_entries_.assign(m_, {});
        gap_entries_.assign(m_, {});
        for (int r = 0; r < m_; ++r) {
            for (std::size_t t = 0; t < h_.row_support[r].size(); ++t) {
                if (!(h_.row_values[r][t] & 1)) continue;
                int col = h_.row_support[r][t];
                if (tri_index[col] >= 0) tri_entries_[r].push_back(tri_index[col]);
                if (gap_index[col] >= 0) gap_entries_[r].push_back(gap_index[col]);
            }
            std::sort(tri_entries_[r].begin(), tri_entries_[r].end());
        }
        // the diagonal entry itself never feeds the substitution sums
        for (int j = 0; j < tri_count; ++j) {
            auto& own = tri_entries_[diag_row_[j]];
            own.erase(std::find(own.begin(), own.end(), j));
        }
    }

    void build_schur_inverse() {
        int tri_count = m_ - gap_;
        detail::BitMatrix phi(gap_, gap_);
        for (int i = 0; i < gap_; ++i) {
            // response of the triangular system to unit gap bit i
            BitVec z(tri_count, 0);
            for (int j = 0; j < tri_count; ++j) {
                int acc = 0;
                for (int gi : gap_entries_[diag_row_[j]])
                    if (gi == i) acc ^= 1;
                for (int prev : tri_entries_[diag_row_[j]])
                    if (prev < j) acc ^= z[prev];
                z[j] = static_cast<std::uint8_t>(acc);
            }
            for (int t = 0; t < gap_; ++t) {
                int acc = 0;
                for (int gi : gap_entries_[gap_rows_[t]])
                    if (gi == i) acc ^= 1;
                for (int j : tri_entries_[gap_rows_[t]]) acc ^= z[j];
                if (acc) phi.set(t, i);
            }
        }
        if (!detail::bitmatrix_invert(phi, schur_inv_))
            throw DesignError("alt encoder: parity block is singular");
    }

    SparseIntMatrix h_;
    int n_ = 0, m_ = 0, gap_ = 0;
    std::vector<int> sys_cols_, gap_cols_, tri_cols_, diag_row_, gap_rows_;
    std::vector<int> preferred_gap_cols_;
    std::vector<std::vector<int>> tri_entries_, gap_entries_;  // per row, by block index
    detail::BitMatrix schur_inv_{0, 0};
};

// per-level systematic solver for a whole spec
inline CosetEncoder make_alt_coset_encoder(const LatticeSpec& spec) {
    auto encoders = std::make_shared<std::vector<AltEncoder>>();
    for (const auto& h : spec.h) encoders->emplace_back(h);
    return [encoders](int level, const BitVec& s, const BitVec& u) {
        return (*encoders)[level].encode(s, u);
    };
}

}  // namespace ldpclat
