#pragma once
// Belief-propagation decoding of a binary coset code {c : phi(H) c^T = s}.
// Flooding schedule, sum-product check rule with the coset sign (1 - 2 s_i)
// folded into each check's outgoing messages, leave-one-out tanh products via
// forward/backward partials, messages clamped to +-kLlrMax. Hard-decision ties
// (posterior exactly zero) resolve to bit 0. Early exit once the hard decision
// satisfies the syndrome.
//
// The lengthened variant adjoins one degree-one variable per check, pinned to
// +-kLlrMax by its intrinsic, and decodes the zero syndrome on [I | H]. Since
// tanh(kLlrMax / 2) is exactly 1.0 in double precision, the pinned variables
// inject exactly the coset signs and the two variants agree bit for bit.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "errors.hpp"
#include "llr.hpp"
#include "sparse.hpp"

namespace ldpclat {

struct BpOptions {
    int max_iterations = 50;
    bool early_exit = true;
};

struct BpResult {
    BitVec bits;
    std::vector<double> posterior;
    bool converged = false;
    int iterations = 0;
};

class CosetBpDecoder {
public:
    explicit CosetBpDecoder(const SparseIntMatrix& h) : n_(h.cols), m_(h.rows) {
        row_edges_.resize(m_);
        var_edges_.resize(n_);
        for (int r = 0; r < m_; ++r)
            for (std::size_t t = 0; t < h.row_support[r].size(); ++t) {
                if (!(h.row_values[r][t] & 1)) continue;
                int v = h.row_support[r][t];
                row_edges_[r].push_back({v, edge_count_});
                var_edges_[v].push_back(edge_count_);
                ++edge_count_;
            }
    }

    int n() const { return n_; }
    int m() const { return m_; }

    BpResult decode(const BitVec& syndrome, const std::vector<double>& intrinsic,
                    const BpOptions& opts = {}) const {
        if (static_cast<int>(syndrome.size()) != m_)
            throw ConfigError("bp decode: syndrome length mismatch");
        if (static_cast<int>(intrinsic.size()) != n_)
            throw ConfigError("bp decode: intrinsic length mismatch");
        BpResult res;
        res.posterior.assign(intrinsic.begin(), intrinsic.end());
        harden(res);
        if (opts.early_exit && satisfies(syndrome, res.bits)) {
            res.converged = true;
            return res;
        }
        std::vector<double> v2c(edge_count_), c2v(edge_count_, 0.0), scratch;
        for (int v = 0; v < n_; ++v)
            for (int e : var_edges_[v]) v2c[e] = clamp_llr(intrinsic[v]);
        for (int iter = 1; iter <= opts.max_iterations; ++iter) {
            // check pass: leave-one-out products of tanh(msg / 2) per row
            for (int r = 0; r < m_; ++r) {
                const auto& edges = row_edges_[r];
                int deg = static_cast<int>(edges.size());
                if (deg == 0) continue;
                double sign = syndrome[r] ? -1.0 : 1.0;
                scratch.resize(deg);
                double back = 1.0;
                for (int t = deg - 1; t >= 0; --t) {
                    scratch[t] = back;  // product of factors after position t
                    back *= std::tanh(0.5 * v2c[edges[t].edge]);
                }
                double front = 1.0;
                for (int t = 0; t < deg; ++t) {
                    double loo = front * scratch[t];
                    c2v[edges[t].edge] = clamp_llr(sign * 2.0 * std::atanh(loo));
                    front *= std::tanh(0.5 * v2c[edges[t].edge]);
                }
            }
            // variable pass: posteriors and extrinsic replies
            for (int v = 0; v < n_; ++v) {
                double total = intrinsic[v];
                for (int e : var_edges_[v]) total += c2v[e];
                res.posterior[v] = total;
                for (int e : var_edges_[v]) v2c[e] = clamp_llr(total - c2v[e]);
            }
            res.iterations = iter;
            harden(res);
            if (opts.early_exit && satisfies(syndrome, res.bits)) {
                res.converged = true;
                return res;
            }
        }
        res.converged = satisfies(syndrome, res.bits);
        return res;
    }

    bool satisfies(const BitVec& syndrome, const BitVec& bits) const {
        for (int r = 0; r < m_; ++r) {
            int acc = 0;
            for (const auto& ed : row_edges_[r]) acc ^= bits[ed.var];
            if (acc != syndrome[r]) return false;
        }
        return true;
    }

private:
    struct Edge {
        int var;
        int edge;
    };

    void harden(BpResult& res) const {
        res.bits.resize(n_);
        for (int v = 0; v < n_; ++v) res.bits[v] = res.posterior[v] < 0.0 ? 1 : 0;
    }

    int n_ = 0, m_ = 0, edge_count_ = 0;
    std::vector<std::vector<Edge>> row_edges_;
    std::vector<std::vector<int>> var_edges_;
};

// decodes on [I | H] with syndrome bits carried by pinned degree-one variables
class LengthenedBpDecoder {
public:
    explicit LengthenedBpDecoder(const SparseIntMatrix& h)
        : n_(h.cols), m_(h.rows), core_(lengthen(h)) {}

    BpResult decode(const BitVec& syndrome, const std::vector<double>& intrinsic,
                    const BpOptions& opts = {}) const {
        if (static_cast<int>(syndrome.size()) != m_)
            throw ConfigError("bp decode: syndrome length mismatch");
        if (static_cast<int>(intrinsic.size()) != n_)
            throw ConfigError("bp decode: intrinsic length mismatch");
        std::vector<double> full(m_ + n_);
        for (int i = 0; i < m_; ++i) full[i] = syndrome[i] ? -kLlrMax : kLlrMax;
        std::copy(intrinsic.begin(), intrinsic.end(), full.begin() + m_);
        BpResult inner = core_.decode(BitVec(m_, 0), full, opts);
        BpResult res;
        res.bits.assign(inner.bits.begin() + m_, inner.bits.end());
        res.posterior.assign(inner.posterior.begin() + m_, inner.posterior.end());
        res.converged = inner.converged;
        res.iterations = inner.iterations;
        return res;
    }

private:
    static SparseIntMatrix lengthen(const SparseIntMatrix& h) {
        std::vector<std::tuple<int, int, std::int64_t>> tr;
        for (int r = 0; r < h.rows; ++r) {
            tr.emplace_back(r, r, 1);
            for (std::size_t t = 0; t < h.row_support[r].size(); ++t)
                if (h.row_values[r][t] & 1) tr.emplace_back(r, h.rows + h.row_support[r][t], 1);
        }
        return SparseIntMatrix::from_triplets(h.rows, h.rows + h.cols, tr, 2);
    }

    int n_ = 0, m_ = 0;
    CosetBpDecoder core_;
};

inline BpResult decode_coset(const SparseIntMatrix& h, const BitVec& syndrome,
                             const std::vector<double>& intrinsic, const BpOptions& opts = {}) {
    return CosetBpDecoder(h).decode(syndrome, intrinsic, opts);
}

inline BpResult decode_lengthened(const SparseIntMatrix& h, const BitVec& syndrome,
                                  const std::vector<double>& intrinsic,
                                  const BpOptions& opts = {}) {
    return LengthenedBpDecoder(h).decode(syndrome, intrinsic, opts);
}

}  // namespace ldpclat
