#pragma once
// Multistage decoding of a multilevel lattice: level l sees the received word
// shifted by the lower reconstruction and scaled by 2^-l, so its effective
// noise is sigma / 2^l, and its coset syndrome is the same integer functional
// used during encoding. Erroneous lower levels may break the exact
// divisibility that functional relies on; decoding then falls back to the
// floor-shifted bits (the word is already lost, but the decoder must proceed
// deterministically). Above the top coded level the integer part is uncoded
// and resolves by rounding to the nearest multiple of 2^L.

#include <cmath>
#include <cstdint>
#include <vector>

#include "bp.hpp"
#include "errors.hpp"
#include "lattice.hpp"
#include "llr.hpp"

namespace ldpclat {

struct MultistageResult {
    std::vector<BitVec> levels;    // hard decisions per level
    std::vector<char> converged;   // per-level bp convergence
    IntVec composed;               // sum over l of 2^l levels[l]
    bool all_converged = false;
};

inline std::vector<CosetBpDecoder> make_level_decoders(const LatticeSpec& spec) {
    std::vector<CosetBpDecoder> decoders;
    decoders.reserve(spec.h.size());
    for (const auto& h : spec.h) decoders.emplace_back(h);
    return decoders;
}

inline std::vector<LengthenedBpDecoder> make_lengthened_decoders(const LatticeSpec& spec) {
    std::vector<LengthenedBpDecoder> decoders;
    decoders.reserve(spec.h.size());
    for (const auto& h : spec.h) decoders.emplace_back(h);
    return decoders;
}

// syndrome of level `level` given the integer reconstruction of lower levels;
// tolerates broken divisibility by taking the floor-shifted bit
inline BitVec decode_syndrome(const LatticeSpec& spec, int level, const IntVec& acc) {
    const auto& h = spec.h[level];
    BitVec s(h.rows);
    for (int r = 0; r < h.rows; ++r) {
        std::int64_t t = 0;
        for (std::size_t e = 0; e < h.row_support[r].size(); ++e)
            t += h.row_values[r][e] * acc[h.row_support[r][e]];
        s[r] = static_cast<std::uint8_t>((t >> level) & 1);
    }
    return s;
}

// Decoder can be CosetBpDecoder or LengthenedBpDecoder (identical results)
template <class Decoder>
MultistageResult multistage_decode(const LatticeSpec& spec, const std::vector<Decoder>& decoders,
                                   const std::vector<double>& received, double sigma,
                                   const BpOptions& opts = {}) {
    if (static_cast<int>(received.size()) != spec.n)
        throw ConfigError("multistage_decode: received length mismatch");
    if (static_cast<int>(decoders.size()) != spec.levels())
        throw ConfigError("multistage_decode: one decoder per level required");
    MultistageResult res;
    res.composed.assign(spec.n, 0);
    res.all_converged = true;
    std::vector<double> shifted(spec.n);
    for (int l = 0; l < spec.levels(); ++l) {
        double scale = std::ldexp(1.0, -l);  // 2^-l
        for (int j = 0; j < spec.n; ++j)
            shifted[j] = (received[j] - static_cast<double>(res.composed[j])) * scale;
        BitVec s = decode_syndrome(spec, l, res.composed);
        BpResult bp = decoders[l].decode(s, channel_llrs(shifted, sigma * scale), opts);
        res.converged.push_back(bp.converged ? 1 : 0);
        res.all_converged = res.all_converged && bp.converged;
        for (int j = 0; j < spec.n; ++j)
            res.composed[j] += static_cast<std::int64_t>(bp.bits[j]) << l;
        res.levels.push_back(std::move(bp.bits));
    }
    return res;
}

// per-level decoding without error propagation: level l is handed the true
// lower-level words instead of its own decisions, so each level's error rate
// is measured in isolation. `composed` still stacks the decisions so the
// result mirrors multistage_decode's shape.
template <class Decoder>
MultistageResult multistage_genie_decode(const LatticeSpec& spec,
                                         const std::vector<Decoder>& decoders,
                                         const std::vector<double>& received, double sigma,
                                         const std::vector<BitVec>& true_levels,
                                         const BpOptions& opts = {}) {
    if (static_cast<int>(received.size()) != spec.n)
        throw ConfigError("multistage_genie_decode: received length mismatch");
    if (static_cast<int>(decoders.size()) != spec.levels())
        throw ConfigError("multistage_genie_decode: one decoder per level required");
    if (static_cast<int>(true_levels.size()) != spec.levels())
        throw ConfigError("multistage_genie_decode: one true word per level required");
    for (const auto& w : true_levels)
        if (static_cast<int>(w.size()) != spec.n)
            throw ConfigError("multistage_genie_decode: true word length mismatch");
    MultistageResult res;
    res.composed.assign(spec.n, 0);
    res.all_converged = true;
    IntVec acc(spec.n, 0);  // composed from the true words
    std::vector<double> shifted(spec.n);
    for (int l = 0; l < spec.levels(); ++l) {
        double scale = std::ldexp(1.0, -l);  // 2^-l
        for (int j = 0; j < spec.n; ++j)
            shifted[j] = (received[j] - static_cast<double>(acc[j])) * scale;
        BitVec s = decode_syndrome(spec, l, acc);
        BpResult bp = decoders[l].decode(s, channel_llrs(shifted, sigma * scale), opts);
        res.converged.push_back(bp.converged ? 1 : 0);
        res.all_converged = res.all_converged && bp.converged;
        for (int j = 0; j < spec.n; ++j) {
            res.composed[j] += static_cast<std::int64_t>(bp.bits[j]) << l;
            acc[j] += static_cast<std::int64_t>(true_levels[l][j]) << l;
        }
        res.levels.push_back(std::move(bp.bits));
    }
    return res;
}

// nearest multiple of 2^levels to each residual component, ties to even
inline IntVec round_uncoded(const std::vector<double>& received, const IntVec& composed,
                            int levels) {
    IntVec z(received.size());
    double scale = std::ldexp(1.0, -levels);
    for (std::size_t j = 0; j < received.size(); ++j)
        z[j] = static_cast<std::int64_t>(
            std::nearbyint((received[j] - static_cast<double>(composed[j])) * scale));
    return z;
}

// full lattice point estimate: coded levels by multistage bp, integer part by
// rounding
template <class Decoder>
IntVec lattice_decode(const LatticeSpec& spec, const std::vector<Decoder>& decoders,
                      const std::vector<double>& received, double sigma,
                      const BpOptions& opts = {}) {
    MultistageResult ms = multistage_decode(spec, decoders, received, sigma, opts);
    IntVec z = round_uncoded(received, ms.composed, spec.levels());
    IntVec out(spec.n);
    for (int j = 0; j < spec.n; ++j) out[j] = ms.composed[j] + (z[j] << spec.levels());
    return out;
}

}  // namespace ldpclat
