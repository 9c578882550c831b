#pragma once
// Monte-Carlo word-error-rate measurement. The zero lattice point is
// transmitted (the coset structure makes performance word-independent), white
// Gaussian noise is added, and multistage decoding reports per-level and
// whole-word error counts. Every trial draws its noise from a counter-indexed
// stream keyed by (seed, trial index), so results are bit-identical no matter
// how trials are distributed over threads, and runs are replayable. Trials
// proceed in fixed-size rounds; the stop rule is evaluated only at round
// boundaries, which keeps the stopping decision deterministic too.
//
// The error of the uncoded integer level above the top coded level is not
// simulated by default: its exact probability is analytic and folded into
// wer_total. A simulated-uncoded mode measures it from the raw noise as a
// cross-check. The received vector is deliberately left unreduced mod 2^L:
// the coded levels' likelihoods have period 2, so reduction would not change
// them, while the uncoded residual keeps its true magnitude.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "errors.hpp"
#include "lattice.hpp"
#include "multistage.hpp"
#include "rng.hpp"
#include "stats.hpp"

namespace ldpclat {

// full: lower decisions feed upper levels (error propagation as deployed)
// genie: each level decodes against the true lower levels (isolated curves)
enum class SimMode { full, genie };

struct SimConfig {
    double sigma = 0.0;
    long long max_trials = 1000000;
    long long target_errors = 100;       // stop once this many word errors
    long long rare_target_errors = 50;   // suffices when the wer is already rare
    double rare_wer = 1e-6;
    int threads = 1;
    long long round_trials = 1024;       // stop rule granularity
    std::uint64_t seed = 1;
    SimMode mode = SimMode::full;
    bool simulate_uncoded = false;       // measure the integer level too
    BpOptions bp{};
};

struct WerPoint {
    double sigma = 0.0;
    double vnr_db = 0.0;
    long long trials = 0;
    std::vector<long long> errors_level;
    long long errors_coded = 0;
    long long errors_uncoded = 0;        // measured only when simulate_uncoded
    std::vector<double> wer_level;
    double wer_coded = 0.0;
    double wer_uncoded = 0.0;            // measured only when simulate_uncoded
    double pe_uncoded = 0.0;             // analytic, always
    double wer_total = 0.0;
    double wall_seconds = 0.0;
    bool low_confidence = false;         // trial budget ran out before the stop rule
};

namespace detail {

struct TrialCounts {
    std::vector<long long> level;
    long long coded = 0;
    long long uncoded = 0;

    explicit TrialCounts(int levels) : level(levels, 0) {}

    void add(const TrialCounts& o) {
        for (std::size_t l = 0; l < level.size(); ++l) level[l] += o.level[l];
        coded += o.coded;
        uncoded += o.uncoded;
    }
};

template <class Decoder>
void run_trials(const LatticeSpec& spec, const std::vector<Decoder>& decoders,
                const SimConfig& cfg, long long first, long long last, TrialCounts& counts) {
    std::vector<double> r(spec.n);
    std::vector<BitVec> zero_levels;
    if (cfg.mode == SimMode::genie)
        zero_levels.assign(spec.levels(), BitVec(spec.n, 0));
    for (long long t = first; t < last; ++t) {
        Rng rng(derive_seed(cfg.seed, "sim-trial", static_cast<std::uint64_t>(t)));
        for (int j = 0; j < spec.n; ++j) r[j] = cfg.sigma * rng.next_gaussian();
        MultistageResult res =
            cfg.mode == SimMode::genie
                ? multistage_genie_decode(spec, decoders, r, cfg.sigma, zero_levels, cfg.bp)
                : multistage_decode(spec, decoders, r, cfg.sigma, cfg.bp);
        bool any = false;
        for (int l = 0; l < spec.levels(); ++l) {
            bool wrong = false;
            for (std::uint8_t b : res.levels[l]) wrong = wrong || (b != 0);
            if (wrong) ++counts.level[l];
            any = any || wrong;
        }
        if (any) ++counts.coded;
        if (cfg.simulate_uncoded) {
            IntVec z = round_uncoded(r, IntVec(spec.n, 0), spec.levels());
            bool miss = false;
            for (std::int64_t v : z) miss = miss || (v != 0);
            if (miss) ++counts.uncoded;
        }
    }
}

}  // namespace detail

template <class Decoder>
WerPoint simulate_point(const LatticeSpec& spec, const std::vector<Decoder>& decoders,
                        const SimConfig& cfg) {
    if (!(cfg.sigma > 0.0)) throw ConfigError("simulate_point: sigma must be positive");
    if (cfg.max_trials < 1 || cfg.round_trials < 1)
        throw ConfigError("simulate_point: trial counts must be positive");
    if (cfg.threads < 1) throw ConfigError("simulate_point: threads must be positive");
    if (static_cast<int>(decoders.size()) != spec.levels())
        throw ConfigError("simulate_point: one decoder per level required");
    auto t0 = std::chrono::steady_clock::now();
    detail::TrialCounts total(spec.levels());
    long long done = 0;
    bool stopped = false;
    while (done < cfg.max_trials) {
        long long round = std::min(cfg.round_trials, cfg.max_trials - done);
        int workers = static_cast<int>(std::min<long long>(cfg.threads, round));
        if (workers <= 1) {
            detail::run_trials(spec, decoders, cfg, done, done + round, total);
        } else {
            std::vector<detail::TrialCounts> parts(workers, detail::TrialCounts(spec.levels()));
            std::vector<std::thread> pool;
            long long chunk = (round + workers - 1) / workers;
            for (int w = 0; w < workers; ++w) {
                long long first = done + w * chunk;
                long long last = std::min(done + round, first + chunk);
                if (first >= last) break;
                pool.emplace_back([&, first, last, w] {
                    detail::run_trials(spec, decoders, cfg, first, last, parts[w]);
                });
            }
            for (auto& th : pool) th.join();
            for (const auto& p : parts) total.add(p);
        }
        done += round;
        double wer_est = static_cast<double>(total.coded) / static_cast<double>(done);
        long long needed = wer_est < cfg.rare_wer ? cfg.rare_target_errors : cfg.target_errors;
        if (total.coded >= needed) {
            stopped = true;
            break;
        }
    }
    WerPoint point;
    point.sigma = cfg.sigma;
    point.vnr_db = vnr_db(spec, cfg.sigma);
    point.trials = done;
    point.errors_level = total.level;
    point.errors_coded = total.coded;
    point.errors_uncoded = total.uncoded;
    point.wer_level.resize(spec.levels());
    for (int l = 0; l < spec.levels(); ++l)
        point.wer_level[l] = static_cast<double>(total.level[l]) / static_cast<double>(done);
    point.wer_coded = static_cast<double>(total.coded) / static_cast<double>(done);
    point.wer_uncoded = static_cast<double>(total.uncoded) / static_cast<double>(done);
    point.pe_uncoded = pe_uncoded(std::ldexp(1.0, spec.levels()), spec.n, cfg.sigma);
    double uncoded = cfg.simulate_uncoded ? point.wer_uncoded : point.pe_uncoded;
    point.wer_total = 1.0 - (1.0 - point.wer_coded) * (1.0 - uncoded);
    point.low_confidence = !stopped;
    point.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return point;
}

// flags consecutive points whose measured coded WER increases with VNR by
// more than the 95% intervals allow (quieter channel, significantly worse)
inline std::vector<std::string> sweep_monotonicity_warnings(const std::vector<WerPoint>& points) {
    std::vector<std::string> warnings;
    for (std::size_t i = 1; i < points.size(); ++i) {
        const WerPoint& a = points[i - 1];
        const WerPoint& b = points[i];
        if (b.vnr_db <= a.vnr_db) continue;
        auto ca = clopper_pearson(a.errors_coded, a.trials);
        auto cb = clopper_pearson(b.errors_coded, b.trials);
        if (cb.first > ca.second) {
            std::ostringstream msg;
            msg << "wer_coded rises from " << a.wer_coded << " at " << a.vnr_db << " dB to "
                << b.wer_coded << " at " << b.vnr_db << " dB beyond the 95% intervals";
            warnings.push_back(msg.str());
        }
    }
    return warnings;
}

// one point per VNR (dB); each point gets its own derived seed. When given a
// warning sink, reports statistically significant monotonicity violations.
template <class Decoder>
std::vector<WerPoint> sweep(const LatticeSpec& spec, const std::vector<Decoder>& decoders,
                            const SimConfig& base, const std::vector<double>& vnr_dbs,
                            std::vector<std::string>* warnings = nullptr) {
    std::vector<WerPoint> points;
    for (std::size_t i = 0; i < vnr_dbs.size(); ++i) {
        SimConfig cfg = base;
        cfg.sigma = sigma_for_vnr_db(spec.levels(), spec.rate_total(), vnr_dbs[i]);
        cfg.seed = derive_seed(base.seed, "sweep-point", static_cast<std::uint64_t>(i));
        points.push_back(simulate_point(spec, decoders, cfg));
    }
    if (warnings) {
        auto w = sweep_monotonicity_warnings(points);
        warnings->insert(warnings->end(), w.begin(), w.end());
    }
    return points;
}

namespace detail {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

}  // namespace detail

inline std::string csv_header(int levels) {
    std::string h = "sigma,vnr_db,trials";
    for (int l = 0; l < levels; ++l) h += ",errors_l" + std::to_string(l);
    for (int l = 0; l < levels; ++l) h += ",wer_l" + std::to_string(l);
    h += ",wer_coded,pe_uncoded,wer_total";
    return h;
}

inline void write_csv(std::ostream& os, const std::vector<WerPoint>& points) {
    if (points.empty()) throw IoError("write_csv: no points");
    int levels = static_cast<int>(points.front().errors_level.size());
    os << csv_header(levels) << '\n';
    for (const auto& p : points) {
        if (static_cast<int>(p.errors_level.size()) != levels)
            throw IoError("write_csv: inconsistent level counts");
        os << detail::format_double(p.sigma) << ',' << detail::format_double(p.vnr_db) << ','
           << p.trials;
        for (long long e : p.errors_level) os << ',' << e;
        for (double w : p.wer_level) os << ',' << detail::format_double(w);
        os << ',' << detail::format_double(p.wer_coded) << ','
           << detail::format_double(p.pe_uncoded) << ',' << detail::format_double(p.wer_total)
           << '\n';
    }
}

inline std::vector<WerPoint> read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw IoError("read_csv: empty input");
    auto split = [](const std::string& s) {
        std::vector<std::string> out;
        std::string cur;
        for (char c : s) {
            if (c == ',') {
                out.push_back(cur);
                cur.clear();
            } else if (c != '\r') {
                cur += c;
            }
        }
        out.push_back(cur);
        return out;
    };
    auto head = split(line);
    int levels = 0;
    while (3 + levels < static_cast<int>(head.size()) &&
           head[3 + levels] == "errors_l" + std::to_string(levels))
        ++levels;
    if (levels == 0 || head != split(csv_header(levels)))
        throw IoError("read_csv: unrecognized header");
    std::vector<WerPoint> points;
    while (std::getline(is, line)) {
        if (line.empty() || line == "\r") continue;
        auto cells = split(line);
        if (static_cast<int>(cells.size()) != 6 + 2 * levels)
            throw IoError("read_csv: wrong column count on a data row");
        try {
            WerPoint p;
            int c = 0;
            p.sigma = std::stod(cells[c++]);
            p.vnr_db = std::stod(cells[c++]);
            p.trials = std::stoll(cells[c++]);
            for (int l = 0; l < levels; ++l) p.errors_level.push_back(std::stoll(cells[c++]));
            for (int l = 0; l < levels; ++l) p.wer_level.push_back(std::stod(cells[c++]));
            p.wer_coded = std::stod(cells[c++]);
            p.pe_uncoded = std::stod(cells[c++]);
            p.wer_total = std::stod(cells[c++]);
            p.errors_coded = static_cast<long long>(std::llround(p.wer_coded * p.trials));
            points.push_back(std::move(p));
        } catch (const std::exception&) {
            throw IoError("read_csv: malformed numeric cell");
        }
    }
    return points;
}

}  // namespace ldpclat
