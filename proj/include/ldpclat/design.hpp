#pragma once
// End-to-end construction of a nested parity-check family. The level with the
// fewest checks is grown directly by progressive edge growth in encoder-ready
// triangular form; every denser level below it is obtained by check splitting,
// which guarantees the rows of each level merge back into the level above and
// preserves column weights and the triangular gap. The binary chain is then
// lifted to the integer parity-check family used for encoding and decoding.
//
// Also provides a JSON-lines design report and an on-disk bundle: a key-value
// manifest naming one alist file per parity-check matrix and per coupling
// matrix, so a designed family can be reloaded bit-exactly by any command.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "alist.hpp"
#include "config.hpp"
#include "errors.hpp"
#include "lattice.hpp"
#include "peg.hpp"
#include "rng.hpp"
#include "split.hpp"
#include "tanner.hpp"

namespace ldpclat {

struct DesignConfig {
    int n = 0;
    std::vector<int> m;      // binary row counts per level, non-increasing
    int dv = 3;              // column weight; splits preserve it on every level
    int gap = 0;             // shared triangular gap (clamped to the smallest m)
    std::uint64_t seed = 1;
};

struct LevelReport {
    int level = 0;
    int m = 0;
    int gap = 0;
    int girth = 0;  // tanner girth; kUnreachable when the graph is acyclic
    int rank = 0;
    int attempts = 1;  // constructions tried until the rank condition held
};

struct NestedDesign {
    LatticeSpec spec;
    std::vector<LevelReport> reports;  // one per level, ascending
};

inline NestedDesign build_nested_family(const DesignConfig& cfg) {
    int levels = static_cast<int>(cfg.m.size());
    if (cfg.n < 1) throw DesignError("build_nested_family: dimension must be positive");
    if (levels < 1) throw DesignError("build_nested_family: at least one level required");
    for (int l = 0; l < levels; ++l) {
        if (cfg.m[l] < 1 || cfg.m[l] > cfg.n)
            throw DesignError("build_nested_family: row counts must lie in [1, n]");
        if (l + 1 < levels && cfg.m[l] < cfg.m[l + 1])
            throw DesignError("build_nested_family: row counts must be non-increasing");
    }
    if (cfg.dv < 1) throw DesignError("build_nested_family: column weight must be positive");
    if (cfg.gap < 0) throw DesignError("build_nested_family: gap must be nonnegative");
    int gap = std::min(cfg.gap, cfg.m[levels - 1]);

    std::vector<SparseIntMatrix> binary(levels);
    std::vector<SparseIntMatrix> coupling(levels > 1 ? levels - 1 : 0);
    std::vector<LevelReport> reports(levels);

    PegStats peg_stats;
    binary[levels - 1] =
        peg_construct_triangular(cfg.n, cfg.m[levels - 1], cfg.dv, gap,
                                 derive_seed(cfg.seed, "design-level", levels - 1), &peg_stats);
    reports[levels - 1].attempts = peg_stats.attempts;
    for (int l = levels - 2; l >= 0; --l) {
        SplitResult split = triangular_peg_check_split(
            binary[l + 1], gap, cfg.m[l], derive_seed(cfg.seed, "design-level", l));
        binary[l] = std::move(split.h);
        coupling[l] = std::move(split.f);
        reports[l].attempts = split.attempts;
    }

    NestedDesign design;
    design.spec = lift_family(binary, coupling);
    auto validation = validate_spec(design.spec);
    if (!validation.valid) {
        std::string why = "build_nested_family: constructed family failed validation";
        for (const auto& msg : validation.messages) why += "; " + msg;
        throw DesignError(why);
    }
    for (int l = 0; l < levels; ++l) {
        reports[l].level = l;
        reports[l].m = cfg.m[l];
        reports[l].gap = gap;
        reports[l].girth = girth(binary[l]);
        reports[l].rank = gf2_rank(binary[l]);
    }
    design.reports = std::move(reports);
    return design;
}

// one JSON object per line: each level's construction facts, then a family
// summary line; acyclic graphs report girth 0
inline std::string design_report_json(const DesignConfig& cfg, const NestedDesign& design) {
    std::string out;
    for (const auto& rep : design.reports) {
        nlohmann::json j;
        j["level"] = rep.level;
        j["n"] = cfg.n;
        j["m"] = rep.m;
        j["dv"] = cfg.dv;
        j["gap"] = rep.gap;
        j["girth"] = rep.girth == kUnreachable ? 0 : rep.girth;
        j["rank"] = rep.rank;
        j["seed"] = cfg.seed;
        j["retries"] = rep.attempts;
        out += j.dump() + "\n";
    }
    nlohmann::json family;
    family["n"] = cfg.n;
    family["levels"] = design.spec.levels();
    family["dv"] = cfg.dv;
    family["gap"] = design.reports.empty() ? cfg.gap : design.reports.front().gap;
    family["seed"] = cfg.seed;
    family["rate_total"] = design.spec.rate_total();
    family["log2_volume"] = design.spec.log2_volume();
    out += family.dump() + "\n";
    return out;
}

inline constexpr const char* kBundleManifestName = "manifest.cfg";

struct FamilyBundle {
    LatticeSpec spec;
    int dv = 0;
    int gap = 0;
    std::uint64_t seed = 0;
};

// writes manifest.cfg plus one alist per parity-check and coupling matrix
inline void save_family(const std::filesystem::path& dir, const LatticeSpec& spec, int dv,
                        int gap, std::uint64_t seed) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("save_family: cannot create directory " + dir.string());
    Config manifest;
    manifest.set("n", spec.n);
    manifest.set("levels", spec.levels());
    manifest.set("dv", dv);
    manifest.set("gap", gap);
    manifest.set("seed", seed);
    for (int l = 0; l < spec.levels(); ++l) {
        std::string name = "h" + std::to_string(l) + ".alist";
        write_alist((dir / name).string(), spec.h[l]);
        manifest.set("h" + std::to_string(l), name);
    }
    for (std::size_t l = 0; l < spec.coupling.size(); ++l) {
        std::string name = "f" + std::to_string(l + 1) + ".alist";
        write_alist((dir / name).string(), spec.coupling[l]);
        manifest.set("f" + std::to_string(l + 1), name);
    }
    manifest.save((dir / kBundleManifestName).string());
}

inline FamilyBundle load_family(const std::filesystem::path& dir) {
    Config manifest = Config::load((dir / kBundleManifestName).string());
    FamilyBundle bundle;
    bundle.spec.n = manifest.get_int("n");
    int levels = manifest.get_int("levels");
    if (levels < 1) throw IoError("load_family: manifest names no levels");
    bundle.dv = manifest.get_int("dv", 0);
    bundle.gap = manifest.get_int("gap", 0);
    bundle.seed = manifest.get_uint64("seed", 0);
    for (int l = 0; l < levels; ++l) {
        std::string name = manifest.require("h" + std::to_string(l));
        bundle.spec.h.push_back(read_alist((dir / name).string()));
    }
    bool with_coupling = manifest.has("f1");  // absent = coupling left unverified
    for (int l = 1; l < levels; ++l) {
        std::string key = "f" + std::to_string(l);
        if (manifest.has(key) != with_coupling)
            throw IoError("load_family: coupling matrices must be all present or all absent");
        if (with_coupling)
            bundle.spec.coupling.push_back(read_alist((dir / manifest.require(key)).string()));
    }
    return bundle;
}

inline void save_family(const std::filesystem::path& dir, const DesignConfig& cfg,
                        const NestedDesign& design) {
    int gap = design.reports.empty() ? cfg.gap : design.reports.front().gap;
    save_family(dir, design.spec, cfg.dv, gap, cfg.seed);
}

}  // namespace ldpclat
