#pragma once
// Command implementations behind the CLI. Each command takes a resolved
// key-value configuration, performs one pipeline stage, writes its artifacts
// under an output directory, and records a replayable run manifest (run.cfg)
// holding every key the run actually used. Errors are typed so the entry
// point can map them to exit codes: ConfigError (2, bad usage or input
// content), DesignError (3, construction failure), IoError (4, file access).

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "alt.hpp"
#include "config.hpp"
#include "design.hpp"
#include "errors.hpp"
#include "lattice.hpp"
#include "multistage.hpp"
#include "rate_design.hpp"
#include "sim.hpp"

namespace ldpclat {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kRunManifestName = "run.cfg";

namespace detail {

inline void ensure_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string());
}

// resolved config plus run metadata; rerunning with `--config run.cfg`
// reproduces the artifacts bit-exactly (run.* keys are informational)
inline void write_run_manifest(const std::filesystem::path& dir, const std::string& command,
                               Config resolved, double wall_seconds) {
    resolved.set("run.command", command);
    resolved.set("run.version", std::string(kToolVersion));
    resolved.set("run.wall_seconds", wall_seconds);
    resolved.save((dir / kRunManifestName).string());
}

inline double elapsed_seconds(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline FamilyBundle load_bundle_checked(const std::string& dir) {
    FamilyBundle bundle = load_family(dir);
    auto report = validate_spec(bundle.spec);
    if (!report.valid) {
        std::string why = "bundle " + dir + " failed validation";
        for (const auto& msg : report.messages) why += "; " + msg;
        throw DesignError(why);
    }
    return bundle;
}

inline std::string bits_to_string(const BitVec& bits) {
    std::string s(bits.size(), '0');
    for (std::size_t i = 0; i < bits.size(); ++i) s[i] = bits[i] ? '1' : '0';
    return s;
}

inline BitVec bits_from_string(const std::string& s, const std::string& where) {
    BitVec bits(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '0' && s[i] != '1')
            throw ConfigError(where + ": expected a row of 0/1 characters, got `" + s + "`");
        bits[i] = static_cast<std::uint8_t>(s[i] - '0');
    }
    return bits;
}

// nonempty trimmed lines; '#' comments allowed
inline std::vector<std::string> read_content_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::string body = trim(line);
        if (!body.empty()) lines.push_back(body);
    }
    return lines;
}

// whitespace-separated reals; parse failures name the 1-based line
inline std::vector<double> read_real_vector(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::vector<double> values;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream row(line);
        std::string token;
        while (row >> token) {
            errno = 0;
            char* end = nullptr;
            double v = std::strtod(token.c_str(), &end);
            if (end != token.c_str() + token.size() || errno == ERANGE)
                throw ConfigError(path + ": line " + std::to_string(line_no) +
                                  ": not a number: `" + token + "`");
            values.push_back(v);
        }
    }
    return values;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << content;
    if (!out) throw IoError("failed writing " + path.string());
}

inline std::string join_ints(const IntVec& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(v[i]);
    }
    return s;
}

inline BpOptions bp_options_from(const Config& cfg, Config& resolved) {
    BpOptions bp;
    bp.max_iterations = cfg.get_int("max_iterations", bp.max_iterations);
    bp.early_exit = cfg.get_bool("early_exit", bp.early_exit);
    if (bp.max_iterations < 0) throw ConfigError("key `max_iterations`: must be nonnegative");
    resolved.set("max_iterations", bp.max_iterations);
    resolved.set("early_exit", bp.early_exit);
    return bp;
}

}  // namespace detail

// builds the nested family and writes the bundle (manifest.cfg + alist files),
// the JSON-lines design report, and the run manifest into out_dir
inline void cmd_design(const Config& cfg, const std::filesystem::path& out_dir,
                       std::ostream& log) {
    auto t0 = std::chrono::steady_clock::now();
    DesignConfig design_cfg;
    design_cfg.n = cfg.get_int("n");
    if (cfg.has("m") && cfg.has("rates"))
        throw ConfigError("give either `m` or `rates`, not both");
    if (cfg.has("m")) {
        design_cfg.m = cfg.get_int_list("m");
    } else if (cfg.has("rates")) {
        for (double rate : cfg.get_double_list("rates")) {
            if (!(rate >= 0.0) || !(rate < 1.0))
                throw ConfigError("key `rates`: each rate must lie in [0, 1)");
            auto m = static_cast<int>(std::llround(design_cfg.n * (1.0 - rate)));
            design_cfg.m.push_back(std::max(1, std::min(design_cfg.n, m)));
        }
    } else {
        throw ConfigError("missing required key: m (or rates)");
    }
    if (cfg.has("L") && cfg.get_int("L") != static_cast<int>(design_cfg.m.size()))
        throw ConfigError("key `L`: does not match the number of per-level row counts");
    design_cfg.dv = cfg.get_int("dv", design_cfg.dv);
    design_cfg.gap = cfg.get_int("gap", design_cfg.gap);
    design_cfg.seed = cfg.get_uint64("seed", design_cfg.seed);

    NestedDesign design = build_nested_family(design_cfg);
    detail::ensure_dir(out_dir);
    save_family(out_dir, design_cfg, design);
    detail::write_text_file(out_dir / "design_report.jsonl",
                            design_report_json(design_cfg, design));

    Config resolved;
    resolved.set("n", design_cfg.n);
    std::string m_list;
    for (std::size_t i = 0; i < design_cfg.m.size(); ++i)
        m_list += (i ? "," : "") + std::to_string(design_cfg.m[i]);
    resolved.set("m", m_list);
    resolved.set("dv", design_cfg.dv);
    resolved.set("gap", design_cfg.gap);
    resolved.set("seed", design_cfg.seed);
    detail::write_run_manifest(out_dir, "design", resolved, detail::elapsed_seconds(t0));

    for (const auto& rep : design.reports)
        log << "level " << rep.level << ": m=" << rep.m << " gap=" << rep.gap
            << " girth=" << (rep.girth == kUnreachable ? 0 : rep.girth) << " rank=" << rep.rank
            << " attempts=" << rep.attempts << '\n';
    log << "family: n=" << design_cfg.n << " levels=" << design.spec.levels()
        << " rate_total=" << design.spec.rate_total() << " -> " << out_dir.string() << '\n';
}

// encodes one message file (L rows of 0/1, row l of length n - m_l) through
// the sequential chain; writes the composed codeword, the per-level words,
// and the per-level syndromes actually used
inline void cmd_encode(const Config& cfg, const std::filesystem::path& out_dir,
                       std::ostream& log) {
    auto t0 = std::chrono::steady_clock::now();
    std::string bundle_dir = cfg.require("bundle");
    std::string message_path = cfg.require("message_file");
    FamilyBundle bundle = detail::load_bundle_checked(bundle_dir);
    const LatticeSpec& spec = bundle.spec;

    auto rows = detail::read_content_lines(message_path);
    if (static_cast<int>(rows.size()) != spec.levels())
        throw ConfigError(message_path + ": expected " + std::to_string(spec.levels()) +
                          " message rows, got " + std::to_string(rows.size()));
    std::vector<BitVec> messages;
    for (int l = 0; l < spec.levels(); ++l) {
        BitVec bits = detail::bits_from_string(
            rows[l], message_path + ": row " + std::to_string(l));
        if (static_cast<int>(bits.size()) != spec.k(l))
            throw ConfigError(message_path + ": row " + std::to_string(l) + " must have " +
                              std::to_string(spec.k(l)) + " bits, got " +
                              std::to_string(bits.size()));
        messages.push_back(std::move(bits));
    }

    CosetEncoder encoder = make_alt_coset_encoder(spec);
    LatticeCodeword word = sequential_encode(spec, encoder, messages);

    detail::ensure_dir(out_dir);
    detail::write_text_file(out_dir / "codeword.txt", detail::join_ints(word.composed) + "\n");
    std::string levels_text, syndromes_text;
    for (int l = 0; l < spec.levels(); ++l) {
        levels_text += detail::bits_to_string(word.levels[l]) + "\n";
        syndromes_text += detail::bits_to_string(word.syndromes[l]) + "\n";
    }
    detail::write_text_file(out_dir / "levels.txt", levels_text);
    detail::write_text_file(out_dir / "syndromes.txt", syndromes_text);

    Config resolved;
    resolved.set("bundle", bundle_dir);
    resolved.set("message_file", message_path);
    detail::write_run_manifest(out_dir, "encode", resolved, detail::elapsed_seconds(t0));
    log << "encoded " << spec.levels() << " levels over n=" << spec.n << " -> "
        << (out_dir / "codeword.txt").string() << '\n';
}

// decodes one received vector (n whitespace-separated reals): multistage
// decisions per level, rounded integer part, composed lattice-point estimate,
// and a membership flag; written as a key-value decision file
inline void cmd_decode(const Config& cfg, const std::filesystem::path& out_dir,
                       std::ostream& log) {
    auto t0 = std::chrono::steady_clock::now();
    std::string bundle_dir = cfg.require("bundle");
    std::string received_path = cfg.require("received_file");
    double sigma = cfg.get_double("sigma");
    if (!(sigma > 0.0)) throw ConfigError("key `sigma`: must be positive");
    std::string decoder_kind = cfg.get_string("decoder", "coset");
    if (decoder_kind != "coset" && decoder_kind != "lengthened")
        throw ConfigError("key `decoder`: expected coset or lengthened, got `" + decoder_kind +
                          "`");
    FamilyBundle bundle = detail::load_bundle_checked(bundle_dir);
    const LatticeSpec& spec = bundle.spec;

    std::vector<double> received = detail::read_real_vector(received_path);
    if (static_cast<int>(received.size()) != spec.n)
        throw ConfigError(received_path + ": expected " + std::to_string(spec.n) +
                          " values, got " + std::to_string(received.size()));

    Config resolved;
    BpOptions bp = detail::bp_options_from(cfg, resolved);
    MultistageResult res;
    if (decoder_kind == "lengthened") {
        auto decoders = make_lengthened_decoders(spec);
        res = multistage_decode(spec, decoders, received, sigma, bp);
    } else {
        auto decoders = make_level_decoders(spec);
        res = multistage_decode(spec, decoders, received, sigma, bp);
    }
    IntVec z = round_uncoded(received, res.composed, spec.levels());
    IntVec point(spec.n);
    for (int j = 0; j < spec.n; ++j)
        point[j] = res.composed[j] + (z[j] << spec.levels());
    bool member = is_lattice_point(spec, point);

    Config decision;
    for (int l = 0; l < spec.levels(); ++l)
        decision.set("level" + std::to_string(l), detail::bits_to_string(res.levels[l]));
    std::string flags;
    for (std::size_t l = 0; l < res.converged.size(); ++l)
        flags += (l ? " " : "") + std::string(res.converged[l] ? "1" : "0");
    decision.set("converged", flags);
    decision.set("all_converged", res.all_converged);
    decision.set("composed", detail::join_ints(res.composed));
    decision.set("lattice_point", detail::join_ints(point));
    decision.set("member", member);
    detail::ensure_dir(out_dir);
    decision.save((out_dir / "decision.cfg").string());

    resolved.set("bundle", bundle_dir);
    resolved.set("received_file", received_path);
    resolved.set("sigma", sigma);
    resolved.set("decoder", decoder_kind);
    detail::write_run_manifest(out_dir, "decode", resolved, detail::elapsed_seconds(t0));
    log << "decoded n=" << spec.n << " at sigma=" << sigma
        << (res.all_converged ? " (all levels converged)" : " (some level did not converge)")
        << ", member=" << (member ? "true" : "false") << " -> "
        << (out_dir / "decision.cfg").string() << '\n';
}

namespace detail {

inline SimConfig sim_config_from(const Config& cfg, Config& resolved) {
    SimConfig sim;
    sim.max_trials = cfg.get_int64("max_trials", sim.max_trials);
    sim.target_errors = cfg.get_int64("target_errors", sim.target_errors);
    sim.rare_target_errors = cfg.get_int64("rare_target_errors", sim.rare_target_errors);
    sim.rare_wer = cfg.get_double("rare_wer", sim.rare_wer);
    sim.threads = cfg.get_int("threads", sim.threads);
    sim.round_trials = cfg.get_int64("round_trials", sim.round_trials);
    sim.seed = cfg.get_uint64("seed", sim.seed);
    sim.simulate_uncoded = cfg.get_bool("simulate_uncoded", sim.simulate_uncoded);
    std::string mode = cfg.get_string("mode", "full");
    if (mode == "full") {
        sim.mode = SimMode::full;
    } else if (mode == "genie") {
        sim.mode = SimMode::genie;
    } else {
        throw ConfigError("key `mode`: expected full or genie, got `" + mode + "`");
    }
    sim.bp = bp_options_from(cfg, resolved);
    resolved.set("max_trials", sim.max_trials);
    resolved.set("target_errors", sim.target_errors);
    resolved.set("rare_target_errors", sim.rare_target_errors);
    resolved.set("rare_wer", sim.rare_wer);
    resolved.set("threads", sim.threads);
    resolved.set("round_trials", sim.round_trials);
    resolved.set("seed", sim.seed);
    resolved.set("simulate_uncoded", sim.simulate_uncoded);
    resolved.set("mode", mode);
    return sim;
}

}  // namespace detail

// Monte-Carlo word-error-rate measurement at one or more operating points
// (`sigma` or `vnr_db`, single value or comma list); writes wer.csv and the
// run manifest, and logs one summary line per point plus any statistically
// significant monotonicity violations
inline void cmd_simulate(const Config& cfg, const std::filesystem::path& out_dir,
                         std::ostream& log) {
    auto t0 = std::chrono::steady_clock::now();
    std::string bundle_dir = cfg.require("bundle");
    FamilyBundle bundle = detail::load_bundle_checked(bundle_dir);
    const LatticeSpec& spec = bundle.spec;

    if (cfg.has("sigma") == cfg.has("vnr_db"))
        throw ConfigError("give exactly one of `sigma` or `vnr_db` (value or comma list)");

    Config resolved;
    SimConfig sim = detail::sim_config_from(cfg, resolved);
    auto decoders = make_level_decoders(spec);
    std::vector<WerPoint> points;
    if (cfg.has("vnr_db")) {
        points = sweep(spec, decoders, sim, cfg.get_double_list("vnr_db"));
    } else {
        // exact sigmas, same per-point seed derivation as a vnr sweep
        auto sigmas = cfg.get_double_list("sigma");
        for (std::size_t i = 0; i < sigmas.size(); ++i) {
            if (!(sigmas[i] > 0.0)) throw ConfigError("key `sigma`: must be positive");
            SimConfig point_cfg = sim;
            point_cfg.sigma = sigmas[i];
            point_cfg.seed = derive_seed(sim.seed, "sweep-point", static_cast<std::uint64_t>(i));
            points.push_back(simulate_point(spec, decoders, point_cfg));
        }
    }
    std::vector<std::string> warnings = sweep_monotonicity_warnings(points);

    detail::ensure_dir(out_dir);
    std::ofstream csv(out_dir / "wer.csv");
    if (!csv) throw IoError("cannot write " + (out_dir / "wer.csv").string());
    write_csv(csv, points);
    if (!csv) throw IoError("failed writing " + (out_dir / "wer.csv").string());

    resolved.set("bundle", bundle_dir);
    if (cfg.has("sigma"))
        resolved.set("sigma", cfg.require("sigma"));
    else
        resolved.set("vnr_db", cfg.require("vnr_db"));
    detail::write_run_manifest(out_dir, "simulate", resolved, detail::elapsed_seconds(t0));

    for (const auto& p : points) {
        log << "vnr=" << p.vnr_db << " dB sigma=" << p.sigma << " trials=" << p.trials
            << " wer_coded=" << p.wer_coded << " wer_total=" << p.wer_total
            << (p.low_confidence ? " (low confidence: trial budget exhausted)" : "") << '\n';
    }
    for (const auto& w : warnings) log << "warning: " << w << '\n';
    log << "wrote " << points.size() << " point(s) -> " << (out_dir / "wer.csv").string() << '\n';
}

// two-level rate optimizer: measures component-code error rates on a small
// grid, fits them, and maximizes total rate plus log2(sigma) under the error
// budget; writes rates.json with the chosen design and the evidence
inline void cmd_rates(const Config& cfg, const std::filesystem::path& out_dir,
                      std::ostream& log) {
    auto t0 = std::chrono::steady_clock::now();
    RateDesignConfig rd;
    rd.n = cfg.get_int("n", rd.n);
    rd.pe_target = cfg.get_double("pe_target", rd.pe_target);
    rd.dv = cfg.get_int("dv", rd.dv);
    rd.seed = cfg.get_uint64("seed", rd.seed);
    rd.threads = cfg.get_int("threads", rd.threads);
    if (cfg.has("m0_grid")) rd.m0_grid = cfg.get_int_list("m0_grid");
    if (cfg.has("m1_grid")) rd.m1_grid = cfg.get_int_list("m1_grid");
    if (cfg.has("sigma_grid")) rd.sigma_grid = cfg.get_double_list("sigma_grid");
    rd.grid_max_trials = cfg.get_int64("grid_max_trials", rd.grid_max_trials);
    rd.grid_target_errors = cfg.get_int64("grid_target_errors", rd.grid_target_errors);
    rd.sigma_step = cfg.get_double("sigma_step", rd.sigma_step);
    rd.split_step = cfg.get_double("split_step", rd.split_step);

    RateDesignResult result = design_rates(rd);

    nlohmann::json j;
    j["n"] = rd.n;
    j["pe_target"] = rd.pe_target;
    j["dv"] = rd.dv;
    j["seed"] = rd.seed;
    j["m0"] = result.m0;
    j["m1"] = result.m1;
    j["rate0"] = result.rate0;
    j["rate1"] = result.rate1;
    j["sigma"] = result.sigma;
    j["vnr_db"] = result.vnr_db;
    j["split"] = result.split;
    auto fit_json = [](const AffineFit& fit) {
        return nlohmann::json{{"a", fit.a}, {"b_rate", fit.b_rate}, {"c_sigma", fit.c_sigma}};
    };
    j["fit0"] = fit_json(result.fit0);
    j["fit1"] = fit_json(result.fit1);
    auto grid_json = [](const std::vector<GridPoint>& grid) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& g : grid)
            rows.push_back({{"m", g.m},
                            {"rate", g.rate},
                            {"sigma", g.sigma},
                            {"wer", g.wer},
                            {"trials", g.trials},
                            {"errors", g.errors}});
        return rows;
    };
    j["grid0"] = grid_json(result.grid0);
    j["grid1"] = grid_json(result.grid1);
    detail::ensure_dir(out_dir);
    detail::write_text_file(out_dir / "rates.json", j.dump(2) + "\n");

    Config resolved;
    resolved.set("n", rd.n);
    resolved.set("pe_target", rd.pe_target);
    resolved.set("dv", rd.dv);
    resolved.set("seed", rd.seed);
    resolved.set("threads", rd.threads);
    auto list_of_ints = [](const std::vector<int>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
        return s;
    };
    std::string sigma_list;
    for (std::size_t i = 0; i < rd.sigma_grid.size(); ++i) {
        std::ostringstream os;
        os.precision(17);
        os << rd.sigma_grid[i];
        sigma_list += (i ? "," : "") + os.str();
    }
    resolved.set("m0_grid", list_of_ints(rd.m0_grid));
    resolved.set("m1_grid", list_of_ints(rd.m1_grid));
    resolved.set("sigma_grid", sigma_list);
    resolved.set("grid_max_trials", rd.grid_max_trials);
    resolved.set("grid_target_errors", rd.grid_target_errors);
    resolved.set("sigma_step", rd.sigma_step);
    resolved.set("split_step", rd.split_step);
    detail::write_run_manifest(out_dir, "rates", resolved, detail::elapsed_seconds(t0));

    log << "rates: R0=" << result.rate0 << " (m0=" << result.m0 << ") R1=" << result.rate1
        << " (m1=" << result.m1 << ") sigma=" << result.sigma << " vnr=" << result.vnr_db
        << " dB -> " << (out_dir / "rates.json").string() << '\n';
}

namespace detail {

struct ReferencePoint {
    double vnr_db = 0.0;
    double wer = 0.0;
};

// two-column overlay data: header "vnr_db,wer", one point per row
inline std::vector<ReferencePoint> read_reference_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw IoError(path + ": empty reference file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line) != "vnr_db,wer")
        throw IoError(path + ": expected header `vnr_db,wer`, got `" + line + "`");
    std::vector<ReferencePoint> points;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw IoError(path + ": line " + std::to_string(line_no) + ": expected two columns");
        try {
            ReferencePoint p;
            p.vnr_db = std::stod(line.substr(0, comma));
            p.wer = std::stod(line.substr(comma + 1));
            points.push_back(p);
        } catch (const std::exception&) {
            throw IoError(path + ": line " + std::to_string(line_no) + ": malformed number");
        }
    }
    return points;
}

}  // namespace detail

// turns a wer.csv into gnuplot-ready blocks (measured curve with 95% binomial
// intervals, then an optional reference overlay) and logs an aligned table
inline void cmd_report(const Config& cfg, const std::filesystem::path& out_dir,
                       std::ostream& log) {
    auto t0 = std::chrono::steady_clock::now();
    std::string csv_path = cfg.require("csv");
    double confidence = cfg.get_double("confidence", 0.95);
    if (!(confidence > 0.0) || !(confidence < 1.0))
        throw ConfigError("key `confidence`: must lie in (0, 1)");
    std::ifstream in(csv_path);
    if (!in) throw IoError("cannot open " + csv_path);
    std::vector<WerPoint> points = read_csv(in);

    std::vector<detail::ReferencePoint> reference;
    if (cfg.has("reference")) reference = detail::read_reference_csv(cfg.require("reference"));

    std::ostringstream dat;
    dat << "# measured: vnr_db sigma trials wer_coded ci_lo ci_hi pe_uncoded wer_total\n";
    std::ostringstream table;
    table << std::left << std::setw(15) << "vnr_db" << std::setw(15) << "sigma" << std::setw(10)
          << "trials" << std::setw(15) << "wer_coded" << std::setw(15) << "ci_lo"
          << std::setw(15) << "ci_hi" << std::setw(15) << "pe_uncoded" << std::setw(15)
          << "wer_total" << '\n';
    for (const auto& p : points) {
        auto ci = clopper_pearson(p.errors_coded, p.trials, confidence);
        dat << detail::format_double(p.vnr_db) << ' ' << detail::format_double(p.sigma) << ' '
            << p.trials << ' ' << detail::format_double(p.wer_coded) << ' '
            << detail::format_double(ci.first) << ' ' << detail::format_double(ci.second) << ' '
            << detail::format_double(p.pe_uncoded) << ' ' << detail::format_double(p.wer_total)
            << '\n';
        table << std::left << std::setw(15) << detail::format_double(p.vnr_db) << std::setw(15)
              << detail::format_double(p.sigma) << std::setw(10) << p.trials << std::setw(15)
              << detail::format_double(p.wer_coded) << std::setw(15)
              << detail::format_double(ci.first) << std::setw(15)
              << detail::format_double(ci.second) << std::setw(15)
              << detail::format_double(p.pe_uncoded) << std::setw(15)
              << detail::format_double(p.wer_total) << '\n';
    }
    if (!reference.empty()) {
        dat << "\n\n# reference: vnr_db wer\n";
        for (const auto& r : reference)
            dat << detail::format_double(r.vnr_db) << ' ' << detail::format_double(r.wer) << '\n';
    }
    detail::ensure_dir(out_dir);
    detail::write_text_file(out_dir / "report.dat", dat.str());

    Config resolved;
    resolved.set("csv", csv_path);
    resolved.set("confidence", confidence);
    if (cfg.has("reference")) resolved.set("reference", cfg.require("reference"));
    detail::write_run_manifest(out_dir, "report", resolved, detail::elapsed_seconds(t0));
    log << table.str();
    log << "wrote " << (out_dir / "report.dat").string() << '\n';
}

}  // namespace ldpclat
