// Command-line front end: subcommands design / encode / decode / simulate /
// rates / report. Every run resolves a key-value configuration (optional
// --config file, then --set overrides, then named flags), executes one
// pipeline stage, and leaves a replayable run manifest in the output
// directory. Exit codes: 0 success, 2 configuration or usage error,
// 3 construction failure, 4 file I/O error.

#include <deque>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ldpclat/commands.hpp"

namespace {

struct KeyOpt {
    std::string key;
    std::string value;
    CLI::Option* opt = nullptr;
};

struct SubState {
    CLI::App* sub = nullptr;
    std::string config_path;
    std::string out_dir = "out";
    std::vector<std::string> sets;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multilevel LDPC lattice codes: design, encode, decode, simulate, report"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(ldpclat::kToolVersion));

    std::deque<KeyOpt> overrides;
    std::deque<SubState> subs;

    auto add_common = [&](CLI::App* sub) -> SubState& {
        subs.push_back(SubState{sub});
        SubState& st = subs.back();
        sub->add_option("--config", st.config_path, "key = value configuration file");
        sub->add_option("--out-dir", st.out_dir, "artifact directory (default: out)");
        sub->add_option("--set", st.sets, "override one config key as key=value (repeatable)");
        return st;
    };
    auto add_key = [&](CLI::App* sub, const std::string& flag, const std::string& key,
                       const std::string& help) {
        overrides.push_back(KeyOpt{key, "", nullptr});
        KeyOpt& ko = overrides.back();
        ko.opt = sub->add_option(flag, ko.value, help);
    };

    CLI::App* design =
        app.add_subcommand("design", "construct a nested parity-check family bundle");
    add_common(design);
    add_key(design, "--n", "n", "lattice dimension");
    add_key(design, "--m", "m", "per-level parity row counts, densest first (comma list)");
    add_key(design, "--rates", "rates", "per-level code rates, lowest first (comma list)");
    add_key(design, "--dv", "dv", "variable-node degree (default 3)");
    add_key(design, "--gap", "gap", "triangular gap (default 0)");
    add_key(design, "--seed", "seed", "master seed (default 1)");

    CLI::App* encode = app.add_subcommand("encode", "encode message rows into a lattice point");
    add_common(encode);
    add_key(encode, "--bundle", "bundle", "family bundle directory");
    add_key(encode, "--message-file", "message_file", "text file with one 0/1 row per level");

    CLI::App* decode = app.add_subcommand("decode", "multistage-decode one received vector");
    add_common(decode);
    add_key(decode, "--bundle", "bundle", "family bundle directory");
    add_key(decode, "--received-file", "received_file", "text file of real channel outputs");
    add_key(decode, "--sigma", "sigma", "noise standard deviation");
    add_key(decode, "--decoder", "decoder", "coset | lengthened (default coset)");
    add_key(decode, "--max-iterations", "max_iterations", "decoder iteration cap (default 50)");

    CLI::App* simulate =
        app.add_subcommand("simulate", "measure word error rates at one or more points");
    add_common(simulate);
    add_key(simulate, "--bundle", "bundle", "family bundle directory");
    add_key(simulate, "--sigma", "sigma", "noise level(s), comma list");
    add_key(simulate, "--vnr-db", "vnr_db", "operating point(s) in dB, comma list");
    add_key(simulate, "--mode", "mode", "full | genie (default full)");
    add_key(simulate, "--threads", "threads", "worker threads (default 1)");
    add_key(simulate, "--seed", "seed", "master seed (default 1)");
    add_key(simulate, "--max-trials", "max_trials", "trial cap per point");

    CLI::App* rates =
        app.add_subcommand("rates", "optimize two-level rates under an error budget");
    add_common(rates);
    add_key(rates, "--n", "n", "lattice dimension (default 1000)");
    add_key(rates, "--pe-target", "pe_target", "total error budget (default 1e-2)");
    add_key(rates, "--dv", "dv", "variable-node degree (default 3)");
    add_key(rates, "--seed", "seed", "master seed (default 1)");
    add_key(rates, "--threads", "threads", "worker threads (default 1)");

    CLI::App* report = app.add_subcommand("report", "summarize a wer.csv for plotting");
    add_common(report);
    add_key(report, "--csv", "csv", "wer csv produced by simulate");
    add_key(report, "--reference", "reference", "overlay csv with header vnr_db,wer");
    add_key(report, "--confidence", "confidence", "interval confidence (default 0.95)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // help/version exit 0; usage problems exit 2
    }

    try {
        SubState* active = nullptr;
        for (auto& st : subs)
            if (st.sub->parsed()) active = &st;
        if (!active) throw ldpclat::ConfigError("no subcommand given");

        ldpclat::Config cfg;
        if (!active->config_path.empty()) cfg = ldpclat::Config::load(active->config_path);
        for (const auto& item : active->sets) {
            auto eq = item.find('=');
            if (eq == std::string::npos)
                throw ldpclat::ConfigError("--set expects key=value, got `" + item + "`");
            std::string key = ldpclat::detail::trim(item.substr(0, eq));
            std::string value = ldpclat::detail::trim(item.substr(eq + 1));
            if (key.empty()) throw ldpclat::ConfigError("--set expects key=value, got `" + item + "`");
            cfg.set(key, value);
        }
        for (const auto& ko : overrides)
            if (ko.opt->count() > 0) cfg.set(ko.key, ldpclat::detail::trim(ko.value));

        const std::string name = active->sub->get_name();
        if (name == "design")
            ldpclat::cmd_design(cfg, active->out_dir, std::cout);
        else if (name == "encode")
            ldpclat::cmd_encode(cfg, active->out_dir, std::cout);
        else if (name == "decode")
            ldpclat::cmd_decode(cfg, active->out_dir, std::cout);
        else if (name == "simulate")
            ldpclat::cmd_simulate(cfg, active->out_dir, std::cout);
        else if (name == "rates")
            ldpclat::cmd_rates(cfg, active->out_dir, std::cout);
        else if (name == "report")
            ldpclat::cmd_report(cfg, active->out_dir, std::cout);
        return 0;
    } catch (const ldpclat::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const ldpclat::DesignError& e) {
        std::cerr << "design error: " << e.what() << '\n';
        return 3;
    } catch (const ldpclat::IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return 4;
    }
}
