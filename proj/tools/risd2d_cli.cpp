// SPDX-License-Identifier: Apache-2.0
//
// risd2d - RIS-assisted D2D underlay simulator and optimizer
// ------------------------------------------------------------------------
//
// Command-line front end: one subcommand per experiment kind.

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "risd2d/experiment.hpp"
#include "risd2d/scene.hpp"

using namespace risd2d;

namespace {

struct CommonFlags
{
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::optional<int> threads;
    std::string out;
    std::string schemes;
    bool strict_paper = false;
    bool trace = false;
    bool timing = false;
    bool quiet = false;
    std::vector<std::string> sets;
};

void add_common(CLI::App *cmd, CommonFlags &f)
{
    cmd->add_option("--config", f.config, "key = value config file (e.g. a run manifest)");
    cmd->add_option("--seed", f.seed, "base seed; trial t uses seed ^ t");
    cmd->add_option("--trials", f.trials, "trials per sweep point");
    cmd->add_option("--out", f.out, "output CSV path");
    cmd->add_option("--schemes", f.schemes, "comma list of proposed,mpt,rps,without_ris");
    cmd->add_option("--threads", f.threads, "worker threads (0: all cores)");
    cmd->add_option("--set", f.sets, "override any config key, KEY=VALUE (repeatable)");
    cmd->add_flag("--strict-paper", f.strict_paper,
                  "literal dual update, single-sweep local search, literal quantizer");
    cmd->add_flag("--trace", f.trace, "also write outer and power-allocation trace CSVs");
    cmd->add_flag("--timing", f.timing, "record wall_time_ms (breaks byte-identical reruns)");
    cmd->add_flag("-q,--quiet", f.quiet, "do not print the summary table");
}

ExperimentConfig build_config(std::optional<ExperimentKind> kind, const CommonFlags &f)
{
    const ExperimentKind fallback = kind.value_or(ExperimentKind::Single);
    ExperimentConfig cfg = f.config.empty() ? defaults_for(fallback)
                                            : load_config_file(f.config, fallback);
    if (kind && cfg.kind != *kind)
        throw ConfigError("config file is for experiment '" + std::string(kind_name(cfg.kind)) +
                          "', use 'run --config' or the matching subcommand");

    for (const auto &s : f.sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("--set expects KEY=VALUE, got '" + s + "'");
        apply_setting(cfg, s.substr(0, eq), s.substr(eq + 1));
    }
    if (f.seed)
        cfg.base_seed = *f.seed;
    if (f.trials)
        cfg.trials = *f.trials;
    if (f.threads)
        cfg.threads = *f.threads;
    if (!f.out.empty())
        cfg.out = f.out;
    if (!f.schemes.empty())
        apply_setting(cfg, "schemes", f.schemes);
    if (f.strict_paper)
        cfg.strict_paper = true;
    if (f.trace)
        cfg.trace = true;
    if (f.timing)
        cfg.record_timing = true;
    cfg.validate();
    return cfg;
}

void print_summary(const ExperimentConfig &cfg, const RunReport &report)
{
    std::printf("%-10s %-12s %12s %6s\n", "point", "scheme", "sum_rate", "n");
    for (const auto &row : report.summary) {
        const std::string point =
            cfg.values.empty() ? "-" : std::to_string(cfg.values[row.point]).substr(0, 8);
        std::printf("%-10s %-12s %12.4f %6d\n", point.c_str(),
                    std::string(scheme_name(row.scheme)).c_str(), row.mean_sum_rate, row.count);
    }
}

int run(const ExperimentConfig &cfg, bool quiet)
{
    const RunReport report = run_experiment(cfg);
    if (!quiet) {
        print_summary(cfg, report);
        std::printf("%zu row(s)\n", report.rows);
        for (const auto &f : report.files)
            std::printf("wrote %s\n", f.c_str());
    }
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"risd2d: RIS-assisted D2D underlay simulator and optimizer"};
    app.set_version_flag("--version", RISD2D_VERSION);
    app.require_subcommand(1);

    const std::vector<std::pair<std::string, std::optional<ExperimentKind>>> commands = {
        {"run", std::nullopt},
        {"sweep-d2d", ExperimentKind::SweepD2d},
        {"sweep-elements", ExperimentKind::SweepElements},
        {"sweep-bits", ExperimentKind::SweepBits},
        {"sweep-sinr", ExperimentKind::SweepSinr},
        {"sweep-pos", ExperimentKind::SweepPos},
        {"cdf", ExperimentKind::Cdf},
        {"convergence", ExperimentKind::Convergence},
    };
    const std::map<std::string, std::string> help = {
        {"run", "run the experiment named by --config (default: single)"},
        {"sweep-d2d", "sum rate vs number of D2D links"},
        {"sweep-elements", "sum rate vs RIS side length N"},
        {"sweep-bits", "sum rate vs phase quantization bits"},
        {"sweep-sinr", "sum rate vs minimum SINR target"},
        {"sweep-pos", "sum rate vs RIS position along y"},
        {"cdf", "per-link SINR distribution"},
        {"convergence", "outer-loop traces for several stop thresholds"},
    };

    CommonFlags flags;
    std::vector<std::pair<CLI::App *, std::optional<ExperimentKind>>> subs;
    for (const auto &[name, kind] : commands) {
        CLI::App *cmd = app.add_subcommand(name, help.at(name));
        add_common(cmd, flags);
        subs.emplace_back(cmd, kind);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e);
    }

    try {
        for (const auto &[cmd, kind] : subs)
            if (cmd->parsed())
                return run(build_config(kind, flags), flags.quiet);
    } catch (const ConfigError &e) {
        std::fprintf(stderr, "ConfigError: %s\n", e.what());
        return 2;
    } catch (const OutputError &e) {
        std::fprintf(stderr, "OutputError: %s\n", e.what());
        return 3;
    } catch (const ScenarioError &e) {
        std::fprintf(stderr, "ScenarioError: %s\n", e.what());
        return 4;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "Error: %s\n", e.what());
        return 1;
    }
    return 1;
}
