// SPDX-License-Identifier: Apache-2.0
//
// risd2d - RIS-assisted D2D underlay simulator and optimizer
// ------------------------------------------------------------------------

#ifndef RISD2D_CONFIG_HPP
#define RISD2D_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "risd2d/orchestrator.hpp"

namespace risd2d {

enum class ExperimentKind
{
    Single,
    SweepD2d,
    SweepElements,
    SweepBits,
    SweepSinr,
    SweepPos,
    Cdf,
    Convergence,
};

std::string_view kind_name(ExperimentKind k);
std::optional<ExperimentKind> parse_kind(std::string_view name);

class ConfigError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Flat experiment configuration. Every field maps to one key of the
// key = value text format; see README for the key list.
struct ExperimentConfig
{
    ExperimentKind kind = ExperimentKind::Single;
    std::vector<double> values; // swept axis; empty for single/cdf/convergence
    std::vector<double> epsilons{1e-2, 1e-3, 1e-4};

    int d2d = 3;
    int n_per_side = 4;
    int bits = 3;
    double gamma_min_db = 5.0;
    double pos = 0.0;

    double fc_ghz = 28.0;
    double alpha = 2.0;
    double beta = 4.0;
    double nakagami_m = 3.0;
    double nakagami_omega = 1.0 / 3.0;
    double p_max_dbm = 23.0;
    double bandwidth_mhz = 1.0;
    double noise_psd_dbm_per_mhz = -134.0;

    double d_ye = 0.03;
    double d_ze = 0.03;
    double max_pair_distance = 10.0;
    double cell_distance = 10.0;

    double epsilon = 1e-3;       // outer loop
    double power_epsilon = 1e-3; // power allocation loop
    int max_outer = 100;
    int max_inner = 500;
    int max_passes = 10;
    bool until_fixpoint = true;
    Quantizer quantizer = Quantizer::Literal;
    DualUpdate dual_update = DualUpdate::Ascent;
    bool strict_paper = false;

    int trials = 100;
    std::uint64_t base_seed = 1;
    std::vector<SchemeId> schemes{SchemeId::Proposed, SchemeId::Mpt, SchemeId::Rps,
                                  SchemeId::WithoutRis};
    std::string out = "results.csv";
    bool include_infeasible = true;
    bool record_timing = false;
    bool trace = false; // also write per-trial outer/inner trace CSVs
    int threads = 0; // 0: hardware concurrency

    // Throws ConfigError naming the offending field.
    void validate() const;
};

// Built-in defaults for one experiment kind (figure setups).
ExperimentConfig defaults_for(ExperimentKind kind);

// Applies one key = value assignment. Unknown keys and bad values throw
// ConfigError. Keys starting with "manifest." are accepted and ignored.
void apply_setting(ExperimentConfig &cfg, std::string_view key, std::string_view value);

// Applies every assignment in a key = value text ('#' starts a comment).
void apply_text(ExperimentConfig &cfg, std::string_view text);

// Reads a config file. If it names an experiment kind, starts from that kind's
// defaults, otherwise from `fallback`'s defaults.
ExperimentConfig load_config_file(const std::string &path,
                                  ExperimentKind fallback = ExperimentKind::Single);

// Canonical text: every key in fixed order, full double precision.
std::string to_text(const ExperimentConfig &cfg);

// FNV-1a over the canonical text with the output path left out.
std::uint64_t config_hash(const ExperimentConfig &cfg);

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL);

// Solver settings derived from the config (strict_paper applied).
OptimizerSettings optimizer_settings(const ExperimentConfig &cfg);

} // namespace risd2d

#endif
