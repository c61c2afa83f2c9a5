// SPDX-License-Identifier: Apache-2.0
//
// risd2d - RIS-assisted D2D underlay simulator and optimizer
// ------------------------------------------------------------------------

#ifndef RISD2D_EXPERIMENT_HPP
#define RISD2D_EXPERIMENT_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "risd2d/config.hpp"

namespace risd2d {

inline constexpr int kSchemaVersion = 1;

inline constexpr std::string_view kResultHeader =
    "experiment,scheme,trial_seed,D,N,e,gamma_min_db,pos,sum_rate_b2,min_sinr_db,outer_iters,"
    "inner_iters_total,phase_evals,feasible,converged,wall_time_ms";
inline constexpr std::string_view kSinrHeader = "scheme,trial_seed,link,sinr_db,feasible";
inline constexpr std::string_view kCdfPointsHeader = "scheme,sinr_db,cdf";
inline constexpr std::string_view kConvergenceHeader =
    "epsilon,trial_seed,outer_iter,sum_rate_b2,n_outer,converged";
inline constexpr std::string_view kOuterTraceHeader =
    "point,trial_seed,scheme,outer_iter,sum_rate_b2,inner_iters,passes";
inline constexpr std::string_view kPowerTraceHeader =
    "point,trial_seed,scheme,inner_iter,sum_rate_b2,accepted,delta,mu";

class OutputError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct ResultRow
{
    std::string experiment;
    SchemeId scheme = SchemeId::Proposed;
    std::uint64_t trial_seed = 0;
    int d2d = 0;
    int n_per_side = 0;
    int bits = 0;
    double gamma_min_db = 0.0;
    double pos = 0.0;
    double sum_rate = 0.0;
    double min_sinr_db = 0.0;
    int outer_iters = 0;
    long inner_iters_total = 0;
    long phase_evals = 0;
    bool feasible = false;
    bool converged = false;
    double wall_time_ms = 0.0;

    // not part of the CSV
    int point = 0;
    int trial = 0;
    std::vector<double> sinr_db;
    std::vector<OuterTraceRow> outer_trace;
    std::vector<PowerTraceRow> power_trace;
};

struct ConvergenceRow
{
    double epsilon = 0.0;
    std::uint64_t trial_seed = 0;
    int outer_iter = 0;
    double sum_rate = 0.0;
    int n_outer = 0;
    bool converged = false;
};

struct SummaryRow
{
    int point = 0;
    SchemeId scheme = SchemeId::Proposed;
    double mean_sum_rate = 0.0;
    int count = 0;
};

struct RunReport
{
    std::vector<std::string> files; // main CSV first, manifest last
    std::size_t rows = 0;
    std::vector<SummaryRow> summary; // empty for convergence runs
};

std::uint64_t trial_seed(std::uint64_t base_seed, int trial);

// Config with the swept axis set to point `index` (identity for unswept kinds).
ExperimentConfig point_config(const ExperimentConfig &cfg, std::size_t index);
std::size_t point_count(const ExperimentConfig &cfg);

// All result rows, sorted by (point, trial, scheme order in cfg.schemes).
std::vector<ResultRow> run_trials(const ExperimentConfig &cfg);

std::vector<ConvergenceRow> run_convergence_rows(const ExperimentConfig &cfg);

std::string format_result_csv(const std::vector<ResultRow> &rows);
std::string format_sinr_csv(const std::vector<ResultRow> &rows);
std::string format_cdf_points_csv(const std::vector<ResultRow> &rows, bool include_infeasible);
std::string format_convergence_csv(const std::vector<ConvergenceRow> &rows);

// Mean sum rate per (point, scheme).
std::vector<SummaryRow> summarize(const std::vector<ResultRow> &rows, bool include_infeasible);

std::string manifest_text(const ExperimentConfig &cfg, std::size_t rows,
                          std::string_view csv_bytes);

// "<dir>/<stem><suffix>" for an output path "<dir>/<stem>.<ext>".
std::string sibling_path(const std::string &out, std::string_view suffix);

// Runs the configured experiment and writes the CSV(s) and the manifest.
RunReport run_experiment(const ExperimentConfig &cfg);

} // namespace risd2d

#endif
