// SPDX-License-Identifier: Apache-2.0
//
// risd2d - RIS-assisted D2D underlay simulator and optimizer
// ------------------------------------------------------------------------

#include "risd2d/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <limits>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "risd2d/channel.hpp"
#include "risd2d/rng.hpp"
#include "risd2d/scene.hpp"
#include "risd2d/units.hpp"

#ifndef RISD2D_VERSION
#define RISD2D_VERSION "unknown"
#endif

namespace risd2d {

namespace {

std::string num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string hex64(std::uint64_t v)
{
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

const char *flag(bool b)
{
    return b ? "1" : "0";
}

ScenarioParams scenario_params(const ExperimentConfig &c)
{
    ScenarioParams sp;
    sp.d2d_count = c.d2d;
    sp.ris.n_per_side = c.n_per_side;
    sp.ris.d_ye = c.d_ye;
    sp.ris.d_ze = c.d_ze;
    sp.ris.y_offset = c.pos;
    sp.max_pair_distance = c.max_pair_distance;
    sp.cell_distance = c.cell_distance;
    return sp;
}

ChannelParams channel_params(const ExperimentConfig &c)
{
    ChannelParams cp = make_channel_params(c.fc_ghz, c.bandwidth_mhz, c.noise_psd_dbm_per_mhz);
    cp.alpha = c.alpha;
    cp.rician_beta = c.beta;
    cp.nakagami_m = c.nakagami_m;
    cp.nakagami_omega = c.nakagami_omega;
    cp.validate();
    return cp;
}

int worker_count(const ExperimentConfig &cfg, std::size_t jobs)
{
    int n = cfg.threads > 0 ? cfg.threads : static_cast<int>(std::thread::hardware_concurrency());
    n = std::max(n, 1);
    return static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(n), jobs));
}

// Runs fn(job) for job in [0, jobs) on a small pool. The first exception wins.
template <typename Fn>
void parallel_for(std::size_t jobs, int workers, Fn fn)
{
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto body = [&] {
        for (;;) {
            const std::size_t job = next.fetch_add(1);
            if (job >= jobs)
                return;
            try {
                fn(job);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                next = jobs;
                return;
            }
        }
    };
    if (workers <= 1) {
        body();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(body);
        for (auto &t : pool)
            t.join();
    }
    if (error)
        std::rethrow_exception(error);
}

struct Trial
{
    ChannelRealization real;
    PhaseConfig theta0;
    std::uint64_t seed = 0;
};

Trial prepare_trial(const ExperimentConfig &pc, const OptimizerSettings &os, int trial)
{
    Trial t;
    t.seed = trial_seed(pc.base_seed, trial);
    const Scenario scn = sample_scenario(scenario_params(pc), t.seed);
    t.real = realize_channels(scn, channel_params(pc), t.seed);
    Rng phase_rng = make_stream(t.seed, Stream::PhaseInit);
    t.theta0 = PhaseConfig::random(pc.n_per_side, os.bits, phase_rng, os.quantizer);
    return t;
}

void write_file(const std::string &path, std::string_view bytes)
{
    const std::filesystem::path p(path);
    std::error_code ec;
    if (p.has_parent_path())
        std::filesystem::create_directories(p.parent_path(), ec);
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out)
        throw OutputError("cannot write output file '" + path + "'");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.close();
    if (!out)
        throw OutputError("failed writing output file '" + path + "'");
}

std::string outer_trace_csv(const std::vector<ResultRow> &rows)
{
    std::string s(kOuterTraceHeader);
    s += '\n';
    for (const auto &r : rows)
        for (const auto &t : r.outer_trace)
            s += std::to_string(r.point) + ',' + std::to_string(r.trial_seed) + ',' +
                 std::string(scheme_name(r.scheme)) + ',' + std::to_string(t.iter) + ',' +
                 num(t.sum_rate) + ',' + std::to_string(t.inner_iters) + ',' +
                 std::to_string(t.passes) + '\n';
    return s;
}

std::string power_trace_csv(const std::vector<ResultRow> &rows)
{
    std::string s(kPowerTraceHeader);
    s += '\n';
    for (const auto &r : rows)
        for (const auto &t : r.power_trace)
            s += std::to_string(r.point) + ',' + std::to_string(r.trial_seed) + ',' +
                 std::string(scheme_name(r.scheme)) + ',' + std::to_string(t.iter) + ',' +
                 num(t.sum_rate) + ',' + flag(t.accepted) + ',' + num(t.delta) + ',' +
                 num(t.mu) + '\n';
    return s;
}

} // namespace

std::uint64_t trial_seed(std::uint64_t base_seed, int trial)
{
    return base_seed ^ static_cast<std::uint64_t>(trial);
}

std::size_t point_count(const ExperimentConfig &cfg)
{
    return cfg.values.empty() ? 1 : cfg.values.size();
}

ExperimentConfig point_config(const ExperimentConfig &cfg, std::size_t index)
{
    ExperimentConfig c = cfg;
    if (cfg.values.empty())
        return c;
    if (index >= cfg.values.size())
        throw std::out_of_range("point_config: sweep index out of range");
    const double v = cfg.values[index];
    switch (cfg.kind) {
    case ExperimentKind::SweepD2d:
        c.d2d = static_cast<int>(v);
        break;
    case ExperimentKind::SweepElements:
        c.n_per_side = static_cast<int>(v);
        break;
    case ExperimentKind::SweepBits:
        c.bits = static_cast<int>(v);
        break;
    case ExperimentKind::SweepSinr:
        c.gamma_min_db = v;
        break;
    case ExperimentKind::SweepPos:
        c.pos = v;
        break;
    default:
        break;
    }
    c.values.clear();
    return c;
}

std::vector<ResultRow> run_trials(const ExperimentConfig &cfg)
{
    cfg.validate();
    const std::size_t points = point_count(cfg);
    const std::size_t trials = static_cast<std::size_t>(cfg.trials);
    const std::size_t per_job = cfg.schemes.size();

    std::vector<ExperimentConfig> point_cfgs;
    std::vector<OptimizerSettings> point_settings;
    for (std::size_t i = 0; i < points; ++i) {
        point_cfgs.push_back(point_config(cfg, i));
        point_settings.push_back(optimizer_settings(point_cfgs.back()));
    }

    std::vector<ResultRow> rows(points * trials * per_job);
    const std::size_t jobs = points * trials;
    parallel_for(jobs, worker_count(cfg, jobs), [&](std::size_t job) {
        const std::size_t point = job / trials;
        const int trial = static_cast<int>(job % trials);
        const ExperimentConfig &pc = point_cfgs[point];
        const OptimizerSettings &os = point_settings[point];
        const Trial t = prepare_trial(pc, os, trial);

        for (std::size_t s = 0; s < per_job; ++s) {
            const auto start = std::chrono::steady_clock::now();
            Solution sol = run_scheme(cfg.schemes[s], t.real, os, t.theta0);
            const auto stop = std::chrono::steady_clock::now();

            ResultRow &r = rows[job * per_job + s];
            r.experiment = std::string(kind_name(cfg.kind));
            r.scheme = cfg.schemes[s];
            r.trial_seed = t.seed;
            r.d2d = pc.d2d;
            r.n_per_side = pc.n_per_side;
            r.bits = pc.bits;
            r.gamma_min_db = pc.gamma_min_db;
            r.pos = pc.pos;
            r.sum_rate = sol.metrics.sum_rate;
            r.min_sinr_db = std::numeric_limits<double>::infinity();
            for (double g : sol.metrics.sinr) {
                r.sinr_db.push_back(linear_to_db(g));
                r.min_sinr_db = std::min(r.min_sinr_db, r.sinr_db.back());
            }
            r.outer_iters = sol.outer_iters;
            r.inner_iters_total = sol.inner_iters_total;
            r.phase_evals = sol.phase_evals;
            r.feasible = sol.feasible;
            r.converged = sol.converged;
            r.wall_time_ms = cfg.record_timing
                                 ? std::chrono::duration<double, std::milli>(stop - start).count()
                                 : 0.0;
            r.point = static_cast<int>(point);
            r.trial = trial;
            if (cfg.trace) {
                r.outer_trace = std::move(sol.trace);
                r.power_trace = std::move(sol.last_power_trace);
            }
        }
    });
    return rows;
}

std::vector<ConvergenceRow> run_convergence_rows(const ExperimentConfig &cfg)
{
    cfg.validate();
    const ExperimentConfig pc = point_config(cfg, 0);
    const std::size_t trials = static_cast<std::size_t>(cfg.trials);
    const std::size_t eps_count = cfg.epsilons.size();

    std::vector<std::vector<ConvergenceRow>> per_job(trials * eps_count);
    parallel_for(trials, worker_count(cfg, trials), [&](std::size_t job) {
        OptimizerSettings os = optimizer_settings(pc);
        const Trial t = prepare_trial(pc, os, static_cast<int>(job));
        for (std::size_t e = 0; e < eps_count; ++e) {
            os.epsilon = cfg.epsilons[e];
            const Solution sol = maximize_sum_rate(t.real, os, t.theta0);
            auto &out = per_job[e * trials + job];
            for (const auto &row : sol.trace)
                out.push_back({cfg.epsilons[e], t.seed, row.iter, row.sum_rate, sol.outer_iters,
                               sol.converged});
        }
    });

    std::vector<ConvergenceRow> rows;
    for (auto &chunk : per_job)
        rows.insert(rows.end(), chunk.begin(), chunk.end());
    return rows;
}

std::string format_result_csv(const std::vector<ResultRow> &rows)
{
    std::string s(kResultHeader);
    s += '\n';
    for (const auto &r : rows) {
        s += r.experiment + ',' + std::string(scheme_name(r.scheme)) + ',' +
             std::to_string(r.trial_seed) + ',' + std::to_string(r.d2d) + ',' +
             std::to_string(r.n_per_side) + ',' + std::to_string(r.bits) + ',' +
             num(r.gamma_min_db) + ',' + num(r.pos) + ',' + num(r.sum_rate) + ',' +
             num(r.min_sinr_db) + ',' + std::to_string(r.outer_iters) + ',' +
             std::to_string(r.inner_iters_total) + ',' + std::to_string(r.phase_evals) + ',' +
             flag(r.feasible) + ',' + flag(r.converged) + ',' + num(r.wall_time_ms) + '\n';
    }
    return s;
}

std::string format_sinr_csv(const std::vector<ResultRow> &rows)
{
    std::string s(kSinrHeader);
    s += '\n';
    for (const auto &r : rows)
        for (std::size_t k = 0; k < r.sinr_db.size(); ++k)
            s += std::string(scheme_name(r.scheme)) + ',' + std::to_string(r.trial_seed) + ',' +
                 std::to_string(k + 1) + ',' + num(r.sinr_db[k]) + ',' + flag(r.feasible) + '\n';
    return s;
}

std::string format_cdf_points_csv(const std::vector<ResultRow> &rows, bool include_infeasible)
{
    std::map<SchemeId, std::vector<double>> samples;
    std::vector<SchemeId> order;
    for (const auto &r : rows) {
        if (!samples.count(r.scheme))
            order.push_back(r.scheme);
        auto &v = samples[r.scheme];
        if (include_infeasible || r.feasible)
            v.insert(v.end(), r.sinr_db.begin(), r.sinr_db.end());
    }
    std::string s(kCdfPointsHeader);
    s += '\n';
    for (SchemeId id : order) {
        auto v = samples[id];
        std::sort(v.begin(), v.end());
        for (std::size_t k = 0; k < v.size(); ++k) {
            // emit only the last sample of a run of ties
            if (k + 1 < v.size() && v[k + 1] == v[k])
                continue;
            s += std::string(scheme_name(id)) + ',' + num(v[k]) + ',' +
                 num(static_cast<double>(k + 1) / static_cast<double>(v.size())) + '\n';
        }
    }
    return s;
}

std::string format_convergence_csv(const std::vector<ConvergenceRow> &rows)
{
    std::string s(kConvergenceHeader);
    s += '\n';
    for (const auto &r : rows)
        s += num(r.epsilon) + ',' + std::to_string(r.trial_seed) + ',' +
             std::to_string(r.outer_iter) + ',' + num(r.sum_rate) + ',' +
             std::to_string(r.n_outer) + ',' + flag(r.converged) + '\n';
    return s;
}

std::vector<SummaryRow> summarize(const std::vector<ResultRow> &rows, bool include_infeasible)
{
    std::map<std::pair<int, int>, std::pair<double, int>> acc;
    for (const auto &r : rows) {
        if (!include_infeasible && !r.feasible)
            continue;
        auto &slot = acc[{r.point, static_cast<int>(r.scheme)}];
        slot.first += r.sum_rate;
        slot.second += 1;
    }
    std::vector<SummaryRow> out;
    for (const auto &[key, val] : acc)
        out.push_back({key.first, static_cast<SchemeId>(key.second), val.first / val.second,
                       val.second});
    return out;
}

std::string manifest_text(const ExperimentConfig &cfg, std::size_t rows,
                          std::string_view csv_bytes)
{
    std::string s = "# risd2d run manifest; rerun with: risd2d run --config <this file>\n";
    s += to_text(cfg);
    s += "manifest.version = " RISD2D_VERSION "\n";
    s += "manifest.schema_version = " + std::to_string(kSchemaVersion) + '\n';
    s += "manifest.config_hash = " + hex64(config_hash(cfg)) + '\n';
    s += "manifest.rows = " + std::to_string(rows) + '\n';
    s += "manifest.csv_fnv1a = " + hex64(fnv1a(csv_bytes)) + '\n';
    s += "manifest.seed_rule = base_seed xor trial\n";
    s += "manifest.trial_seeds = ";
    for (int t = 0; t < cfg.trials; ++t) {
        if (t)
            s += ',';
        s += std::to_string(trial_seed(cfg.base_seed, t));
    }
    s += '\n';
    return s;
}

std::string sibling_path(const std::string &out, std::string_view suffix)
{
    const std::filesystem::path p(out);
    std::filesystem::path q = p.parent_path() / p.stem();
    return q.string() + std::string(suffix);
}

RunReport run_experiment(const ExperimentConfig &cfg)
{
    cfg.validate();
    RunReport report;
    std::string csv;

    if (cfg.kind == ExperimentKind::Convergence) {
        const auto rows = run_convergence_rows(cfg);
        csv = format_convergence_csv(rows);
        report.rows = rows.size();
        write_file(cfg.out, csv);
        report.files.push_back(cfg.out);
    } else {
        const auto rows = run_trials(cfg);
        csv = format_result_csv(rows);
        report.rows = rows.size();
        report.summary = summarize(rows, cfg.include_infeasible);
        write_file(cfg.out, csv);
        report.files.push_back(cfg.out);
        if (cfg.kind == ExperimentKind::Cdf) {
            const std::string sinr_path = sibling_path(cfg.out, "_sinr.csv");
            const std::string points_path = sibling_path(cfg.out, "_points.csv");
            write_file(sinr_path, format_sinr_csv(rows));
            write_file(points_path, format_cdf_points_csv(rows, cfg.include_infeasible));
            report.files.push_back(sinr_path);
            report.files.push_back(points_path);
        }
        if (cfg.trace) {
            const std::string outer_path = sibling_path(cfg.out, "_outer_trace.csv");
            const std::string power_path = sibling_path(cfg.out, "_power_trace.csv");
            write_file(outer_path, outer_trace_csv(rows));
            write_file(power_path, power_trace_csv(rows));
            report.files.push_back(outer_path);
            report.files.push_back(power_path);
        }
    }

    const std::string manifest_path = cfg.out + ".manifest";
    write_file(manifest_path, manifest_text(cfg, report.rows, csv));
    report.files.push_back(manifest_path);
    return report;
}

} // namespace risd2d
