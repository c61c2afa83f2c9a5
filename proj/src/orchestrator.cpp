// SPDX-License-Identifier: Apache-2.0
//
// risd2d - RIS-assisted D2D underlay simulator and optimizer
// ------------------------------------------------------------------------

#include "risd2d/orchestrator.hpp"

#include <cmath>
#include <stdexcept>

namespace risd2d {

std::string_view scheme_name(SchemeId s)
{
    switch (s) {
    case SchemeId::Proposed:
        return "proposed";
    case SchemeId::Mpt:
        return "mpt";
    case SchemeId::Rps:
        return "rps";
    case SchemeId::WithoutRis:
        return "without_ris";
    }
    return "unknown";
}

std::optional<SchemeId> parse_scheme(std::string_view name)
{
    for (SchemeId s : kAllSchemes)
        if (scheme_name(s) == name)
            return s;
    return std::nullopt;
}

LocalSearchSettings OptimizerSettings::local_search() const
{
    LocalSearchSettings ls;
    ls.gamma_min_linear = power.gamma_min_linear;
    ls.until_fixpoint = until_fixpoint;
    ls.max_passes = max_passes;
    return ls;
}

void OptimizerSettings::validate() const
{
    power.validate();
    if (bits < 1 || bits > 16)
        throw std::invalid_argument("OptimizerSettings: bits must be in 1..16");
    if (!(epsilon > 0.0))
        throw std::invalid_argument("OptimizerSettings: epsilon must be positive");
    if (max_outer < 1 || max_passes < 1)
        throw std::invalid_argument("OptimizerSettings: iteration caps must be >= 1");
}

namespace {

void finalize(const ChannelRealization &real, const OptimizerSettings &settings, Solution &sol)
{
    sol.metrics = recompute_metrics(real, sol);
    sol.feasible =
        feasibility(sol.metrics, sol.powers, settings.power.gamma_min_linear, settings.power.p_max_w)
            .feasible();
}

void check_inputs(const ChannelRealization &real, const OptimizerSettings &settings,
                  const PhaseConfig &theta_init)
{
    settings.validate();
    theta_init.validate();
    if (theta_init.n_per_side != real.n_per_side)
        throw std::invalid_argument("phase grid does not match the RIS size");
    if (theta_init.bits != settings.bits || theta_init.quantizer != settings.quantizer)
        throw std::invalid_argument("initial phases use a different quantizer than settings");
    if (real.link_count() < 1)
        throw std::invalid_argument("realization has no links");
}

} // namespace

LinkMetrics recompute_metrics(const ChannelRealization &real, const Solution &sol)
{
    const RMatrix gains = effective_gains(real, sol.phases, sol.reflect_enabled);
    return compute_metrics(gains, sol.powers, real.noise_power_w);
}

Solution maximize_sum_rate(const ChannelRealization &real, const OptimizerSettings &settings,
                           const PhaseConfig &theta_init)
{
    check_inputs(real, settings, theta_init);
    const double sigma2 = real.noise_power_w;
    const LocalSearchSettings ls = settings.local_search();

    Solution sol;
    sol.scheme = SchemeId::Proposed;
    sol.phases = theta_init;
    sol.powers = PowerVector::Constant(real.link_count(), settings.power.p_max_w);

    double rate = sum_rate(effective_gains(real, sol.phases), sol.powers, sigma2);
    sol.trace.push_back({0, rate, 0, 0});

    for (int outer = 1; outer <= settings.max_outer; ++outer) {
        const RMatrix gains = effective_gains(real, sol.phases);
        PowerResult pr = allocate_power(gains, sigma2, settings.power, sol.powers);
        sol.powers = pr.p;
        sol.inner_iters_total += pr.iterations;

        const LocalSearchResult lr = local_search(real, sol.powers, sol.phases, ls);
        sol.phases = lr.phases;
        sol.phase_evals += lr.phase_evals;
        sol.passes_total += lr.passes;

        const double next = lr.sum_rate;
        sol.trace.push_back({outer, next, pr.iterations, lr.passes});
        sol.outer_iters = outer;
        sol.last_power_trace = std::move(pr.trace);
        const double change = std::abs(next - rate);
        rate = next;
        if (change < settings.epsilon) {
            sol.converged = true;
            break;
        }
    }

    finalize(real, settings, sol);
    return sol;
}

Solution maximize_sum_rate(const ChannelRealization &real, const OptimizerSettings &settings,
                           Rng &rng)
{
    return maximize_sum_rate(
        real, settings, PhaseConfig::random(real.n_per_side, settings.bits, rng, settings.quantizer));
}

Solution run_scheme(SchemeId scheme, const ChannelRealization &real,
                    const OptimizerSettings &settings, const PhaseConfig &theta_init)
{
    if (scheme == SchemeId::Proposed)
        return maximize_sum_rate(real, settings, theta_init);

    check_inputs(real, settings, theta_init);
    const double sigma2 = real.noise_power_w;
    const PowerVector p_max = PowerVector::Constant(real.link_count(), settings.power.p_max_w);

    Solution sol;
    sol.scheme = scheme;
    sol.phases = theta_init;
    sol.powers = p_max;
    sol.outer_iters = 1;

    switch (scheme) {
    case SchemeId::Mpt: {
        const LocalSearchResult lr = local_search(real, p_max, theta_init, settings.local_search());
        sol.phases = lr.phases;
        sol.phase_evals = lr.phase_evals;
        sol.passes_total = lr.passes;
        sol.converged = lr.fixpoint || !settings.until_fixpoint;
        break;
    }
    case SchemeId::Rps:
    case SchemeId::WithoutRis: {
        sol.reflect_enabled = scheme == SchemeId::Rps;
        const RMatrix gains = effective_gains(real, theta_init, sol.reflect_enabled);
        PowerResult pr = allocate_power(gains, sigma2, settings.power, p_max);
        sol.powers = pr.p;
        sol.inner_iters_total = pr.iterations;
        sol.converged = pr.converged;
        sol.last_power_trace = std::move(pr.trace);
        break;
    }
    case SchemeId::Proposed:
        break;
    }

    const double start = sum_rate(effective_gains(real, theta_init, sol.reflect_enabled), p_max, sigma2);
    finalize(real, settings, sol);
    sol.trace = {{0, start, 0, 0},
                 {1, sol.metrics.sum_rate, static_cast<int>(sol.inner_iters_total),
                  static_cast<int>(sol.passes_total)}};
    return sol;
}

Solution run_scheme(SchemeId scheme, const ChannelRealization &real,
                    const OptimizerSettings &settings, Rng &rng)
{
    return run_scheme(scheme, real, settings,
                      PhaseConfig::random(real.n_per_side, settings.bits, rng, settings.quantizer));
}

} // namespace risd2d
