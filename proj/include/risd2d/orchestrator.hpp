// SPDX-License-Identifier: Apache-2.0
//
// risd2d - RIS-assisted D2D underlay simulator and optimizer
// ------------------------------------------------------------------------

#ifndef RISD2D_ORCHESTRATOR_HPP
#define RISD2D_ORCHESTRATOR_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "risd2d/phase_solver.hpp"
#include "risd2d/power_solver.hpp"

namespace risd2d {

enum class SchemeId
{
    Proposed,
    Mpt,
    Rps,
    WithoutRis,
};

inline constexpr SchemeId kAllSchemes[] = {SchemeId::Proposed, SchemeId::Mpt, SchemeId::Rps,
                                           SchemeId::WithoutRis};

std::string_view scheme_name(SchemeId s);
std::optional<SchemeId> parse_scheme(std::string_view name);

struct OptimizerSettings
{
    SolverSettings power;
    int bits = 3;
    Quantizer quantizer = Quantizer::Literal;
    bool until_fixpoint = true;
    int max_passes = 10;
    double epsilon = 1e-3; // outer stop threshold on sum rate, bit/s/Hz
    int max_outer = 100;

    LocalSearchSettings local_search() const;
    void validate() const;
};

struct OuterTraceRow
{
    int iter = 0;          // 0 is the initial (P_max, random phases) point
    double sum_rate = 0.0; // bit/s/Hz after both updates
    int inner_iters = 0;
    int passes = 0;
};

struct Solution
{
    SchemeId scheme = SchemeId::Proposed;
    PowerVector powers;
    PhaseConfig phases;
    bool reflect_enabled = true;
    LinkMetrics metrics;
    int outer_iters = 0;
    long inner_iters_total = 0;
    long phase_evals = 0;
    long passes_total = 0;
    bool converged = false;
    bool feasible = false;
    std::vector<OuterTraceRow> trace;
    // Inner trace of the last power allocation, for convergence plots.
    std::vector<PowerTraceRow> last_power_trace;
};

// Alternates power allocation and phase local search from all-P_max powers and
// `theta_init` until the sum rate moves by less than settings.epsilon.
Solution maximize_sum_rate(const ChannelRealization &real, const OptimizerSettings &settings,
                           const PhaseConfig &theta_init);
Solution maximize_sum_rate(const ChannelRealization &real, const OptimizerSettings &settings,
                           Rng &rng);

Solution run_scheme(SchemeId scheme, const ChannelRealization &real,
                    const OptimizerSettings &settings, const PhaseConfig &theta_init);
Solution run_scheme(SchemeId scheme, const ChannelRealization &real,
                    const OptimizerSettings &settings, Rng &rng);

// Metrics recomputed from the solution's powers and phases.
LinkMetrics recompute_metrics(const ChannelRealization &real, const Solution &sol);

} // namespace risd2d

#endif
