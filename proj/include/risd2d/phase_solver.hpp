// SPDX-License-Identifier: Apache-2.0
//
// risd2d - RIS-assisted D2D underlay simulator and optimizer
// ------------------------------------------------------------------------

#ifndef RISD2D_PHASE_SOLVER_HPP
#define RISD2D_PHASE_SOLVER_HPP

#include <vector>

#include "risd2d/channel.hpp"
#include "risd2d/metrics.hpp"

namespace risd2d {

struct PhaseCandidateSet
{
    int bits = 1;
    std::vector<double> values; // radians, indexed by m
};

PhaseCandidateSet quantized_phases(int bits, Quantizer quantizer = Quantizer::Literal);

struct LocalSearchSettings
{
    double gamma_min_linear = 3.1622776601683795;
    bool until_fixpoint = true; // false: a single row-major sweep
    int max_passes = 10;
    double min_improvement = 1e-12; // bit/s/Hz needed to replace the incumbent
};

struct LocalSearchResult
{
    PhaseConfig phases;
    double sum_rate = 0.0; // bit/s/Hz at the returned phases
    int passes = 0;
    long phase_evals = 0; // passes * N^2 * 2^e
    int commits = 0;
    bool fixpoint = false;
};

// Coordinate-wise exhaustive search over the 2^e candidates of each element,
// visiting elements with lz outer and ly inner. A candidate is admissible when
// it violates no more SINR constraints than the incumbent (so no violations
// once the incumbent is feasible); the best admissible candidate is committed.
LocalSearchResult local_search(const ChannelRealization &real, const PowerVector &p,
                               const PhaseConfig &theta_init,
                               const LocalSearchSettings &settings);

} // namespace risd2d

#endif
