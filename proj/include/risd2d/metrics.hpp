// SPDX-License-Identifier: Apache-2.0
//
// risd2d - RIS-assisted D2D underlay simulator and optimizer
// ------------------------------------------------------------------------

#ifndef RISD2D_METRICS_HPP
#define RISD2D_METRICS_HPP

#include <vector>

#include "risd2d/channel.hpp"

namespace risd2d {

// Transmit powers in watts, one per link.
using PowerVector = Eigen::VectorXd;

struct LinkMetrics
{
    std::vector<double> sinr; // linear
    std::vector<double> rate; // bit/s/Hz
    double sum_rate = 0.0;    // bit/s/Hz
};

// |H^L_ij + F_ij|^2
double effective_gain(const ChannelRealization &real, const CMatrix &f, int i, int j);

// Matrix of all effective gains. Pass a zero F to drop the RIS.
RMatrix effective_gains(const CMatrix &h_direct, const CMatrix &f);
RMatrix effective_gains(const ChannelRealization &real, const PhaseConfig &phases,
                        bool reflect_enabled = true);

double sinr(const RMatrix &gains, const PowerVector &p, double sigma2, int i);

LinkMetrics compute_metrics(const RMatrix &gains, const PowerVector &p, double sigma2);

// Sum rate only; same arithmetic as compute_metrics without allocating.
double sum_rate(const RMatrix &gains, const PowerVector &p, double sigma2);

struct FeasibilityReport
{
    std::vector<int> sinr_violations;  // 1-based link indices with SINR < gamma_min
    std::vector<int> power_violations; // 1-based link indices outside [0, p_max]

    bool feasible() const { return sinr_violations.empty() && power_violations.empty(); }
};

FeasibilityReport feasibility(const LinkMetrics &metrics, const PowerVector &p,
                              double gamma_min_linear, double p_max);

// Number of links whose SINR is below gamma_min.
int sinr_violation_count(const RMatrix &gains, const PowerVector &p, double sigma2,
                         double gamma_min_linear);

} // namespace risd2d

#endif
