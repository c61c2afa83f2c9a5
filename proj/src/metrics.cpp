// SPDX-License-Identifier: Apache-2.0
//
// risd2d - RIS-assisted D2D underlay simulator and optimizer
// ------------------------------------------------------------------------

#include "risd2d/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace risd2d {

namespace {

double interference(const RMatrix &gains, const PowerVector &p, int i)
{
    double acc = 0.0;
    for (int j = 0; j < gains.cols(); ++j)
        if (j != i)
            acc += gains(i, j) * p[j];
    return acc;
}

} // namespace

double effective_gain(const ChannelRealization &real, const CMatrix &f, int i, int j)
{
    if (i < 0 || j < 0 || i >= real.link_count() || j >= real.link_count())
        throw std::out_of_range("effective_gain: link index out of range");
    return std::norm(real.h_direct(i, j) + f(i, j));
}

RMatrix effective_gains(const CMatrix &h_direct, const CMatrix &f)
{
    if (h_direct.rows() != f.rows() || h_direct.cols() != f.cols())
        throw std::invalid_argument("effective_gains: dimension mismatch");
    return (h_direct + f).cwiseAbs2();
}

RMatrix effective_gains(const ChannelRealization &real, const PhaseConfig &phases,
                        bool reflect_enabled)
{
    if (!reflect_enabled)
        return real.h_direct.cwiseAbs2();
    return effective_gains(real.h_direct, composite_matrix(real, phases));
}

double sinr(const RMatrix &gains, const PowerVector &p, double sigma2, int i)
{
    return gains(i, i) * p[i] / (interference(gains, p, i) + sigma2);
}

LinkMetrics compute_metrics(const RMatrix &gains, const PowerVector &p, double sigma2)
{
    if (gains.rows() != p.size() || gains.cols() != p.size())
        throw std::invalid_argument("compute_metrics: gains and power sizes differ");
    if (!(sigma2 > 0.0))
        throw std::invalid_argument("compute_metrics: noise power must be positive");
    const int links = static_cast<int>(p.size());
    LinkMetrics m;
    m.sinr.resize(static_cast<std::size_t>(links));
    m.rate.resize(static_cast<std::size_t>(links));
    for (int i = 0; i < links; ++i) {
        const double g = sinr(gains, p, sigma2, i);
        m.sinr[static_cast<std::size_t>(i)] = g;
        m.rate[static_cast<std::size_t>(i)] = std::log2(1.0 + g);
        m.sum_rate += m.rate[static_cast<std::size_t>(i)];
    }
    return m;
}

double sum_rate(const RMatrix &gains, const PowerVector &p, double sigma2)
{
    double total = 0.0;
    for (int i = 0; i < p.size(); ++i)
        total += std::log2(1.0 + sinr(gains, p, sigma2, i));
    return total;
}

FeasibilityReport feasibility(const LinkMetrics &metrics, const PowerVector &p,
                              double gamma_min_linear, double p_max)
{
    FeasibilityReport r;
    for (std::size_t i = 0; i < metrics.sinr.size(); ++i)
        if (!(metrics.sinr[i] >= gamma_min_linear))
            r.sinr_violations.push_back(static_cast<int>(i) + 1);
    for (int i = 0; i < p.size(); ++i)
        if (!(p[i] >= 0.0 && p[i] <= p_max))
            r.power_violations.push_back(i + 1);
    return r;
}

int sinr_violation_count(const RMatrix &gains, const PowerVector &p, double sigma2,
                         double gamma_min_linear)
{
    int count = 0;
    for (int i = 0; i < p.size(); ++i)
        if (!(sinr(gains, p, sigma2, i) >= gamma_min_linear))
            ++count;
    return count;
}

} // namespace risd2d
