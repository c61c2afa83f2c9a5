// SPDX-License-Identifier: Apache-2.0
//
// risd2d - RIS-assisted D2D underlay simulator and optimizer
// ------------------------------------------------------------------------

#include "risd2d/phase_solver.hpp"

#include <cmath>
#include <stdexcept>

namespace risd2d {

namespace {

struct Score
{
    double rate = 0.0;
    int violations = 0;
};

// Sum rate and SINR violation count for direct + composite channels.
class Evaluator
{
public:
    Evaluator(const ChannelRealization &real, const PowerVector &p, double gamma_min)
        : real_(real), p_(p), gamma_min_(gamma_min), links_(real.link_count()),
          gains_(links_, links_)
    {
    }

    Score operator()(const CMatrix &f)
    {
        gains_ = (real_.h_direct + f).cwiseAbs2();
        Score s;
        for (int i = 0; i < links_; ++i) {
            double interf = real_.noise_power_w;
            for (int j = 0; j < links_; ++j)
                if (j != i)
                    interf += gains_(i, j) * p_[j];
            const double sinr = gains_(i, i) * p_[i] / interf;
            s.rate += std::log2(1.0 + sinr);
            if (!(sinr >= gamma_min_))
                ++s.violations;
        }
        return s;
    }

private:
    const ChannelRealization &real_;
    const PowerVector &p_;
    double gamma_min_;
    int links_;
    RMatrix gains_;
};

} // namespace

PhaseCandidateSet quantized_phases(int bits, Quantizer quantizer)
{
    if (bits < 1)
        throw std::invalid_argument("quantized_phases: need at least one bit");
    PhaseCandidateSet set;
    set.bits = bits;
    const int levels = 1 << bits;
    set.values.reserve(static_cast<std::size_t>(levels));
    for (int m = 0; m < levels; ++m)
        set.values.push_back(phase_value(m, bits, quantizer));
    return set;
}

LocalSearchResult local_search(const ChannelRealization &real, const PowerVector &p,
                               const PhaseConfig &theta_init,
                               const LocalSearchSettings &settings)
{
    theta_init.validate();
    if (theta_init.n_per_side != real.n_per_side)
        throw std::invalid_argument("local_search: phase grid does not match the RIS size");
    if (p.size() != real.link_count())
        throw std::invalid_argument("local_search: power vector size differs from link count");
    if (settings.max_passes < 1)
        throw std::invalid_argument("local_search: max_passes must be >= 1");

    LocalSearchResult res;
    res.phases = theta_init;
    PhaseConfig &theta = res.phases;
    const int levels = theta.levels();
    const int elements = real.element_count();

    std::vector<Complex> candidates(static_cast<std::size_t>(levels));
    for (int m = 0; m < levels; ++m)
        candidates[static_cast<std::size_t>(m)] = std::polar(1.0, phase_value(m, theta.bits, theta.quantizer));

    Evaluator eval(real, p, settings.gamma_min_linear);
    CMatrix f_cand;
    Score current;

    for (int pass = 1; pass <= settings.max_passes; ++pass) {
        // rebuilt every pass so incremental updates do not accumulate drift
        CMatrix f = composite_matrix(real, theta);
        current = eval(f);
        ++res.passes;
        bool changed = false;

        for (int k = 0; k < elements; ++k) {
            const CMatrix &h = real.h_reflect[static_cast<std::size_t>(k)];
            const int incumbent = theta.m[static_cast<std::size_t>(k)];
            const Complex q_inc = candidates[static_cast<std::size_t>(incumbent)];
            int best_m = incumbent;
            Score best = current;

            for (int m = 0; m < levels; ++m) {
                ++res.phase_evals;
                if (m == incumbent)
                    continue;
                f_cand = f + (candidates[static_cast<std::size_t>(m)] - q_inc) * h;
                const Score s = eval(f_cand);
                if (s.violations <= current.violations &&
                    s.rate > best.rate + settings.min_improvement) {
                    best = s;
                    best_m = m;
                }
            }

            if (best_m != incumbent) {
                f += (candidates[static_cast<std::size_t>(best_m)] - q_inc) * h;
                theta.m[static_cast<std::size_t>(k)] = best_m;
                current = best;
                changed = true;
                ++res.commits;
            }
        }

        if (!changed) {
            res.fixpoint = true;
            break;
        }
        if (!settings.until_fixpoint)
            break;
    }

    res.sum_rate = eval(composite_matrix(real, theta)).rate;
    return res;
}

} // namespace risd2d
