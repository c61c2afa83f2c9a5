// SPDX-License-Identifier: Apache-2.0
//
// risd2d - RIS-assisted D2D underlay simulator and optimizer
// ------------------------------------------------------------------------

#include "risd2d/power_solver.hpp"

#include <algorithm>
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

std::vector<double> to_std(const Eigen::VectorXd &v)
{
    return {v.data(), v.data() + v.size()};
}

double surrogate_sum(const PowerVector &p, const PowerVector &anchor, const RMatrix &gains,
                     double sigma2, double log_base)
{
    double acc = 0.0;
    for (int i = 0; i < p.size(); ++i)
        acc += surrogate(i, p, anchor, gains, sigma2, log_base);
    return acc;
}

void pin_dead_links(const RMatrix &gains, PowerVector &p)
{
    for (int i = 0; i < p.size(); ++i)
        if (gains(i, i) == 0.0)
            p[i] = 0.0;
}

} // namespace

void SolverSettings::validate() const
{
    if (!(epsilon > 0.0))
        throw std::invalid_argument("SolverSettings: epsilon must be positive");
    if (max_iters < 1)
        throw std::invalid_argument("SolverSettings: max_iters must be >= 1");
    if (!(delta0 > 0.0) || !(mu0 > 0.0) || !(step_floor > 0.0))
        throw std::invalid_argument("SolverSettings: step sizes must be positive");
    if (!(lambda0 >= 0.0))
        throw std::invalid_argument("SolverSettings: lambda0 must be >= 0");
    if (!(gamma_min_linear >= 0.0))
        throw std::invalid_argument("SolverSettings: gamma_min must be >= 0");
    if (!(p_max_w > 0.0))
        throw std::invalid_argument("SolverSettings: p_max must be positive");
    if (!(log_base > 1.0))
        throw std::invalid_argument("SolverSettings: log_base must exceed 1");
}

DcParts dc_parts(const RMatrix &gains, double sigma2, int i, const PowerVector &p,
                 double log_base)
{
    const double ln_b = std::log(log_base);
    const double noise_interf = interference(gains, p, i) + sigma2;
    return {std::log(noise_interf) / ln_b, std::log(gains(i, i) * p[i] + noise_interf) / ln_b};
}

double surrogate(int i, const PowerVector &p, const PowerVector &anchor, const RMatrix &gains,
                 double sigma2, double log_base)
{
    const double ln_b = std::log(log_base);
    const double denom = interference(gains, anchor, i) + sigma2;
    double linear = std::log(denom) / ln_b;
    for (int k = 0; k < p.size(); ++k)
        if (k != i)
            linear += gains(i, k) / (denom * ln_b) * (p[k] - anchor[k]);
    return linear - dc_parts(gains, sigma2, i, p, log_base).phi;
}

Eigen::VectorXd lagrangian_grad_p(const PowerVector &p, const Eigen::VectorXd &multipliers,
                                  const PowerVector &anchor, const RMatrix &gains, double sigma2,
                                  double /*gamma_min_linear*/, double log_base)
{
    // log(1 + gamma_min) only shifts L by a constant, so it drops out here.
    const double ln_b = std::log(log_base);
    const int links = static_cast<int>(p.size());
    Eigen::VectorXd grad = Eigen::VectorXd::Zero(links);
    for (int i = 0; i < links; ++i) {
        const double weight = 1.0 + multipliers[i];
        const double g_den = (interference(gains, anchor, i) + sigma2) * ln_b;
        const double phi_den = (interference(gains, p, i) + gains(i, i) * p[i] + sigma2) * ln_b;
        for (int k = 0; k < links; ++k) {
            const double dg = (k == i) ? 0.0 : gains(i, k) / g_den;
            const double dphi = gains(i, k) / phi_den;
            grad[k] += weight * (dg - dphi);
        }
    }
    return grad;
}

PowerResult allocate_power(const RMatrix &gains, double sigma2, const SolverSettings &settings,
                           const PowerVector &p_init)
{
    settings.validate();
    if (gains.rows() != gains.cols() || gains.rows() != p_init.size())
        throw std::invalid_argument("allocate_power: gains and power sizes differ");
    if (!gains.allFinite())
        throw std::invalid_argument("allocate_power: non-finite gains");
    if (!(sigma2 > 0.0))
        throw std::invalid_argument("allocate_power: noise power must be positive");

    const int links = static_cast<int>(p_init.size());
    const double p_max = settings.p_max_w;
    const double ln_b = std::log(settings.log_base);
    const double target = std::log1p(settings.gamma_min_linear) / ln_b;

    PowerResult res;
    PowerVector p = p_init.cwiseMax(0.0).cwiseMin(p_max);
    pin_dead_links(gains, p);
    Eigen::VectorXd lambda = Eigen::VectorXd::Constant(links, settings.lambda0);
    double delta = settings.delta0;
    double mu = settings.mu0;
    double rate = sum_rate(gains, p, sigma2);

    res.trace.push_back({0, rate, to_std(p), to_std(lambda), delta, mu, true});

    for (int n = 1; n <= settings.max_iters; ++n) {
        const PowerVector anchor = p;
        const Eigen::VectorXd grad_u =
            p_max * lagrangian_grad_p(p, lambda, anchor, gains, sigma2,
                                      settings.gamma_min_linear, settings.log_base);
        const double f_anchor = surrogate_sum(anchor, anchor, gains, sigma2, settings.log_base);
        const int violations =
            sinr_violation_count(gains, anchor, sigma2, settings.gamma_min_linear);

        // Projected step on normalized powers, backtracked until the majorizer of
        // the unweighted objective does not increase (so, by majorization, neither
        // does -R) and no additional link drops below gamma_min.
        bool accepted = false;
        double t = 1.0;
        for (int b = 0; b <= settings.max_backtracks; ++b, t *= 0.5) {
            PowerVector cand =
                (anchor / p_max - t * delta * grad_u).cwiseMax(0.0).cwiseMin(1.0) * p_max;
            pin_dead_links(gains, cand);
            if (surrogate_sum(cand, anchor, gains, sigma2, settings.log_base) <= f_anchor &&
                sum_rate(gains, cand, sigma2) >= rate &&
                sinr_violation_count(gains, cand, sigma2, settings.gamma_min_linear) <=
                    violations) {
                p = cand;
                accepted = true;
                break;
            }
        }

        if (delta > settings.step_floor)
            delta *= 0.5;

        for (int i = 0; i < links; ++i) {
            const double violation =
                surrogate(i, p, anchor, gains, sigma2, settings.log_base) + target;
            const double step = mu * std::max(0.0, violation);
            lambda[i] = settings.dual_update == DualUpdate::Ascent
                            ? std::max(0.0, lambda[i] + step)
                            : std::max(0.0, lambda[i] - step);
        }

        if (mu > settings.step_floor)
            mu *= 0.5;

        const double next_rate = sum_rate(gains, p, sigma2);
        res.trace.push_back({n, next_rate, to_std(p), to_std(lambda), delta, mu, accepted});
        res.iterations = n;
        const double change = std::abs(next_rate - rate);
        rate = next_rate;
        if (change < settings.epsilon) {
            res.converged = true;
            break;
        }
    }

    res.p = p;
    res.multipliers = lambda;
    res.feasible =
        sinr_violation_count(gains, p, sigma2, settings.gamma_min_linear) == 0;
    return res;
}

double projected_gradient_residual(const RMatrix &gains, double sigma2, const PowerVector &p,
                                   double p_max)
{
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(p.size());
    const Eigen::VectorXd grad_u = p_max * lagrangian_grad_p(p, zero, p, gains, sigma2, 0.0);
    double worst = 0.0;
    for (int k = 0; k < p.size(); ++k) {
        const double u = p[k] / p_max;
        const double moved = std::clamp(u - grad_u[k], 0.0, 1.0);
        worst = std::max(worst, std::abs(moved - u));
    }
    return worst;
}

} // namespace risd2d
