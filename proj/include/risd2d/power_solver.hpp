// SPDX-License-Identifier: Apache-2.0
//
// risd2d - RIS-assisted D2D underlay simulator and optimizer
// ------------------------------------------------------------------------

#ifndef RISD2D_POWER_SOLVER_HPP
#define RISD2D_POWER_SOLVER_HPP

#include <vector>

#include "risd2d/metrics.hpp"

namespace risd2d {

enum class DualUpdate
{
    // lambda += mu * max(0, violation), projected on lambda >= 0
    Ascent,
    // lambda = (lambda - mu * max(0, violation))^+, the opposite sign, kept for comparison
    Literal,
};

struct SolverSettings
{
    double epsilon = 1e-3; // stop when the sum rate (bit/s/Hz) moves less than this
    int max_iters = 500;
    // Steps act on powers normalized by p_max_w, so the floor of 1 is unitless.
    double delta0 = 50.0;
    double mu0 = 100.0;
    double lambda0 = 100.0;
    double step_floor = 1.0;
    double gamma_min_linear = 3.1622776601683795; // 5 dB
    double p_max_w = 0.19952623149688797;         // 23 dBm
    double log_base = 2.718281828459045;          // base of the internal objective
    DualUpdate dual_update = DualUpdate::Ascent;
    int max_backtracks = 60;

    void validate() const;
};

// g_i = log(sum_{j!=i} G_ij p_j + s2), phi_i = log(G_ii p_i + sum_{j!=i} G_ij p_j + s2)
struct DcParts
{
    double g = 0.0;
    double phi = 0.0;

    double f() const { return g - phi; }
};

DcParts dc_parts(const RMatrix &gains, double sigma2, int i, const PowerVector &p,
                 double log_base = 2.718281828459045);

// First-order majorizer of f_i = g_i - phi_i, linearizing g_i at `anchor`.
double surrogate(int i, const PowerVector &p, const PowerVector &anchor, const RMatrix &gains,
                 double sigma2, double log_base = 2.718281828459045);

// Gradient in watts of sum_i (1 + lambda_i) * f_i^(anchor)(p) + lambda_i * log(1 + gamma_min).
Eigen::VectorXd lagrangian_grad_p(const PowerVector &p, const Eigen::VectorXd &multipliers,
                                  const PowerVector &anchor, const RMatrix &gains, double sigma2,
                                  double gamma_min_linear,
                                  double log_base = 2.718281828459045);

struct PowerTraceRow
{
    int iter = 0;
    double sum_rate = 0.0; // bit/s/Hz
    std::vector<double> p;
    std::vector<double> lambda;
    double delta = 0.0;
    double mu = 0.0;
    bool accepted = true;
};

struct PowerResult
{
    PowerVector p;
    Eigen::VectorXd multipliers;
    std::vector<PowerTraceRow> trace;
    int iterations = 0;
    bool converged = false;
    bool feasible = false;
};

PowerResult allocate_power(const RMatrix &gains, double sigma2, const SolverSettings &settings,
                           const PowerVector &p_init);

// Box-projected gradient residual of sum_i f_i on normalized powers:
// max_k |clamp(u_k - dF/du_k, 0, 1) - u_k|, u = p / p_max.
double projected_gradient_residual(const RMatrix &gains, double sigma2, const PowerVector &p,
                                   double p_max);

} // namespace risd2d

#endif
