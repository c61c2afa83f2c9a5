// SPDX-License-Identifier: Apache-2.0
//
// risd2d - RIS-assisted D2D underlay simulator and optimizer
// ------------------------------------------------------------------------

#ifndef RISD2D_CHANNEL_HPP
#define RISD2D_CHANNEL_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "risd2d/rng.hpp"
#include "risd2d/scene.hpp"

namespace risd2d {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;

enum class PathLossMode
{
    LoS,
    NLoS,
};

// Small-scale model for direct links. `Unit` replaces the Nakagami draw by 1
// and is only meant for deterministic checks.
enum class DirectFading
{
    Nakagami,
    Unit,
};

struct ChannelParams
{
    double fc_ghz = 28.0;
    double wavelength = 0.0; // meters; filled by make_channel_params
    double alpha = 2.0;
    double rician_beta = 4.0;
    double nakagami_m = 3.0;
    double nakagami_omega = 1.0 / 3.0;
    double noise_power_w = 0.0;
    DirectFading direct_fading = DirectFading::Nakagami;

    void validate() const;
};

// Defaults: 28 GHz, alpha 2, beta 4, Nakagami {3, 1/3}, -134 dBm/MHz over 1 MHz.
ChannelParams make_channel_params(double fc_ghz = 28.0, double bandwidth_mhz = 1.0,
                                  double noise_psd_dbm_per_mhz = -134.0);

// UMi path loss in dB; distance in meters, carrier in GHz.
double path_loss_db(double ds_m, double fc_ghz, PathLossMode mode);

// Virtual-LoS reflection term through one element:
// (DS_tx*DS_rx)^(-alpha/2) * exp(-j*2*pi/lambda*(DS_tx + DS_rx)).
Complex reflect_los_coeff(const Position &tx, const Position &rx, const Position &elem,
                          double alpha, double wavelength);

// Rician combination of the LoS term and a CN(0,1) draw scaled by the linear
// NLoS path gain. beta >= 1e12 is treated as the pure-LoS limit.
Complex reflect_channel_coeff(Complex los, Complex nlos_draw, double pl_linear, double beta);

Complex direct_channel_coeff(const Position &tx, const Position &rx, double alpha,
                             Complex fading_draw);

Complex draw_circular_gaussian(Rng &rng);
// Nakagami-m magnitude (E|h|^2 = omega) with a uniform phase.
Complex draw_nakagami(Rng &rng, double m, double omega);

struct ChannelRealization
{
    CMatrix h_direct;               // [i][j] = h_{r_i, t_j}
    std::vector<CMatrix> h_reflect; // one per element, row-major {lz, ly}
    double noise_power_w = 0.0;
    int n_per_side = 0;

    int link_count() const { return static_cast<int>(h_direct.rows()); }
    int element_count() const { return static_cast<int>(h_reflect.size()); }
};

ChannelRealization realize_channels(const Scenario &scn, const ChannelParams &params,
                                    Rng &reflect_rng, Rng &direct_rng);

// Convenience overload drawing from the trial's reflection/direct streams.
ChannelRealization realize_channels(const Scenario &scn, const ChannelParams &params,
                                    std::uint64_t trial_seed);

enum class Quantizer
{
    Literal, // theta_m = 2*pi*m / (2^e - 1)
    Uniform, // theta_m = 2*pi*m / 2^e
};

double phase_value(int m, int bits, Quantizer quantizer);

struct PhaseConfig
{
    int n_per_side = 0;
    int bits = 1;
    Quantizer quantizer = Quantizer::Literal;
    std::vector<int> m; // row-major over {lz, ly}

    static PhaseConfig zeros(int n_per_side, int bits, Quantizer quantizer = Quantizer::Literal);
    static PhaseConfig random(int n_per_side, int bits, Rng &rng,
                              Quantizer quantizer = Quantizer::Literal);

    int levels() const { return 1 << bits; }
    Complex response(int k) const;
    std::vector<Complex> responses() const;
    void validate() const;
};

// F = sum_k q_k * H_k
CMatrix composite_matrix(const ChannelRealization &real, const PhaseConfig &phases);

} // namespace risd2d

#endif
