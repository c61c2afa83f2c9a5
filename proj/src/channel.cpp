// SPDX-License-Identifier: Apache-2.0
//
// risd2d - RIS-assisted D2D underlay simulator and optimizer
// ------------------------------------------------------------------------

#include "risd2d/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/random/gamma_distribution.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_01.hpp>
#include <boost/random/uniform_int_distribution.hpp>

#include "risd2d/units.hpp"

namespace risd2d {

namespace {

constexpr double kPureLosBeta = 1e12;

} // namespace

void ChannelParams::validate() const
{
    if (!(fc_ghz > 0.0))
        throw std::invalid_argument("ChannelParams: fc_ghz must be positive");
    if (!(wavelength > 0.0))
        throw std::invalid_argument("ChannelParams: wavelength must be positive");
    if (std::abs(wavelength - wavelength_m(fc_ghz)) > 1e-6 * wavelength)
        throw std::invalid_argument("ChannelParams: wavelength inconsistent with fc_ghz");
    if (!(alpha > 0.0))
        throw std::invalid_argument("ChannelParams: alpha must be positive");
    if (!(rician_beta >= 0.0))
        throw std::invalid_argument("ChannelParams: rician_beta must be >= 0");
    if (!(nakagami_m >= 0.5))
        throw std::invalid_argument("ChannelParams: nakagami_m must be >= 0.5");
    if (!(nakagami_omega > 0.0))
        throw std::invalid_argument("ChannelParams: nakagami_omega must be positive");
    if (!(noise_power_w > 0.0))
        throw std::invalid_argument("ChannelParams: noise_power_w must be positive");
}

ChannelParams make_channel_params(double fc_ghz, double bandwidth_mhz,
                                  double noise_psd_dbm_per_mhz)
{
    ChannelParams p;
    p.fc_ghz = fc_ghz;
    p.wavelength = wavelength_m(fc_ghz);
    p.noise_power_w = noise_power_w(noise_psd_dbm_per_mhz, bandwidth_mhz);
    return p;
}

double path_loss_db(double ds_m, double fc_ghz, PathLossMode mode)
{
    if (!(ds_m > 0.0))
        throw std::invalid_argument("path_loss_db: distance must be positive");
    if (mode == PathLossMode::LoS)
        return 22.0 * std::log10(ds_m) + 28.0 + 20.0 * std::log10(fc_ghz);
    return 36.7 * std::log10(ds_m) + 22.7 + 26.0 * std::log10(fc_ghz);
}

Complex reflect_los_coeff(const Position &tx, const Position &rx, const Position &elem,
                          double alpha, double wavelength)
{
    const double d_tx = distance(tx, elem);
    const double d_rx = distance(elem, rx);
    if (d_tx <= 0.0 || d_rx <= 0.0)
        throw std::invalid_argument("reflect_los_coeff: node coincides with RIS element");
    const double mag = std::pow(d_tx * d_rx, -0.5 * alpha);
    // reduce the path length in wavelengths before scaling by 2*pi
    const double cycles = std::fmod((d_tx + d_rx) / wavelength, 1.0);
    return std::polar(mag, -kTwoPi * cycles);
}

Complex reflect_channel_coeff(Complex los, Complex nlos_draw, double pl_linear, double beta)
{
    if (beta >= kPureLosBeta)
        return los;
    return std::sqrt(beta / (1.0 + beta)) * los +
           std::sqrt(pl_linear / (1.0 + beta)) * nlos_draw;
}

Complex direct_channel_coeff(const Position &tx, const Position &rx, double alpha,
                             Complex fading_draw)
{
    const double ds = distance(tx, rx);
    if (ds <= 0.0)
        throw std::invalid_argument("direct_channel_coeff: zero tx-rx distance");
    return fading_draw * std::pow(ds, -0.5 * alpha);
}

Complex draw_circular_gaussian(Rng &rng)
{
    boost::random::normal_distribution<double> n(0.0, std::sqrt(0.5));
    const double re = n(rng);
    const double im = n(rng);
    return {re, im};
}

Complex draw_nakagami(Rng &rng, double m, double omega)
{
    // |h|^2 ~ Gamma(m, omega/m)
    boost::random::gamma_distribution<double> power(m, omega / m);
    boost::random::uniform_01<double> unit;
    const double mag = std::sqrt(power(rng));
    return std::polar(mag, kTwoPi * unit(rng));
}

ChannelRealization realize_channels(const Scenario &scn, const ChannelParams &params,
                                    Rng &reflect_rng, Rng &direct_rng)
{
    params.validate();
    const int links = scn.link_count();
    const int n = scn.ris.n_per_side;

    ChannelRealization real;
    real.noise_power_w = params.noise_power_w;
    real.n_per_side = n;
    real.h_direct = CMatrix::Zero(links, links);
    real.h_reflect.assign(static_cast<std::size_t>(n * n), CMatrix::Zero(links, links));

    for (int lz = 1; lz <= n; ++lz) {
        for (int ly = 1; ly <= n; ++ly) {
            const Position elem = element_position(scn.ris, lz, ly);
            CMatrix &h = real.h_reflect[static_cast<std::size_t>(element_index(scn.ris, lz, ly))];
            for (int i = 0; i < links; ++i) {
                for (int j = 0; j < links; ++j) {
                    const Position &tx = scn.links[j].tx;
                    const Position &rx = scn.links[i].rx;
                    const Complex los =
                        reflect_los_coeff(tx, rx, elem, params.alpha, params.wavelength);
                    const Complex nlos = draw_circular_gaussian(reflect_rng);
                    const double product = distance(tx, elem) * distance(elem, rx);
                    const double pl = std::pow(
                        10.0, -path_loss_db(product, params.fc_ghz, PathLossMode::NLoS) / 10.0);
                    h(i, j) = reflect_channel_coeff(los, nlos, pl, params.rician_beta);
                }
            }
        }
    }

    for (int i = 0; i < links; ++i) {
        for (int j = 0; j < links; ++j) {
            const Complex fading = params.direct_fading == DirectFading::Unit
                                       ? Complex(1.0, 0.0)
                                       : draw_nakagami(direct_rng, params.nakagami_m,
                                                       params.nakagami_omega);
            real.h_direct(i, j) =
                direct_channel_coeff(scn.links[j].tx, scn.links[i].rx, params.alpha, fading);
        }
    }
    return real;
}

ChannelRealization realize_channels(const Scenario &scn, const ChannelParams &params,
                                    std::uint64_t trial_seed)
{
    Rng reflect = make_stream(trial_seed, Stream::ReflectFading);
    Rng direct = make_stream(trial_seed, Stream::DirectFading);
    return realize_channels(scn, params, reflect, direct);
}

double phase_value(int m, int bits, Quantizer quantizer)
{
    if (bits < 1)
        throw std::invalid_argument("phase_value: need at least one quantization bit");
    const int levels = 1 << bits;
    if (m < 0 || m >= levels)
        throw std::out_of_range("phase_value: index " + std::to_string(m) + " outside 0.." +
                                std::to_string(levels - 1));
    const double denom = quantizer == Quantizer::Literal ? levels - 1 : levels;
    return kTwoPi * m / denom;
}

PhaseConfig PhaseConfig::zeros(int n_per_side, int bits, Quantizer quantizer)
{
    PhaseConfig pc;
    pc.n_per_side = n_per_side;
    pc.bits = bits;
    pc.quantizer = quantizer;
    pc.m.assign(static_cast<std::size_t>(n_per_side * n_per_side), 0);
    pc.validate();
    return pc;
}

PhaseConfig PhaseConfig::random(int n_per_side, int bits, Rng &rng, Quantizer quantizer)
{
    PhaseConfig pc = zeros(n_per_side, bits, quantizer);
    boost::random::uniform_int_distribution<int> pick(0, pc.levels() - 1);
    for (int &v : pc.m)
        v = pick(rng);
    return pc;
}

Complex PhaseConfig::response(int k) const
{
    return std::polar(1.0, phase_value(m[static_cast<std::size_t>(k)], bits, quantizer));
}

std::vector<Complex> PhaseConfig::responses() const
{
    std::vector<Complex> q(m.size());
    for (std::size_t k = 0; k < m.size(); ++k)
        q[k] = response(static_cast<int>(k));
    return q;
}

void PhaseConfig::validate() const
{
    if (bits < 1 || bits > 16)
        throw std::invalid_argument("PhaseConfig: bits must be in 1..16");
    if (n_per_side < 1 || m.size() != static_cast<std::size_t>(n_per_side * n_per_side))
        throw std::invalid_argument("PhaseConfig: grid size does not match n_per_side");
    for (int v : m)
        if (v < 0 || v >= levels())
            throw std::out_of_range("PhaseConfig: index outside the candidate set");
}

CMatrix composite_matrix(const ChannelRealization &real, const PhaseConfig &phases)
{
    if (phases.n_per_side != real.n_per_side ||
        phases.m.size() != real.h_reflect.size())
        throw std::invalid_argument("composite_matrix: phase grid does not match the RIS size");
    const int links = real.link_count();
    CMatrix f = CMatrix::Zero(links, links);
    for (std::size_t k = 0; k < real.h_reflect.size(); ++k)
        f += phases.response(static_cast<int>(k)) * real.h_reflect[k];
    return f;
}

} // namespace risd2d
