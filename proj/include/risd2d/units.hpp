// SPDX-License-Identifier: Apache-2.0
//
// risd2d - RIS-assisted D2D underlay simulator and optimizer
// ------------------------------------------------------------------------

#ifndef RISD2D_UNITS_HPP
#define RISD2D_UNITS_HPP

namespace risd2d {

inline constexpr double kSpeedOfLight = 299792458.0; // m/s
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Power ratio conversions. All dB/dBm handling in the project goes through these.
double db_to_linear(double db);
double linear_to_db(double linear);
double dbm_to_watt(double dbm);
double watt_to_dbm(double watt);

// Wavelength in meters for a carrier given in GHz.
double wavelength_m(double fc_ghz);

// Noise power in watts from a PSD in dBm/MHz and a bandwidth in MHz.
double noise_power_w(double psd_dbm_per_mhz, double bandwidth_mhz);

} // namespace risd2d

#endif
