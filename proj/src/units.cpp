// SPDX-License-Identifier: Apache-2.0
//
// risd2d - RIS-assisted D2D underlay simulator and optimizer
// ------------------------------------------------------------------------

#include "risd2d/units.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace risd2d {

double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

double linear_to_db(double linear)
{
    if (linear <= 0.0)
        return -std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(linear);
}

double dbm_to_watt(double dbm)
{
    return 1e-3 * db_to_linear(dbm);
}

double watt_to_dbm(double watt)
{
    return linear_to_db(watt * 1e3);
}

double wavelength_m(double fc_ghz)
{
    if (!(fc_ghz > 0.0))
        throw std::invalid_argument("wavelength_m: carrier frequency must be positive");
    return kSpeedOfLight / (fc_ghz * 1e9);
}

double noise_power_w(double psd_dbm_per_mhz, double bandwidth_mhz)
{
    if (!(bandwidth_mhz > 0.0))
        throw std::invalid_argument("noise_power_w: bandwidth must be positive");
    return dbm_to_watt(psd_dbm_per_mhz + linear_to_db(bandwidth_mhz));
}

} // namespace risd2d
