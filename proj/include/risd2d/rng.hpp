// SPDX-License-Identifier: Apache-2.0
//
// risd2d - RIS-assisted D2D underlay simulator and optimizer
// ------------------------------------------------------------------------

#ifndef RISD2D_RNG_HPP
#define RISD2D_RNG_HPP

#include <cstdint>

#include <boost/random/mersenne_twister.hpp>

namespace risd2d {

// Boost engines and distributions are used instead of <random> ones because
// their output is specified by the library code, not by the standard library
// vendor, so seeded runs reproduce across toolchains.
using Rng = boost::random::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Independent streams derived from one trial seed.
enum class Stream : std::uint64_t
{
    Scenario = 1,
    ReflectFading = 2,
    DirectFading = 3,
    PhaseInit = 4,
};

inline Rng make_stream(std::uint64_t trial_seed, Stream s)
{
    return Rng(splitmix64(splitmix64(trial_seed) ^ static_cast<std::uint64_t>(s)));
}

} // namespace risd2d

#endif
