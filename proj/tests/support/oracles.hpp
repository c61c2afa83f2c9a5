// SPDX-License-Identifier: Apache-2.0
//
// risd2d - RIS-assisted D2D underlay simulator and optimizer
// ------------------------------------------------------------------------
//
// Slow, independent reference computations used by the unit and acceptance
// tests. Nothing here calls into the solver code paths it checks.

#ifndef RISD2D_TESTS_ORACLES_HPP
#define RISD2D_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include <boost/random/uniform_real_distribution.hpp>

#include "risd2d/channel.hpp"
#include "risd2d/rng.hpp"
#include "risd2d/scene.hpp"

namespace oracle {

using cd = std::complex<double>;
using Vec = std::vector<double>;

inline constexpr double kPi = 3.14159265358979323846;

inline double phase(int m, int bits, bool literal)
{
    const double levels = std::pow(2.0, bits);
    return 2.0 * kPi * m / (literal ? levels - 1.0 : levels);
}

// F_ij summed over elements in reverse order with explicit cos/sin responses.
inline cd composite_entry(const risd2d::ChannelRealization &real, const std::vector<int> &m,
                          int bits, bool literal, int i, int j)
{
    cd acc(0.0, 0.0);
    for (int k = static_cast<int>(real.h_reflect.size()) - 1; k >= 0; --k) {
        const double th = phase(m[static_cast<std::size_t>(k)], bits, literal);
        acc += cd(std::cos(th), std::sin(th)) * real.h_reflect[static_cast<std::size_t>(k)](i, j);
    }
    return acc;
}

inline std::vector<std::vector<double>> gains(const risd2d::ChannelRealization &real,
                                              const std::vector<int> &m, int bits, bool literal,
                                              bool reflect = true)
{
    const int n = real.link_count();
    std::vector<std::vector<double>> g(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cd h = real.h_direct(i, j);
            if (reflect)
                h += composite_entry(real, m, bits, literal, i, j);
            g[i][j] = std::norm(h);
        }
    return g;
}

inline Vec sinrs(const std::vector<std::vector<double>> &g, const Vec &p, double s2)
{
    const int n = static_cast<int>(p.size());
    Vec out(p.size());
    for (int i = 0; i < n; ++i) {
        double den = s2;
        for (int j = n - 1; j >= 0; --j)
            if (j != i)
                den += g[i][j] * p[j];
        out[i] = g[i][i] * p[i] / den;
    }
    return out;
}

inline double sum_rate(const std::vector<std::vector<double>> &g, const Vec &p, double s2)
{
    double r = 0.0;
    for (double x : sinrs(g, p, s2))
        r += std::log(1.0 + x) / std::log(2.0);
    return r;
}

inline int violations(const std::vector<std::vector<double>> &g, const Vec &p, double s2,
                      double gamma)
{
    int v = 0;
    for (double x : sinrs(g, p, s2))
        v += x < gamma;
    return v;
}

// f_i = log(I_i + s2) - log(S_i + I_i + s2), natural log.
inline double f_true(const std::vector<std::vector<double>> &g, double s2, int i, const Vec &p)
{
    double interf = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j)
        if (static_cast<int>(j) != i)
            interf += g[i][j] * p[j];
    return std::log(interf + s2) - std::log(g[i][i] * p[i] + interf + s2);
}

// Majorizer: g_i replaced by its tangent plane at `a`.
inline double surrogate(const std::vector<std::vector<double>> &g, double s2, int i, const Vec &p,
                        const Vec &a)
{
    double ia = 0.0, ip = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j)
        if (static_cast<int>(j) != i) {
            ia += g[i][j] * a[j];
            ip += g[i][j] * p[j];
        }
    const double tangent = std::log(ia + s2) + (ip - ia) / (ia + s2);
    return tangent - std::log(g[i][i] * p[i] + ip + s2);
}

inline double lagrangian(const std::vector<std::vector<double>> &g, double s2, const Vec &lambda,
                         const Vec &a, const Vec &p, double gamma)
{
    double l = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
        l += (1.0 + lambda[i]) * surrogate(g, s2, static_cast<int>(i), p, a) +
             lambda[i] * std::log(1.0 + gamma);
    return l;
}

inline Vec fd_gradient(const std::vector<std::vector<double>> &g, double s2, const Vec &lambda,
                       const Vec &a, const Vec &p, double gamma, double h)
{
    Vec out(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) {
        Vec up = p, dn = p;
        up[k] += h;
        dn[k] -= h;
        out[k] = (lagrangian(g, s2, lambda, a, up, gamma) - lagrangian(g, s2, lambda, a, dn, gamma)) /
                 (2.0 * h);
    }
    return out;
}

inline std::vector<std::vector<double>> to_nested(const risd2d::RMatrix &m)
{
    std::vector<std::vector<double>> out(m.rows(), std::vector<double>(m.cols()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            out[i][j] = m(i, j);
    return out;
}

inline risd2d::RMatrix to_matrix(const std::vector<std::vector<double>> &g)
{
    risd2d::RMatrix m(g.size(), g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j)
            m(i, j) = g[i][j];
    return m;
}

// Gains spread over several decades, like real effective gains.
inline std::vector<std::vector<double>> random_gains(risd2d::Rng &rng, int n)
{
    boost::random::uniform_real_distribution<double> ex(-9.0, -3.0);
    std::vector<std::vector<double>> g(n, std::vector<double>(n));
    for (auto &row : g)
        for (double &x : row)
            x = std::pow(10.0, ex(rng));
    return g;
}

inline Vec random_powers(risd2d::Rng &rng, int n, double p_max)
{
    boost::random::uniform_real_distribution<double> u(0.0, p_max);
    Vec p(n);
    for (double &x : p)
        x = u(rng);
    return p;
}

// Phase configuration number `code` in base 2^bits, element 0 least significant.
inline std::vector<int> decode_phases(std::uint64_t code, int elements, int bits)
{
    std::vector<int> m(elements);
    const std::uint64_t levels = 1ULL << bits;
    for (int k = 0; k < elements; ++k) {
        m[k] = static_cast<int>(code % levels);
        code /= levels;
    }
    return m;
}

struct Best
{
    double rate = -1.0;
    bool feasible = false;
    std::vector<int> m;
    Vec p;
};

// Exhaustive search over all phase configurations and a power grid with
// `grid` points per link on [0, p_max]. Restricted to SINR-feasible points
// whenever at least one exists.
inline Best brute_force(const risd2d::ChannelRealization &real, int bits, bool literal,
                        int grid, double p_max, double gamma)
{
    const int links = real.link_count();
    const int elements = real.element_count();
    const std::uint64_t configs = 1ULL << (bits * elements);
    std::uint64_t grid_total = 1;
    for (int i = 0; i < links; ++i)
        grid_total *= static_cast<std::uint64_t>(grid);

    Best best_any, best_feasible;
    Vec p(links);
    for (std::uint64_t c = 0; c < configs; ++c) {
        const auto m = decode_phases(c, elements, bits);
        const auto g = gains(real, m, bits, literal);
        for (std::uint64_t code = 0; code < grid_total; ++code) {
            std::uint64_t rest = code;
            for (int i = 0; i < links; ++i) {
                p[i] = p_max * static_cast<double>(rest % grid) / (grid - 1);
                rest /= grid;
            }
            const double r = sum_rate(g, p, real.noise_power_w);
            if (r > best_any.rate)
                best_any = {r, false, m, p};
            if (r > best_feasible.rate && violations(g, p, real.noise_power_w, gamma) == 0)
                best_feasible = {r, true, m, p};
        }
    }
    return best_feasible.feasible ? best_feasible : best_any;
}

inline risd2d::ChannelRealization random_realization(int d2d, int n_per_side, std::uint64_t seed)
{
    risd2d::ScenarioParams sp;
    sp.d2d_count = d2d;
    sp.ris.n_per_side = n_per_side;
    const auto scn = risd2d::sample_scenario(sp, seed);
    return risd2d::realize_channels(scn, risd2d::make_channel_params(), seed);
}

} // namespace oracle

#endif
