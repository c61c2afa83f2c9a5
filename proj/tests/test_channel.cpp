// SPDX-License-Identifier: Apache-2.0
//
// risd2d - RIS-assisted D2D underlay simulator and optimizer
// ------------------------------------------------------------------------

#include <cmath>
#include <complex>

#include "doctest.h"
#include "risd2d/channel.hpp"
#include "risd2d/phase_solver.hpp"
#include "risd2d/units.hpp"
#include "support/oracles.hpp"

using namespace risd2d;

namespace {

bool same_bits(const CMatrix &a, const CMatrix &b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        return false;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (a(i, j) != b(i, j))
                return false;
    return true;
}

} // namespace

TEST_SUITE("channel")
{
    TEST_CASE("UMi path loss")
    {
        CHECK(path_loss_db(1.0, 28.0, PathLossMode::LoS) ==
              doctest::Approx(56.94316062684439).epsilon(1e-12));
        CHECK(path_loss_db(10.0, 28.0, PathLossMode::LoS) ==
              doctest::Approx(78.94316062684439).epsilon(1e-12));
        CHECK(path_loss_db(10.0, 28.0, PathLossMode::NLoS) ==
              doctest::Approx(97.0261088148977).epsilon(1e-12));
        CHECK_THROWS_AS(path_loss_db(0.0, 28.0, PathLossMode::LoS), std::invalid_argument);
        CHECK_THROWS_AS(path_loss_db(-1.0, 28.0, PathLossMode::NLoS), std::invalid_argument);
    }

    TEST_CASE("virtual LoS reflection term")
    {
        const double lambda = wavelength_m(28.0);
        const Position elem{0, 0, 0};
        const Complex unit = reflect_los_coeff({1, 0, 0}, {0, 1, 0}, elem, 2.0, lambda);
        CHECK(std::abs(unit) == doctest::Approx(1.0).epsilon(1e-15));

        const Complex sixth = reflect_los_coeff({2, 0, 0}, {0, 3, 0}, elem, 2.0, lambda);
        CHECK(std::abs(sixth) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));

        // one full wavelength of path
        const Complex full = reflect_los_coeff({lambda / 2, 0, 0}, {0, lambda / 2, 0}, elem, 2.0,
                                               lambda);
        CHECK(std::abs(std::arg(full)) < 1e-9);
        CHECK(full.real() > 0.0);

        CHECK_THROWS_AS(reflect_los_coeff(elem, {0, 1, 0}, elem, 2.0, lambda),
                        std::invalid_argument);
    }

    TEST_CASE("Rician combination")
    {
        const Complex los(0.3, -0.4), draw(1.1, 0.7);
        CHECK(reflect_channel_coeff(los, draw, 0.5, 1e12) == los);
        CHECK(reflect_channel_coeff(los, draw, 0.5, 1e15) == los);
        const Complex nlos = reflect_channel_coeff(los, draw, 0.25, 0.0);
        CHECK(nlos.real() == doctest::Approx(0.5 * 1.1).epsilon(1e-15));
        CHECK(nlos.imag() == doctest::Approx(0.5 * 0.7).epsilon(1e-15));
        const Complex mix = reflect_channel_coeff(1.0, 1.0, 1.0, 4.0);
        CHECK(mix.real() == doctest::Approx(1.3416407864998738).epsilon(1e-15));
        CHECK(mix.imag() == 0.0);
    }

    TEST_CASE("direct link coefficient")
    {
        CHECK(direct_channel_coeff({0, 0, 0}, {1, 0, 0}, 2.0, 1.0) == Complex(1.0, 0.0));
        CHECK(direct_channel_coeff({0, 0, 0}, {4, 0, 0}, 2.0, 1.0).real() ==
              doctest::Approx(0.25).epsilon(1e-15));
        CHECK_THROWS_AS(direct_channel_coeff({1, 1, 0}, {1, 1, 0}, 2.0, 1.0),
                        std::invalid_argument);
    }

    TEST_CASE("fading moments over 1e5 draws")
    {
        Rng rng(2024);
        const int n = 100000;
        double naka = 0.0, cn_var = 0.0, cn_re = 0.0, cn_im = 0.0;
        for (int i = 0; i < n; ++i) {
            naka += std::norm(draw_nakagami(rng, 3.0, 1.0 / 3.0));
            const Complex z = draw_circular_gaussian(rng);
            cn_var += std::norm(z);
            cn_re += z.real();
            cn_im += z.imag();
        }
        CHECK(naka / n == doctest::Approx(1.0 / 3.0).epsilon(0.01));
        CHECK(cn_var / n == doctest::Approx(1.0).epsilon(0.01));
        CHECK(std::abs(cn_re / n) < 0.01);
        CHECK(std::abs(cn_im / n) < 0.01);
    }

    TEST_CASE("channel parameter validation")
    {
        ChannelParams p = make_channel_params();
        CHECK_NOTHROW(p.validate());
        CHECK(p.noise_power_w == doctest::Approx(std::pow(10.0, -16.4)).epsilon(1e-12));
        CHECK(p.wavelength == doctest::Approx(299792458.0 / 28e9).epsilon(1e-6));
        p.wavelength *= 1.001;
        CHECK_THROWS_AS(p.validate(), std::invalid_argument);
        p = make_channel_params();
        p.nakagami_m = 0.4;
        CHECK_THROWS_AS(p.validate(), std::invalid_argument);
        p = make_channel_params();
        p.rician_beta = -1.0;
        CHECK_THROWS_AS(p.validate(), std::invalid_argument);
        p = make_channel_params();
        p.noise_power_w = 0.0;
        CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    }

    TEST_CASE("realization shapes and determinism")
    {
        ScenarioParams sp;
        sp.d2d_count = 0;
        sp.ris.n_per_side = 1;
        const Scenario tiny = sample_scenario(sp, 5);
        const ChannelRealization r = realize_channels(tiny, make_channel_params(), 5);
        CHECK(r.h_direct.rows() == 1);
        CHECK(r.h_direct.cols() == 1);
        REQUIRE(r.h_reflect.size() == 1);
        CHECK(r.h_reflect[0].rows() == 1);

        sp.d2d_count = 3;
        sp.ris.n_per_side = 3;
        const Scenario s = sample_scenario(sp, 9);
        const auto a = realize_channels(s, make_channel_params(), 9);
        const auto b = realize_channels(s, make_channel_params(), 9);
        CHECK(same_bits(a.h_direct, b.h_direct));
        REQUIRE(a.h_reflect.size() == 9);
        for (std::size_t k = 0; k < 9; ++k) {
            CHECK(same_bits(a.h_reflect[k], b.h_reflect[k]));
            CHECK(a.h_reflect[k].allFinite());
        }
        const auto c = realize_channels(s, make_channel_params(), 10);
        CHECK_FALSE(same_bits(a.h_direct, c.h_direct));
    }

    TEST_CASE("deterministic limit matches closed form")
    {
        ScenarioParams sp;
        sp.d2d_count = 2;
        sp.ris.n_per_side = 3;
        sp.ris.y_offset = 12.5;
        const Scenario s = sample_scenario(sp, 77);
        ChannelParams cp = make_channel_params();
        cp.rician_beta = 1e12;
        cp.direct_fading = DirectFading::Unit;
        const auto r = realize_channels(s, cp, 77);
        const double lambda = 299792458.0 / 28e9;

        double worst = 0.0;
        for (int lz = 1; lz <= 3; ++lz)
            for (int ly = 1; ly <= 3; ++ly) {
                const Position e{0.0, 12.5 + ly * 0.03, lz * 0.03};
                const CMatrix &h = r.h_reflect[static_cast<std::size_t>((lz - 1) * 3 + (ly - 1))];
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j) {
                        const Position &tx = s.links[j].tx;
                        const Position &rx = s.links[i].rx;
                        const double d1 = std::hypot(tx.x - e.x, tx.y - e.y, tx.z - e.z);
                        const double d2 = std::hypot(rx.x - e.x, rx.y - e.y, rx.z - e.z);
                        const std::complex<double> expect =
                            std::exp(std::complex<double>(0.0, -2.0 * oracle::kPi / lambda *
                                                                    (d1 + d2))) /
                            (d1 * d2);
                        worst = std::max(worst, std::abs(h(i, j) - expect) / std::abs(expect));
                    }
            }
        CHECK(worst < 1e-9);

        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                const Position &tx = s.links[j].tx;
                const Position &rx = s.links[i].rx;
                const double d = std::hypot(tx.x - rx.x, tx.y - rx.y);
                CHECK(std::abs(r.h_direct(i, j) - 1.0 / d) < 1e-9 / d);
            }
    }

    TEST_CASE("quantizer values")
    {
        const double tp = 2.0 * oracle::kPi;
        const auto e2 = quantized_phases(2);
        REQUIRE(e2.values.size() == 4);
        CHECK(e2.values[0] == 0.0);
        CHECK(e2.values[1] == doctest::Approx(tp / 3).epsilon(1e-15));
        CHECK(e2.values[2] == doctest::Approx(2 * tp / 3).epsilon(1e-15));
        CHECK(e2.values[3] == doctest::Approx(tp).epsilon(1e-15));

        const auto e1 = quantized_phases(1);
        REQUIRE(e1.values.size() == 2);
        CHECK(std::abs(std::polar(1.0, e1.values[0]) - std::polar(1.0, e1.values[1])) < 1e-12);

        const auto e3 = quantized_phases(3);
        REQUIRE(e3.values.size() == 8);
        for (int m = 1; m < 8; ++m)
            CHECK(e3.values[m] - e3.values[m - 1] == doctest::Approx(tp / 7).epsilon(1e-12));
        CHECK(e3.values.back() == doctest::Approx(tp).epsilon(1e-15));

        const auto u2 = quantized_phases(2, Quantizer::Uniform);
        CHECK(u2.values[1] == doctest::Approx(tp / 4).epsilon(1e-15));
        CHECK(u2.values[3] == doctest::Approx(3 * tp / 4).epsilon(1e-15));

        CHECK_THROWS_AS(quantized_phases(0), std::invalid_argument);
        CHECK_THROWS_AS(phase_value(4, 2, Quantizer::Literal), std::out_of_range);
    }

    TEST_CASE("phase responses have unit modulus")
    {
        Rng rng(3);
        for (int bits = 1; bits <= 6; ++bits)
            for (auto q : {Quantizer::Literal, Quantizer::Uniform}) {
                const PhaseConfig pc = PhaseConfig::random(5, bits, rng, q);
                for (const Complex &v : pc.responses())
                    CHECK(std::abs(std::abs(v) - 1.0) < 1e-12);
            }
        PhaseConfig bad = PhaseConfig::zeros(2, 2);
        bad.m[3] = 4;
        CHECK_THROWS_AS(bad.validate(), std::out_of_range);
        bad.m.pop_back();
        CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    }

    TEST_CASE("composite matrix")
    {
        const auto real = oracle::random_realization(3, 2, 31);

        // identity phases: plain sum
        const CMatrix f0 = composite_matrix(real, PhaseConfig::zeros(2, 3));
        CMatrix sum = CMatrix::Zero(4, 4);
        for (const auto &h : real.h_reflect)
            sum += h;
        CHECK((f0 - sum).cwiseAbs().maxCoeff() < 1e-15);

        // reordering oracle
        Rng rng(8);
        for (int t = 0; t < 20; ++t) {
            const PhaseConfig pc = PhaseConfig::random(2, 3, rng);
            const CMatrix f = composite_matrix(real, pc);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    const auto ref = oracle::composite_entry(real, pc.m, 3, true, i, j);
                    CHECK(std::abs(f(i, j) - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
                }
        }

        // global phase rotation under the uniform quantizer
        PhaseConfig pc = PhaseConfig::random(2, 3, rng, Quantizer::Uniform);
        const CMatrix before = composite_matrix(real, pc);
        for (int &m : pc.m)
            m = (m + 1) % 8;
        const CMatrix after = composite_matrix(real, pc);
        const Complex rot = std::polar(1.0, 2.0 * oracle::kPi / 8.0);
        CHECK((after - rot * before).cwiseAbs().maxCoeff() < 1e-12 * before.cwiseAbs().maxCoeff());

        PhaseConfig wrong = PhaseConfig::zeros(3, 3);
        CHECK_THROWS_AS(composite_matrix(real, wrong), std::invalid_argument);
    }

    TEST_CASE("single element: |F| does not depend on the phase")
    {
        const auto real = oracle::random_realization(2, 1, 12);
        const double ref = composite_matrix(real, PhaseConfig::zeros(1, 3)).cwiseAbs().sum();
        for (int m = 0; m < 8; ++m) {
            PhaseConfig pc = PhaseConfig::zeros(1, 3);
            pc.m[0] = m;
            const CMatrix f = composite_matrix(real, pc);
            CHECK((f - pc.response(0) * real.h_reflect[0]).cwiseAbs().maxCoeff() == 0.0);
            CHECK(f.cwiseAbs().sum() == doctest::Approx(ref).epsilon(1e-14));
        }
    }
}
