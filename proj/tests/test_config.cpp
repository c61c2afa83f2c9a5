// SPDX-License-Identifier: Apache-2.0
//
// risd2d - RIS-assisted D2D underlay simulator and optimizer
// ------------------------------------------------------------------------

#include <string>

#include "doctest.h"
#include "risd2d/config.hpp"
#include "risd2d/units.hpp"

using namespace risd2d;

namespace {

std::string error_of(ExperimentConfig cfg, const std::string &text)
{
    try {
        apply_text(cfg, text);
        cfg.validate();
    } catch (const ConfigError &e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST_SUITE("config")
{
    TEST_CASE("kind names round trip")
    {
        for (auto k : {ExperimentKind::Single, ExperimentKind::SweepD2d,
                       ExperimentKind::SweepElements, ExperimentKind::SweepBits,
                       ExperimentKind::SweepSinr, ExperimentKind::SweepPos, ExperimentKind::Cdf,
                       ExperimentKind::Convergence})
            CHECK(parse_kind(kind_name(k)) == k);
        CHECK_FALSE(parse_kind("sweep-d2d").has_value());
    }

    TEST_CASE("figure defaults")
    {
        const auto d2d = defaults_for(ExperimentKind::SweepD2d);
        CHECK(d2d.values == std::vector<double>{1, 2, 3, 4, 5, 6});
        CHECK(d2d.n_per_side == 4);
        CHECK(d2d.bits == 3);
        CHECK(d2d.schemes.size() == 4);

        const auto elems = defaults_for(ExperimentKind::SweepElements);
        CHECK(elems.values == std::vector<double>{2, 3, 4, 5, 6, 7, 8});
        CHECK(elems.d2d == 3);

        const auto pos = defaults_for(ExperimentKind::SweepPos);
        REQUIRE(pos.values.size() == 9);
        CHECK(pos.values.front() == -100.0);
        CHECK(pos.values[4] == 0.0);
        CHECK(pos.values.back() == 100.0);

        const auto sinr = defaults_for(ExperimentKind::SweepSinr);
        CHECK(sinr.values == std::vector<double>{2, 4, 6, 8, 10, 12, 14});

        const auto conv = defaults_for(ExperimentKind::Convergence);
        CHECK(conv.epsilons == std::vector<double>{1e-2, 1e-3, 1e-4});
        CHECK(conv.d2d == 4);
        CHECK(conv.n_per_side == 4);
        CHECK(conv.trials >= 50);

        for (auto k : {ExperimentKind::Single, ExperimentKind::SweepD2d, ExperimentKind::SweepBits,
                       ExperimentKind::Cdf, ExperimentKind::Convergence})
            CHECK_NOTHROW(defaults_for(k).validate());
    }

    TEST_CASE("parsing")
    {
        ExperimentConfig c = defaults_for(ExperimentKind::Single);
        apply_text(c, "# comment\n"
                      "D = 5   # trailing comment\n"
                      "\n"
                      "  N=6\n"
                      "gamma_min_db = 7.5\n"
                      "schemes = proposed, without_ris\n"
                      "quantizer = uniform\n"
                      "until_fixpoint = false\n"
                      "base_seed = 18446744073709551615\n"
                      "manifest.rows = 12\n");
        CHECK(c.d2d == 5);
        CHECK(c.n_per_side == 6);
        CHECK(c.gamma_min_db == 7.5);
        CHECK(c.schemes == std::vector<SchemeId>{SchemeId::Proposed, SchemeId::WithoutRis});
        CHECK(c.quantizer == Quantizer::Uniform);
        CHECK_FALSE(c.until_fixpoint);
        CHECK(c.base_seed == 18446744073709551615ULL);
    }

    TEST_CASE("errors name the offending field")
    {
        const auto base = defaults_for(ExperimentKind::Single);
        CHECK(error_of(base, "colour = red").find("colour") != std::string::npos);
        CHECK(error_of(base, "D = three").find("'D'") != std::string::npos);
        CHECK(error_of(base, "N = 4.5").find("'N'") != std::string::npos);
        CHECK(error_of(base, "until_fixpoint = maybe").find("until_fixpoint") != std::string::npos);
        CHECK(error_of(base, "schemes = proposed,magic").find("magic") != std::string::npos);
        CHECK(error_of(base, "quantizer = fancy").find("quantizer") != std::string::npos);
        CHECK(error_of(base, "experiment = figure9").find("experiment") != std::string::npos);
        CHECK(error_of(base, "D 3").find("line 1") != std::string::npos);
        CHECK(error_of(base, "trials = 0").find("trials") != std::string::npos);
        CHECK(error_of(base, "e = 0").find("'e'") != std::string::npos);
        CHECK(error_of(base, "schemes = ").find("schemes") != std::string::npos);
        CHECK(error_of(base, "values = 1,2").find("values") != std::string::npos);
        const auto bits = defaults_for(ExperimentKind::SweepBits);
        CHECK(error_of(bits, "values = 0,1").find("values") != std::string::npos);
        CHECK(error_of(bits, "values = 2.5").find("values") != std::string::npos);
        const auto conv = defaults_for(ExperimentKind::Convergence);
        CHECK(error_of(conv, "epsilons = 0.01,-1").find("epsilons") != std::string::npos);
    }

    TEST_CASE("canonical text round trips and hashes")
    {
        ExperimentConfig c = defaults_for(ExperimentKind::SweepPos);
        apply_text(c, "gamma_min_db = 0.1\nbase_seed = 99\nbeta = 3.3333333333333335");
        ExperimentConfig back = defaults_for(ExperimentKind::Single);
        apply_text(back, to_text(c));
        CHECK(to_text(back) == to_text(c));
        CHECK(back.gamma_min_db == c.gamma_min_db);
        CHECK(back.beta == c.beta);
        CHECK(config_hash(back) == config_hash(c));

        ExperimentConfig moved = c;
        moved.out = "elsewhere.csv";
        moved.threads = 7;
        CHECK(config_hash(moved) == config_hash(c));
        moved.d2d += 1;
        CHECK(config_hash(moved) != config_hash(c));

        CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
        CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
    }

    TEST_CASE("solver settings from config")
    {
        ExperimentConfig c;
        c.gamma_min_db = 5.0;
        c.p_max_dbm = 23.0;
        c.epsilon = 1e-4;
        c.power_epsilon = 1e-5;
        c.max_inner = 77;
        OptimizerSettings s = optimizer_settings(c);
        CHECK(s.power.gamma_min_linear == doctest::Approx(3.1622776601683795).epsilon(1e-15));
        CHECK(s.power.p_max_w == doctest::Approx(0.19952623149688797).epsilon(1e-15));
        CHECK(s.epsilon == 1e-4);
        CHECK(s.power.epsilon == 1e-5);
        CHECK(s.power.max_iters == 77);
        CHECK(s.until_fixpoint);
        CHECK(s.power.dual_update == DualUpdate::Ascent);

        c.strict_paper = true;
        c.quantizer = Quantizer::Uniform;
        s = optimizer_settings(c);
        CHECK_FALSE(s.until_fixpoint);
        CHECK(s.power.dual_update == DualUpdate::Literal);
        CHECK(s.quantizer == Quantizer::Literal);
    }
}
