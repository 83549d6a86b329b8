// SPDX-License-Identifier: Apache-2.0
//
// v2v-gbsm: 3D non-stationary wideband MIMO V2V channel simulator
// Copyright (C) 2026 The v2v-gbsm authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "catch_amalgamated.hpp"

#include <sstream>

#include "v2v/config_io.hpp"
#include "v2v/errors.hpp"
#include "v2v/scenario.hpp"

using namespace v2v;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace
{
    std::string validation_message(const ScenarioConfig &c, const ValidationOptions &o = {})
    {
        try
        {
            validate_scenario(c, o);
        }
        catch (const ValidationError &e)
        {
            return e.what();
        }
        return "";
    }
}

TEST_CASE("highway presets carry the tabulated values", "[scenario]")
{
    for (const std::string name : {"tap1-highway", "tap2-highway"})
    {
        auto c = load_preset(name);
        CHECK(c.D == 200.0);
        CHECK(c.f0 == 100.0);
        CHECK(c.a == std::vector<double>{120.0, 140.0});
        CHECK(c.R_t == 40.0);
        CHECK(c.R_r == 40.0);
        CHECK(c.v_R == 25.0);
        CHECK(c.f_max == 433.0);
        CHECK(c.ricean_K == 3.942);
        CHECK(c.energy_tap1.sb11 == 0.371);
        CHECK(c.energy_tap1.sb12 == 0.212);
        CHECK(c.energy_tap1.sb13 == 0.402);
        CHECK(c.energy_tap1.db == 0.015);
        CHECK(c.energy_tapl.at(0).sb3 == 0.724);
        CHECK(c.energy_tapl.at(0).db1 == 0.138);
        CHECK(c.vmf_tcyl.k == 8.9);
        CHECK(c.vmf_rcyl.k == 2.7);
        CHECK(c.vmf_ellipsoid.at(0).k == 12.3);
        CHECK(c.f_c == 5.4e9);
        CHECK(c.bandwidth == 50e6);
        CHECK(c.M_T == 2);
        CHECK(c.psi_T == pi / 3.0);
    }
}

TEST_CASE("urban presets carry the tabulated values", "[scenario]")
{
    auto c = load_preset("tap2-urban");
    CHECK(c.R_t == 20.0);
    CHECK(c.v_R == 8.3);
    CHECK(c.f_max == 144.0);
    CHECK(c.ricean_K == 1.062);
    CHECK(c.energy_tap1.db == 0.631);
    CHECK(c.energy_tapl.at(0).sb3 == 0.056);
    CHECK(c.energy_tapl.at(0).db2 == 0.472);
    CHECK(c.vmf_tcyl.k == 0.55);
    CHECK(c.vmf_rcyl.k == 1.21);
    CHECK(c.focus_tap == 2);
    CHECK(load_preset("tap1-urban").focus_tap == 1);
}

TEST_CASE("presets validate and their energies sum to one", "[scenario]")
{
    for (const auto &name : preset_names())
    {
        auto s = validate_scenario(load_preset(name));
        const auto &e = s.config().energy_tap1;
        CHECK_THAT(e.sb11 + e.sb12 + e.sb13 + e.db, WithinAbs(1.0, 1e-9));
        const auto &e2 = s.energy_tapl(2);
        CHECK_THAT(e2.sb3 + e2.db1 + e2.db2, WithinAbs(1.0, 1e-9));
    }
}

TEST_CASE("unknown preset is rejected with the valid names", "[scenario]")
{
    REQUIRE_THROWS_WITH(load_preset("tap3-rural"), ContainsSubstring("tap1-highway"));
}

TEST_CASE("tap delays follow the confocal geometry", "[scenario]")
{
    auto s = validate_scenario(load_preset("tap2-highway"));
    auto g1 = tap_geometry(s, 1);
    auto g2 = tap_geometry(s, 2);
    CHECK_THAT(g1.tau_l * 1e9, WithinAbs(666.6667, 0.01));
    CHECK_THAT((g2.tau_l - g1.tau_l) * 1e9, WithinAbs(133.3333, 0.01));
    CHECK_THAT(g1.b_l, WithinAbs(std::sqrt(120.0 * 120.0 - 100.0 * 100.0), 1e-12));
    CHECK(g1.u_l == g1.b_l);
    CHECK_THAT(g1.delay_resolution, WithinAbs(20e-9, 1e-18));
    REQUIRE_THROWS_AS(tap_geometry(s, 3), std::out_of_range);
}

TEST_CASE("energy sum violation names the constraint", "[scenario]")
{
    auto c = load_preset("tap1-highway");
    c.energy_tap1.sb11 += 0.005;
    auto msg = validation_message(c);
    CHECK_THAT(msg, ContainsSubstring("energy sum != 1 for tap 1"));
    CHECK_THAT(msg, ContainsSubstring("1.00499"));
}

TEST_CASE("D must equal twice f0", "[scenario]")
{
    auto c = load_preset("tap1-highway");
    c.f0 = 99.0;
    CHECK_THAT(validation_message(c), ContainsSubstring("D must equal 2*f0"));
}

TEST_CASE("a must exceed f0 and increase", "[scenario]")
{
    auto c = load_preset("tap1-highway");
    c.a = {90.0, 140.0};
    CHECK_THAT(validation_message(c), ContainsSubstring("a_l must exceed f0"));
    c.a = {140.0, 120.0};
    CHECK_THAT(validation_message(c), ContainsSubstring("strictly increasing"));
}

TEST_CASE("TDL separability is an error for custom scenarios and a warning for presets", "[scenario]")
{
    auto c = load_preset("tap1-highway");
    auto preset = validate_scenario(c);
    REQUIRE(preset.warnings().size() == 1);
    CHECK_THAT(preset.warnings()[0], ContainsSubstring("TDL separability"));

    c.is_preset = false;
    CHECK_THAT(validation_message(c), ContainsSubstring("--allow-tdl-violation"));
    ValidationOptions o;
    o.allow_tdl_violation = true;
    CHECK(validate_scenario(c, o).warnings().size() == 1);

    c.R_t = c.R_r = 10.0;
    CHECK(validate_scenario(c).warnings().empty());
}

TEST_CASE("inter-tap delay below the delay resolution is rejected", "[scenario]")
{
    auto c = load_preset("tap1-highway");
    c.is_preset = false;
    c.R_t = c.R_r = 1.0;
    c.a = {120.0, 122.0};
    CHECK_THAT(validation_message(c), ContainsSubstring("delay resolution"));
}

TEST_CASE("every violation is reported at once", "[scenario]")
{
    auto c = load_preset("tap1-highway");
    c.f0 = 99.0;
    c.energy_tap1.db = 0.5;
    c.M_T = 0;
    try
    {
        validate_scenario(c);
        FAIL("expected ValidationError");
    }
    catch (const ValidationError &e)
    {
        CHECK(e.issues().size() >= 3);
    }
}

TEST_CASE("config parser applies keys on top of a preset", "[config]")
{
    std::istringstream in("preset = tap1-urban\n# comment\nR_t = 30\ngamma_R = 60deg\ndelta_T = 0.5lambda\nvmf.tcyl.k = 4\nenergy.tap2.sb3 = 0.1\n");
    auto c = parse_config(in);
    CHECK(c.name == "tap1-urban");
    CHECK(c.R_t == 30.0);
    CHECK_THAT(c.gamma_R, WithinAbs(pi / 3.0, 1e-15));
    CHECK_THAT(c.delta_T, WithinAbs(0.5 * speed_of_light / 5.4e9, 1e-15));
    CHECK(c.vmf_tcyl.k == 4.0);
    CHECK(c.energy_tapl.at(0).sb3 == 0.1);
}

TEST_CASE("config parser reports the offending key and line", "[config]")
{
    std::istringstream unknown("R_t = 30\nbogus = 1\n");
    REQUIRE_THROWS_WITH(parse_config(unknown, load_preset("tap1-highway")), ContainsSubstring("bogus") && ContainsSubstring("2"));
    ScenarioConfig c = load_preset("tap1-highway");
    REQUIRE_THROWS_WITH(apply_setting(c, "R_t", "forty"), ContainsSubstring("R_t"));
}

TEST_CASE("canonical settings round-trip and hash stably", "[config]")
{
    auto c = load_preset("tap2-highway");
    c.gamma_R = 0.1234567890123;
    c.ground = GroundConfig{};
    std::istringstream in(canonical_string(c));
    auto back = parse_config(in);
    CHECK(canonical_string(back) == canonical_string(c));
    CHECK(scenario_hash(back) == scenario_hash(c));
    CHECK(scenario_hash_hex(c).size() == 16);

    auto d = c;
    d.R_t = 40.000000000001;
    CHECK(scenario_hash(d) != scenario_hash(c));
}

TEST_CASE("format_double round-trips", "[config]")
{
    for (double x : {0.1, 1.0 / 3.0, 5.4e9, -2.5e-300})
        CHECK(std::stod(format_double(x)) == x);
}
