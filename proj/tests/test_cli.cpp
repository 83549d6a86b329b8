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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "v2v/cli.hpp"
#include "v2v/constants.hpp"

using namespace v2v;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace
{
    namespace fs = std::filesystem;

    struct Captured
    {
        int code = 0;
        std::string out, err;
    };

    Captured run_cli(std::vector<std::string> args)
    {
        args.insert(args.begin(), "v2vsim");
        std::ostringstream out, err;
        auto *old_out = std::cout.rdbuf(out.rdbuf());
        auto *old_err = std::cerr.rdbuf(err.rdbuf());
        Captured c;
        c.code = cli::run(args);
        std::cout.rdbuf(old_out);
        std::cerr.rdbuf(old_err);
        c.out = out.str();
        c.err = err.str();
        return c;
    }

    fs::path scratch(const std::string &name)
    {
        fs::path dir = fs::temp_directory_path() / "v2vsim_test_cli";
        fs::create_directories(dir);
        return dir / name;
    }

    std::string slurp(const fs::path &p)
    {
        std::ifstream f(p, std::ios::binary);
        std::stringstream ss;
        ss << f.rdbuf();
        return ss.str();
    }
}

TEST_CASE("grid and angle parsing", "[cli]")
{
    auto g = cli::parse_grid("0:0.5:2");
    REQUIRE(g.size() == 5);
    CHECK(g(4) == 2.0);
    CHECK(cli::parse_grid("0:0.1:3").size() == 31);
    auto l = cli::parse_grid("1,2.5,-3");
    REQUIRE(l.size() == 3);
    CHECK(l(2) == -3.0);
    CHECK(cli::parse_grid("7").size() == 1);
    REQUIRE_THROWS_AS(cli::parse_grid("0:0:1"), std::invalid_argument);
    REQUIRE_THROWS_AS(cli::parse_grid("a,b"), std::invalid_argument);
    CHECK_THAT(cli::parse_angle("60deg"), WithinAbs(pi / 3.0, 1e-15));
    CHECK(cli::parse_angle("0.5236") == 0.5236);
    REQUIRE_THROWS_AS(cli::parse_angle("north"), std::invalid_argument);
}

TEST_CASE("presets are listed and shown", "[cli]")
{
    auto list = run_cli({"presets"});
    CHECK(list.code == 0);
    CHECK(list.out == "tap1-highway\ntap1-urban\ntap2-highway\ntap2-urban\n");
    auto show = run_cli({"presets", "--show", "tap2-urban"});
    CHECK(show.code == 0);
    CHECK_THAT(show.out, ContainsSubstring("f_max = 144"));
}

TEST_CASE("validate reports tap geometry and preset warnings", "[cli]")
{
    auto r = run_cli({"validate", "--preset", "tap2-highway"});
    CHECK(r.code == 0);
    CHECK_THAT(r.out, ContainsSubstring("tap 2:"));
    CHECK_THAT(r.out, ContainsSubstring("tau=800 ns"));
    CHECK_THAT(r.err, ContainsSubstring("TDL separability"));
}

TEST_CASE("validate rejects a bad energy sum with exit code 1", "[cli]")
{
    auto cfg = scratch("bad.cfg");
    std::ofstream(cfg) << "preset = tap1-highway\nenergy.tap1.sb11 = 0.376\n";
    auto r = run_cli({"validate", "--config", cfg.string()});
    CHECK(r.code == 1);
    CHECK_THAT(r.err, ContainsSubstring("energy sum != 1 for tap 1"));
}

TEST_CASE("usage errors exit nonzero with a message", "[cli]")
{
    CHECK(run_cli({"validate", "--preset", "tap9"}).code == 1);
    CHECK(run_cli({"validate", "--preset", "tap1-highway", "--bogus"}).code != 0);
    CHECK(run_cli({"space-cf"}).code == 1);
    CHECK(run_cli({"nonsense"}).code != 0);
    auto missing = run_cli({"validate", "--config", "/nonexistent/x.cfg"});
    CHECK(missing.code == 1);
    CHECK_THAT(missing.err, ContainsSubstring("/nonexistent/x.cfg"));
    auto set = run_cli({"validate", "--preset", "tap1-highway", "--set", "R_t"});
    CHECK(set.code == 1);
    CHECK_THAT(set.err, ContainsSubstring("key=value"));
    CHECK(run_cli({"--help"}).code == 0);
}

TEST_CASE("custom scenarios must respect TDL separability unless overridden", "[cli]")
{
    auto cfg = scratch("custom.cfg");
    std::ofstream(cfg) << "preset = tap2-highway\nis_preset = false\n";
    CHECK(run_cli({"validate", "--config", cfg.string()}).code == 1);
    CHECK(run_cli({"validate", "--config", cfg.string(), "--allow-tdl-violation"}).code == 0);
    CHECK(run_cli({"validate", "--config", cfg.string(), "--set", "R_t=10", "--set", "R_r=10"}).code == 0);
}

TEST_CASE("space-cf writes a CSV curve, manifest and gnuplot stub", "[cli]")
{
    auto out = scratch("space.csv");
    auto r = run_cli({"space-cf", "--preset", "tap1-highway", "--t", "2", "--gamma-r", "0.5236", "--spacing", "0:1:3",
                      "--component", "SB_1,3", "--out", out.string(), "--gnuplot-stub"});
    REQUIRE(r.code == 0);
    std::string csv = slurp(out);
    CHECK_THAT(csv, ContainsSubstring("# scenario_hash="));
    CHECK_THAT(csv, ContainsSubstring("# seed=1"));
    CHECK_THAT(csv, ContainsSubstring("# method=quadrature"));
    CHECK_THAT(csv, ContainsSubstring("# component=SB_1,3"));
    CHECK_THAT(csv, ContainsSubstring("\nx,rho_re,rho_im,rho_abs,rho_norm_abs\n"));
    int rows = 0;
    std::istringstream lines(csv);
    for (std::string line; std::getline(lines, line);)
        rows += (!line.empty() && line[0] != '#' && line[0] != 'x') ? 1 : 0;
    CHECK(rows == 4);
    CHECK(fs::exists(out.string() + ".gp"));

    auto manifest = nlohmann::json::parse(slurp(out.string() + ".manifest.json"));
    CHECK(manifest["command"] == "space-cf");
    CHECK(manifest["seed"] == 1);
    CHECK(manifest["config"]["gamma_R"] == "0.52359999999999995");
    CHECK(manifest["outputs"].size() == 2);
    CHECK(manifest["wall_clock_seconds"].get<double>() >= 0.0);
    CHECK(manifest["scenario_hash"].get<std::string>().size() == 16);
}

TEST_CASE("curves go to stdout without --out", "[cli]")
{
    auto r = run_cli({"freq-cf", "--preset", "tap1-urban", "--df", "0,1e6"});
    REQUIRE(r.code == 0);
    CHECK_THAT(r.out, ContainsSubstring("# x_name=delta_f"));
    auto row = r.out.find("\n0,");
    REQUIRE(row != std::string::npos);
    std::istringstream line(r.out.substr(row + 3));
    double re = 0.0, im = 1.0;
    char comma = 0;
    line >> re >> comma >> im;
    CHECK_THAT(re, Catch::Matchers::WithinAbs(1.0, 1e-9));
    CHECK_THAT(im, Catch::Matchers::WithinAbs(0.0, 1e-9));
}

TEST_CASE("realize and mc-verify are byte-identical across runs", "[cli]")
{
    for (const auto &cmd : std::vector<std::vector<std::string>>{
             {"realize", "--preset", "tap2-urban", "--n", "50", "--duration", "0.01", "--seed", "3"},
             {"realize", "--preset", "tap2-highway", "--n", "20", "--duration", "0.005", "--tdl"},
             {"mc-verify", "--preset", "tap1-urban", "--realizations", "20", "--n", "200", "--seed", "7", "--threads", "2"},
             {"pdp", "--preset", "tap2-highway", "--n", "100"},
             {"aoa-pdf", "--preset", "tap1-highway", "--beamwidth", "30deg", "--points", "36"}})
    {
        auto a = scratch("det_a.csv"), b = scratch("det_b.csv");
        auto args_a = cmd, args_b = cmd;
        args_a.insert(args_a.end(), {"--out", a.string()});
        args_b.insert(args_b.end(), {"--out", b.string()});
        REQUIRE(run_cli(args_a).code == 0);
        REQUIRE(run_cli(args_b).code == 0);
        INFO(cmd[0]);
        CHECK(slurp(a) == slurp(b));
        CHECK_FALSE(slurp(a).empty());
    }
}

TEST_CASE("doppler offers both routes", "[cli]")
{
    auto std_run = run_cli({"doppler", "--preset", "tap1-urban", "--gamma", "-100:100:100"});
    REQUIRE(std_run.code == 0);
    CHECK_THAT(std_run.out, ContainsSubstring("# method=standard"));
    auto paper = run_cli({"doppler", "--preset", "tap1-urban", "--method", "paper", "--gamma", "0,0.1", "--n-omega", "201", "--n-t", "8", "--n-df", "8"});
    REQUIRE(paper.code == 0);
    CHECK_THAT(paper.out, ContainsSubstring("# method=paper"));
    CHECK(run_cli({"doppler", "--preset", "tap1-urban", "--method", "fft"}).code == 1);
}

TEST_CASE("the installed binary follows the exit-code contract", "[cli]")
{
    const char *bin = std::getenv("V2VSIM_BIN");
    if (!bin)
        SKIP("V2VSIM_BIN not set");
    auto quiet = " >/dev/null 2>&1";
    auto status = [&](const std::string &args)
    {
        int rc = std::system((std::string(bin) + " " + args + quiet).c_str());
        return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    };
    CHECK(status("validate --preset tap1-highway") == 0);
    CHECK(status("validate --preset tap1-highway --set energy.tap1.db=0.02") == 1);
    CHECK(status("--version") == 0);
    CHECK(status("realize --preset tap1-highway --bogus") != 0);
}

TEST_CASE("mc-verify counts the zero-spacing identity as inside the band", "[cli]")
{
    auto r = run_cli({"mc-verify", "--preset", "tap1-urban", "--realizations", "10", "--n", "100", "--spacing", "0"});
    REQUIRE(r.code == 0);
    auto row = r.out.find("\n0,");
    REQUIRE(row != std::string::npos);
    auto line = r.out.substr(row + 1, r.out.find('\n', row + 1) - row - 1);
    CHECK(line.substr(line.rfind(',') + 1) == "1");
}
