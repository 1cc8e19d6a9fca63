// SPDX-License-Identifier: Apache-2.0
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

#include "hetcov/cli.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace hetcov;

namespace {

struct Run
{
    int code = 0;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "hetcov");
    std::ostringstream out, err;
    Run r;
    r.code = run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string scenario(const char* name)
{
    return (testing::scenario_dir() / name).string();
}

struct Csv
{
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t col(const std::string& name) const
    {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name)
                return i;
        FAIL("missing column " << name);
        return 0;
    }

    double num(std::size_t row, const std::string& name) const { return std::stod(rows.at(row).at(col(name))); }
};

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ','))
        out.push_back(cell);
    return out;
}

Csv parse_csv(const std::string& text)
{
    Csv csv;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        if (csv.header.empty())
            csv.header = split(line);
        else
            csv.rows.push_back(split(line));
    }
    return csv;
}

std::string read_file(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::filesystem::path temp_path(const std::string& name)
{
    const auto dir = std::filesystem::temp_directory_path() / "hetcov_cli_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

} // namespace

TEST_CASE("grids and sweeps")
{
    CHECK(parse_grid("1:3:1") == std::vector<double>{1, 2, 3});
    CHECK(parse_grid("-10:20:10") == std::vector<double>{-10, 0, 10, 20});
    CHECK(parse_grid("0:1:0.1").size() == 11);
    CHECK(parse_grid("5, 7.5,9") == std::vector<double>{5, 7.5, 9});
    CHECK_THROWS_AS(parse_grid("1:0:1"), ConfigError);
    CHECK_THROWS_AS(parse_grid("1:2"), ConfigError);
    CHECK_THROWS_AS(parse_grid("a,b"), ConfigError);
    CHECK_THROWS_AS(parse_grid("nan"), ConfigError);

    const SweepSpec b = parse_sweep("bias.2=1,2");
    CHECK(b.parameter == SweepParameter::bias);
    CHECK(b.bias_tier == 2);
    CHECK(b.name() == "bias2");
    CHECK(parse_sweep("cluster=1:40:1").values.size() == 40);
    CHECK_THROWS_AS(parse_sweep("colour=1"), ConfigError);
    CHECK_THROWS_AS(parse_sweep("cluster"), ConfigError);

    const NetworkScenario s = reference_scenario(Thomas{10.0});
    CHECK(apply_sweep(s, b, 7.0).tiers[1].bias == 7.0);
    CHECK(cluster_scale(apply_sweep(s, parse_sweep("cluster=3"), 3.0).cluster) == 3.0);
    CHECK(apply_sweep(s, parse_sweep("main_gain=20"), 20.0).antenna.main_gain_db == 20.0);
    CHECK_THROWS_AS(apply_sweep(s, parse_sweep("bias.5=1"), 1.0), ConfigError);
    CHECK_THROWS_AS(apply_sweep(s, parse_sweep("cluster=-1"), -1.0), ConfigError);
}

TEST_CASE("fnv1a reference values")
{
    CHECK(fnv1a("") == 0xcbf29ce484222325ull);
    CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cull);
    CHECK(fnv1a("foobar") == 0x85944171f73967e8ull);
}

TEST_CASE("association sweep: A0 non-increasing, rows normalized")
{
    const Run r = run({"association", "--scenario", scenario("table2.scenario"), "--sweep", "cluster=1:40:1"});
    REQUIRE(r.code == 0);
    const Csv csv = parse_csv(r.out);
    REQUIRE(csv.rows.size() == 40);
    for (std::size_t i = 0; i < csv.rows.size(); ++i) {
        CHECK(std::abs(csv.num(i, "total") - 1.0) < 1e-4);
        if (i > 0)
            CHECK(csv.num(i, "A0") <= csv.num(i - 1, "A0") + 1e-12);
    }

    const Run m = run({"association", "--scenario", scenario("table2_matern.scenario"), "--sweep", "cluster=5:40:5"});
    REQUIRE(m.code == 0);
    const Csv mc = parse_csv(m.out);
    for (std::size_t i = 0; i < mc.rows.size(); ++i)
        CHECK(std::abs(mc.num(i, "A0") + mc.num(i, "A1") + mc.num(i, "A2") - 1.0) < 1e-4);
}

TEST_CASE("coverage command")
{
    const Run pcp = run({"coverage", "--scenario", scenario("table2.scenario"), "--thresholds", "-10:20:5", "--snr"});
    const Run ppp =
        run({"coverage", "--scenario", scenario("table2.scenario"), "--thresholds", "-10:20:5", "--ppp-baseline"});
    REQUIRE(pcp.code == 0);
    REQUIRE(ppp.code == 0);
    const Csv a = parse_csv(pcp.out), b = parse_csv(ppp.out);
    REQUIRE(a.rows.size() == 7);
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.num(i, "P_C_snr") >= a.num(i, "P_C"));
        CHECK(a.num(i, "P_C") > b.num(i, "P_C"));
        CHECK(a.rows[i].back() == "ok");
    }
    CHECK(ppp.out.find("# tier0: absent") != std::string::npos);

    const Run gain =
        run({"coverage", "--scenario", scenario("table2.scenario"), "--thresholds", "-10:20:5", "--sweep", "main_gain=10,20"});
    REQUIRE(gain.code == 0);
    const Csv g = parse_csv(gain.out);
    REQUIRE(g.rows.size() == 14);
    for (std::size_t i = 0; i < 7; ++i)
        CHECK(g.num(i + 7, "P_C") >= g.num(i, "P_C"));
}

TEST_CASE("threshold sweep is an alias for the threshold grid")
{
    const Run a = run({"coverage", "--scenario", scenario("table2.scenario"), "--sweep", "threshold=0,5"});
    const Run b = run({"coverage", "--scenario", scenario("table2.scenario"), "--thresholds", "0,5"});
    REQUIRE(a.code == 0);
    CHECK(parse_csv(a.out).rows == parse_csv(b.out).rows);
}

TEST_CASE("simulate is byte-stable across runs and thread counts")
{
    const auto p1 = temp_path("sim1.csv"), p2 = temp_path("sim2.csv"), p8 = temp_path("sim8.csv");
    const std::vector<std::string> base{"simulate", "--scenario", scenario("table2.scenario"), "--trials", "4000",
                                        "--seed", "11", "--snr"};
    auto with = [&](const std::filesystem::path& out, const char* threads) {
        auto args = base;
        args.insert(args.end(), {"--out", out.string(), "--threads", threads});
        return run(args);
    };
    REQUIRE(with(p1, "1").code == 0);
    REQUIRE(with(p2, "1").code == 0);
    REQUIRE(with(p8, "8").code == 0);
    const std::string a = read_file(p1);
    CHECK(a == read_file(p2));
    CHECK(a == read_file(p8));
    CHECK(a.find("# seed: 11") != std::string::npos);
    CHECK(a.find("# scenario_hash: fnv1a64:") != std::string::npos);

    const Csv csv = parse_csv(a);
    for (std::size_t i = 0; i < csv.rows.size(); ++i) {
        const double p = csv.num(i, "P_C");
        const double n = csv.num(i, "n");
        CHECK(csv.num(i, "se") == doctest::Approx(std::sqrt(p * (1 - p) / n)).epsilon(1e-8));
        CHECK(csv.num(i, "P_C_snr") >= p);
    }
}

TEST_CASE("validate command")
{
    const std::string path = temp_path("sigma5.scenario").string();
    {
        std::string text = read_file(testing::scenario_dir() / "table2.scenario");
        text.replace(text.find("scale = 10"), 10, "scale = 5");
        std::ofstream(path) << text;
    }
    const Run good = run({"validate", "--scenario", path, "--trials", "100000", "--seed", "3", "--tol", "0.015"});
    CHECK(good.code == exit_code::ok);
    CHECK(good.out.find("FAIL") == std::string::npos);

    const Run bad = run({"validate", "--scenario", path, "--trials", "20000", "--corrupt-kappa", "1e6"});
    CHECK(bad.code == exit_code::validation);
    CHECK(bad.err.find("worst offender: coverage T=") != std::string::npos);

    const Run ppp = run({"validate", "--scenario", scenario("ppp_baseline.scenario"), "--trials", "50000"});
    CHECK(ppp.code == exit_code::ok);
}

TEST_CASE("exit codes")
{
    const Run missing = run({"coverage", "--scenario", "/no/such/file"});
    CHECK(missing.code == exit_code::config);
    CHECK(missing.code != exit_code::quadrature);

    const auto broken = temp_path("broken.scenario");
    {
        std::string text = read_file(testing::scenario_dir() / "table2.scenario");
        text.replace(text.find("los_prob = 0.8, 0.2"), 19, "los_prob = 0.8, 1.7");
        std::ofstream(broken) << text;
    }
    const Run invalid = run({"association", "--scenario", broken.string()});
    CHECK(invalid.code == exit_code::config);
    CHECK(invalid.err.find("tiers[2].balls.los_prob") != std::string::npos);

    CHECK(run({"coverage"}).code == exit_code::usage);
    CHECK(run({"frobnicate"}).code == exit_code::usage);
    CHECK(run({"association", "--scenario", scenario("table2.scenario"), "--sweep", "threshold=1"}).code ==
          exit_code::config);
    CHECK(run({"association", "--scenario", scenario("ppp_baseline.scenario"), "--sweep", "bias.0=1"}).code ==
          exit_code::config);
    CHECK(run({"--version"}).code == exit_code::ok);
}

TEST_CASE("plots are written on request")
{
    const auto dir = temp_path("plots");
    std::filesystem::remove_all(dir);
    const Run r = run({"association", "--scenario", scenario("table2.scenario"), "--sweep", "cluster=5:40:5", "--plot",
                       dir.string()});
    REQUIRE(r.code == 0);
    CHECK(std::filesystem::exists(dir / "association_A0.svg"));
    CHECK(read_file(dir / "association_A2.svg").find("<polyline") != std::string::npos);
}
