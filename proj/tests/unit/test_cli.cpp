// SPDX-License-Identifier: Apache-2.0
//
// cbf-toolkit: complementary beam pairs for omni-directional broadcast
// Copyright (C) 2026 The cbf-toolkit Authors
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

#include "cli_harness.hpp"

#include "cbf/codebook.hpp"

#include <doctest.h>

#include <algorithm>

using namespace harness;
namespace fs = std::filesystem;

TEST_CASE("help exits 0 for every command")
{
    for (std::string cmd : {"", "search", "pattern", "variance", "simulate", "sweep-angles", "replay"})
    {
        std::vector<std::string> args;
        if (!cmd.empty())
            args.push_back(cmd);
        args.push_back("--help");
        const auto r = cli(args);
        CAPTURE(cmd);
        CHECK(r.code == 0);
        CHECK(r.out.find("Usage") != std::string::npos);
    }
}

TEST_CASE("unknown flags and missing commands fail with usage")
{
    auto r = cli({"search", "--bogus"});
    CHECK(r.code != 0);
    CHECK(r.err.find("--bogus") != std::string::npos);
    CHECK(cli({}).code != 0);
    CHECK(cli({"frobnicate"}).code != 0);
}

TEST_CASE("search writes a flat codebook for 8 elements")
{
    const auto dir = scratch("search8");
    const auto r = cli({"search", "--ula", "8", "--k", "2", "--out-dir", dir.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("wall_time_s") != std::string::npos);
    std::ifstream in(dir / "codebook.txt");
    const auto cb = cbf::read_codebook(in);
    CHECK(cb.set.composite_variance < 1e-12);
    CHECK(cb.geometry.size() == 8);
    CHECK(fs::exists(dir / "search.manifest.json"));
}

TEST_CASE("search reports a positive minimum for 3 elements")
{
    const auto dir = scratch("search3");
    const auto r = cli({"search", "--ula", "3", "--k", "2", "--out-dir", dir.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("strictly positive") != std::string::npos);
}

TEST_CASE("oversized exhaustive search names the alternative")
{
    const auto dir = scratch("search-k4");
    const auto r = cli({"search", "--ula", "8", "--k", "4", "--mode", "exhaustive", "--out-dir", dir.string()});
    CHECK(r.code != 0);
    CHECK(r.err.find("--mode randomized") != std::string::npos);
}

TEST_CASE("pattern export of the published pair")
{
    const auto dir = scratch("pattern");
    const auto r = cli({"pattern", "--ula", "8", "--phases", "0,1,1,0,0,0,0,0", "--phases", "1,0,1,0,1,1,0,0", "--svg",
                        "--out-dir", dir.string()});
    REQUIRE(r.code == 0);
    const auto abs_col = csv_column(dir / "composite.csv", 4);
    REQUIRE(abs_col.size() == 4096);
    for (double v : abs_col)
        CHECK(std::abs(v - 1.0) < 1e-12);
    const auto svg = slurp(dir / "polar.svg");
    const auto radii = svg_trace(svg, "composite", "data-r");
    REQUIRE(radii.size() == 4096);
    for (double v : radii)
        CHECK(std::abs(v - 1.0) < 1e-12);
    CHECK(svg_trace(svg, "w1", "data-r").size() == 4096);
    CHECK(r.out.find("composite: variance canonical") != std::string::npos);
}

TEST_CASE("pattern of the all-ones vector peaks at broadside")
{
    const auto dir = scratch("pattern-ones");
    REQUIRE(cli({"pattern", "--ula", "8", "--weights", "1,1,1,1,1,1,1,1", "--out-dir", dir.string()}).code == 0);
    const auto theta = csv_column(dir / "pattern_w1.csv", 1);
    const auto mag = csv_column(dir / "pattern_w1.csv", 4);
    const auto peak = std::max_element(mag.begin(), mag.end()) - mag.begin();
    CHECK(theta[static_cast<std::size_t>(peak)] == 0.0);
    CHECK(mag[static_cast<std::size_t>(peak)] == doctest::Approx(std::sqrt(8.0)));
}

TEST_CASE("pattern of the RBF basis prints its variance")
{
    const auto dir = scratch("pattern-rbf");
    const auto r = cli({"pattern", "--rbf-basis", "--out-dir", dir.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("w1: variance canonical = 0.1119316") != std::string::npos);
}

TEST_CASE("pattern input errors")
{
    const auto dir = scratch("pattern-bad");
    CHECK(cli({"pattern", "--ula", "8", "--weights", "1,x", "--out-dir", dir.string()}).code != 0);
    CHECK(cli({"pattern", "--ula", "8", "--phases", "0,1", "--out-dir", dir.string()}).code != 0);
    CHECK(cli({"pattern", "--ula", "4", "--out-dir", dir.string()}).code != 0);
    CHECK(cli({"pattern", "--codebook", (dir / "missing.txt").string(), "--out-dir", dir.string()}).code != 0);
    std::ofstream(dir / "junk.txt") << "geometry = ula\nnonsense\n";
    CHECK(cli({"pattern", "--codebook", (dir / "junk.txt").string(), "--out-dir", dir.string()}).code != 0);
}

TEST_CASE("variance report on a codebook and on a UPA")
{
    const auto dir = scratch("variance");
    REQUIRE(cli({"search", "--upa", "2x4", "--mode", "golay", "--grid-points", "64", "--out-dir", dir.string()}).code == 0);
    const auto r = cli({"variance", "--codebook", (dir / "codebook.txt").string(), "--grid-points", "64", "--phi-points",
                        "16", "--out-dir", dir.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("composite.canonical = ") != std::string::npos);
    CHECK(r.out.find("w1.pa_efficiency = 1") != std::string::npos);
}

TEST_CASE("simulate argument errors")
{
    const auto dir = scratch("sim-bad");
    CHECK(cli({"simulate", "--snr", "10:2:0", "--out-dir", dir.string()}).code != 0);
    CHECK(cli({"simulate", "--snr", "a:b:c", "--out-dir", dir.string()}).code != 0);
    CHECK(cli({"simulate", "--scheme", "omni", "--out-dir", dir.string()}).code != 0);
    CHECK(cli({"simulate", "--bits", "1001", "--out-dir", dir.string()}).code != 0);
}

TEST_CASE("number lists")
{
    CHECK(cbf::cli::parse_number_list("0:2:10") == std::vector<double>{0, 2, 4, 6, 8, 10});
    CHECK(cbf::cli::parse_number_list("0:0.5:1") == std::vector<double>{0, 0.5, 1});
    CHECK(cbf::cli::parse_number_list("45,90") == std::vector<double>{45, 90});
    CHECK_THROWS(cbf::cli::parse_number_list("0:0:1"));
    CHECK_THROWS(cbf::cli::parse_number_list(""));
}

TEST_CASE("simulate is byte-identical across runs")
{
    const auto a = scratch("sim-a"), b = scratch("sim-b");
    const std::vector<std::string> common{"simulate", "--scheme", "rbf", "--channel", "rayleigh", "--snr", "0:5:10",
                                          "--bits", "20000", "--seed", "5", "--svg"};
    auto args = common;
    args.insert(args.end(), {"--out-dir", a.string()});
    REQUIRE(cli(args).code == 0);
    args = common;
    args.insert(args.end(), {"--out-dir", b.string()});
    REQUIRE(cli(args).code == 0);
    CHECK(slurp(a / "ber.csv") == slurp(b / "ber.csv"));
    CHECK(slurp(a / "ber.svg") == slurp(b / "ber.svg"));
    CHECK(svg_trace(slurp(a / "ber.svg"), "rbf @ 0 deg", "data-ber").size() == 3);
}

TEST_CASE("config file supplies flags and the command line wins")
{
    const auto dir = scratch("config");
    std::ofstream(dir / "run.toml") << "seed = 9\n[simulate]\nbits = 4000\nsnr = \"0,3\"\nscheme = \"rbf\"\n";
    auto r = cli({"--config", (dir / "run.toml").string(), "simulate", "--snr", "1", "--out-dir", dir.string()});
    REQUIRE(r.code == 0);
    const auto snr = csv_column(dir / "ber.csv", 3);
    const auto bits = csv_column(dir / "ber.csv", 6);
    REQUIRE(snr.size() == 1);
    CHECK(snr[0] == 1.0);
    CHECK(bits[0] == 4000.0);
    CHECK(slurp(dir / "ber.csv").find("rbf,awgn") != std::string::npos);
    CHECK(slurp(dir / "simulate.manifest.json").find("\"seed\": 9") != std::string::npos);
}

TEST_CASE("replay reproduces every command")
{
    const auto src = scratch("replay-src");
    const auto s = src.string();
    REQUIRE(cli({"search", "--ula", "6", "--k", "3", "--mode", "randomized", "--budget", "300", "--seed", "4",
                 "--out-dir", s}).code == 0);
    REQUIRE(cli({"pattern", "--codebook", (src / "codebook.txt").string(), "--svg", "--grid-points", "512",
                 "--out-dir", s}).code == 0);
    REQUIRE(cli({"variance", "--rbf-basis", "--out-dir", s}).code == 0);
    REQUIRE(cli({"simulate", "--scheme", "cbf-analog", "--snr", "0:4:8", "--bits", "10000", "--out-dir", s}).code == 0);
    REQUIRE(cli({"sweep-angles", "--scheme", "rbf", "--angles", "0,90", "--snr", "3", "--bits", "10000", "--out-dir",
                 s}).code == 0);

    for (std::string cmd : {"search", "pattern", "variance", "simulate", "sweep-angles"})
    {
        const auto dst = scratch("replay-" + cmd);
        CAPTURE(cmd);
        REQUIRE(cli({"replay", (src / (cmd + ".manifest.json")).string(), "--out-dir", dst.string()}).code == 0);
        int compared = 0;
        for (const auto &e : fs::directory_iterator(dst))
        {
            if (e.path().extension() == ".json")
                continue;
            CAPTURE(e.path().filename().string());
            CHECK(slurp(e.path()) == slurp(src / e.path().filename()));
            ++compared;
        }
        CHECK(compared > 0);
    }
}
