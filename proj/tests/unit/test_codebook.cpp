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

#include "cbf/codebook.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <set>
#include <sstream>

using namespace cbf;

namespace
{
    std::vector<oracle::cd> pm_to_complex(const std::vector<int> &pm)
    {
        return {pm.begin(), pm.end()};
    }

    void check_flat(const ComplementarySet &s, const ArrayGeometry &geom, const AngularGrid &grid)
    {
        const auto p1 = evaluate_pattern(s.vectors[0], geom, grid);
        const auto p2 = evaluate_pattern(s.vectors[1], geom, grid);
        for (std::size_t i = 0; i < p1.gains.size(); ++i)
            REQUIRE(std::abs(std::norm(p1.gains[i]) + std::norm(p2.gains[i]) - 2.0) < 1e-9);
    }
}

TEST_CASE("exhaustive search, 8-element ULA, K = 2")
{
    const auto geom = ArrayGeometry::ula(8);
    SearchConfig cfg;
    const auto s = search_complementary(geom, cfg);
    REQUIRE(s.vectors.size() == 2);
    CHECK(s.composite_variance < kZeroVariance);
    check_flat(s, geom, AngularGrid::azimuth(4096));
    CHECK(oracle::golay_residual(s.vectors[0].coeffs, s.vectors[1].coeffs) < 1e-9);
    for (const auto &p : s.phases)
        CHECK(p[0] == 0);
    CHECK(s.phases[0] <= s.phases[1]);
}

TEST_CASE("exhaustive search, 2-element ULA")
{
    const auto s = search_complementary(ArrayGeometry::ula(2), SearchConfig{});
    CHECK(s.phases == std::vector<std::vector<int>>{{0, 0}, {0, 1}});
    CHECK(s.composite_variance < kZeroVariance);
}

TEST_CASE("exhaustive search, 3-element ULA has no flat pair")
{
    const auto s = search_complementary(ArrayGeometry::ula(3), SearchConfig{});
    const double brute = oracle::brute_min_pair_variance(3, 2, 0.5, 4096);
    CHECK(brute > 1e-3);
    CHECK(s.composite_variance == doctest::Approx(brute).epsilon(1e-9));
}

TEST_CASE("exhaustive minimum equals the brute-force oracle for N = 2, 4")
{
    for (std::size_t n : {2u, 4u})
    {
        const double brute = oracle::brute_min_pair_variance(n, 2, 0.5, 1024);
        SearchConfig cfg;
        cfg.grid = AngularGrid::azimuth(1024);
        const auto s = search_complementary(ArrayGeometry::ula(n), cfg);
        CHECK(brute < kZeroVariance);
        CHECK(std::abs(s.composite_variance - brute) < 1e-15);
    }
}

TEST_CASE("phase fixing does not change the minimum")
{
    for (std::size_t n : {2u, 3u, 4u})
    {
        const double full = oracle::brute_min_pair_variance(n, 2, 0.5, 512);
        const double fixed = oracle::brute_min_pair_variance(n, 2, 0.5, 512, true);
        CHECK(fixed == doctest::Approx(full).epsilon(1e-9).scale(1e-12));
    }
    const double full3 = oracle::brute_min_pair_variance(3, 3, 0.5, 256);
    const double fixed3 = oracle::brute_min_pair_variance(3, 3, 0.5, 256, true);
    CHECK(fixed3 == doctest::Approx(full3).epsilon(1e-9).scale(1e-12));
}

TEST_CASE("search is never worse than the Golay construction")
{
    for (std::size_t n : {2u, 4u, 8u})
    {
        const auto s = search_complementary(ArrayGeometry::ula(n), SearchConfig{});
        CHECK(s.composite_variance <= golay_construct(n).composite_variance + 1e-15);
    }
}

TEST_CASE("exhaustive budget is enforced")
{
    SearchConfig cfg;
    cfg.K = 4;
    try
    {
        search_complementary(ArrayGeometry::ula(8), cfg);
        FAIL("expected BudgetExceeded");
    }
    catch (const BudgetExceeded &e)
    {
        const std::string msg = e.what();
        CHECK(msg.find("--mode randomized") != std::string::npos);
        CHECK(msg.find("--mode golay") != std::string::npos);
    }
    CHECK_THROWS_AS(search_complementary(ArrayGeometry::ula(64), SearchConfig{}), BudgetExceeded);
}

TEST_CASE("invalid search configurations")
{
    SearchConfig cfg;
    cfg.K = 1;
    CHECK_THROWS_AS(search_complementary(ArrayGeometry::ula(4), cfg), std::invalid_argument);
    cfg = {};
    cfg.set_size = 4;
    CHECK_THROWS_AS(search_complementary(ArrayGeometry::ula(4), cfg), std::invalid_argument);
    cfg = {};
    cfg.mode = SearchMode::Randomized;
    cfg.budget = 0;
    CHECK_THROWS_AS(search_complementary(ArrayGeometry::ula(4), cfg), std::invalid_argument);
}

TEST_CASE("randomized search is reproducible and finds flat pairs")
{
    SearchConfig cfg;
    cfg.mode = SearchMode::Randomized;
    cfg.budget = 20000;
    cfg.seed = 42;
    const auto a = search_complementary(ArrayGeometry::ula(4), cfg);
    const auto b = search_complementary(ArrayGeometry::ula(4), cfg);
    CHECK(a.phases == b.phases);
    CHECK(a.composite_variance < kZeroVariance);

    cfg.K = 4;
    cfg.budget = 2000;
    const auto c = search_complementary(ArrayGeometry::ula(6), cfg);
    const auto d = search_complementary(ArrayGeometry::ula(6), cfg);
    CHECK(c.phases == d.phases);
    CHECK(c.alphabet_size == 4);
}

TEST_CASE("three-vector sets for odd hybrid grouping")
{
    SearchConfig cfg;
    cfg.set_size = 3;
    const auto geom = ArrayGeometry::ula(3);
    const auto s = search_complementary(geom, cfg);
    REQUIRE(s.vectors.size() == 3);
    CHECK(s.composite_variance == doctest::Approx(composite_variance(s.vectors, geom, AngularGrid::azimuth(4096))));
    CHECK(s.phases[0] <= s.phases[1]);
    CHECK(s.phases[1] <= s.phases[2]);
}

TEST_CASE("stored variance is recomputable")
{
    const auto geom = ArrayGeometry::ula(5);
    const auto s = search_complementary(geom, SearchConfig{});
    CHECK(std::abs(s.composite_variance - composite_variance(s.vectors, geom, AngularGrid::azimuth(4096))) <= 1e-12);
    for (const auto &w : s.vectors)
        for (auto c : w.coeffs)
            CHECK(std::abs(std::abs(c) - 1.0) < 1e-15);
}

TEST_CASE("Golay construction")
{
    SUBCASE("doubling base cases")
    {
        const auto two = golay_pair(2);
        CHECK(two.first == std::vector<int>{1, 1});
        CHECK(two.second == std::vector<int>{1, -1});
        const auto four = golay_pair(4);
        CHECK(four.first == std::vector<int>{1, 1, 1, -1});
        CHECK(four.second == std::vector<int>{1, 1, -1, 1});
    }
    SUBCASE("autocorrelation sums vanish for every supported length tried")
    {
        for (std::size_t n : {2u, 4u, 8u, 10u, 16u, 20u, 26u, 32u, 40u, 52u, 64u, 100u, 128u, 260u})
        {
            const auto [a, b] = golay_pair(n);
            REQUIRE(a.size() == n);
            CHECK(oracle::golay_residual(pm_to_complex(a), pm_to_complex(b)) < 1e-9);
        }
    }
    SUBCASE("flat composite on ULAs")
    {
        for (std::size_t n : {2u, 4u, 16u, 10u, 26u})
        {
            const auto s = golay_construct(n);
            CHECK(s.composite_variance < kZeroVariance);
            check_flat(s, ArrayGeometry::ula(n), AngularGrid::azimuth(2048));
        }
    }
    SUBCASE("unsupported lengths")
    {
        for (std::size_t n : {3u, 5u, 7u, 12u, 1u})
            CHECK_THROWS_AS(golay_construct(n), UnsupportedLength);
    }
}

TEST_CASE("2-D Golay construction gives flat UPA composites")
{
    for (auto [nx, ny] : std::vector<std::pair<std::size_t, std::size_t>>{{4, 4}, {2, 8}, {8, 2}, {4, 2}, {10, 4}, {2, 10}, {1, 8}, {10, 10}, {16, 10}})
    {
        const auto geom = ArrayGeometry::upa(nx, ny);
        const auto s = golay_construct(geom);
        CAPTURE(nx);
        CAPTURE(ny);
        CHECK(s.composite_variance < kZeroVariance);
        check_flat(s, geom, AngularGrid::planar(30, 60));
        const std::vector<oracle::cd> x(s.vectors[0].coeffs.begin(), s.vectors[0].coeffs.end());
        const std::vector<oracle::cd> y(s.vectors[1].coeffs.begin(), s.vectors[1].coeffs.end());
        CHECK(oracle::golay_residual_2d(x, y, nx, ny) < 1e-9);
    }
    CHECK_THROWS_AS(golay_construct(ArrayGeometry::upa(3, 3)), UnsupportedLength);
    CHECK_THROWS_AS(golay_construct(ArrayGeometry::upa(3, 2)), UnsupportedLength);

    SearchConfig cfg;
    cfg.mode = SearchMode::GolayConstruct;
    cfg.grid = AngularGrid::planar(20, 40);
    CHECK(search_complementary(ArrayGeometry::upa(4, 4), cfg).composite_variance < kZeroVariance);
}

TEST_CASE("small UPA exhaustive search")
{
    const auto geom = ArrayGeometry::upa(2, 2);
    SearchConfig cfg;
    cfg.grid = AngularGrid::planar(30, 60);
    const auto s = search_complementary(geom, cfg);
    CHECK(s.composite_variance < kZeroVariance);
}

TEST_CASE("split_subarrays")
{
    using V = std::vector<std::size_t>;
    auto s8 = split_subarrays(ArrayGeometry::ula(8));
    CHECK(s8.first == V{0, 1, 2, 3});
    CHECK(s8.second == V{4, 5, 6, 7});
    auto s2 = split_subarrays(ArrayGeometry::ula(2));
    CHECK(s2.first == V{0});
    CHECK(s2.second == V{1});
    auto s24 = split_subarrays(ArrayGeometry::upa(2, 4));
    CHECK(s24.first == V{0, 1, 2, 3});
    CHECK(s24.second == V{4, 5, 6, 7});
    CHECK_THROWS_AS(split_subarrays(ArrayGeometry::ula(7)), std::invalid_argument);
}

TEST_CASE("RBF sequences")
{
    const auto geom = ArrayGeometry::ula(8);
    SUBCASE("unit modulus and deterministic")
    {
        const auto a = rbf_sequence(geom, 1, 99);
        const auto b = rbf_sequence(geom, 1, 99);
        REQUIRE(a.size() == 1);
        CHECK(a[0] == b[0]);
        for (auto c : a[0].coeffs)
            CHECK(std::abs(std::abs(c) - 1.0) < 1e-12);
        CHECK(rbf_sequence(geom, 5, 1)[4] == rbf_sequence(geom, 5, 1)[4]);
        CHECK(!(rbf_sequence(geom, 3, 1)[2] == rbf_sequence(geom, 3, 2)[2]));
    }
    SUBCASE("zero count is rejected")
    {
        CHECK_THROWS_AS(rbf_sequence(geom, 0, 1), std::invalid_argument);
    }
    SUBCASE("long-run power is equal in every direction")
    {
        const auto seq = rbf_sequence(geom, 10000, 2024);
        const auto grid = AngularGrid::azimuth(72);
        std::vector<double> avg(grid.thetas.size(), 0.0);
        for (const auto &w : seq)
        {
            const auto p = squared_magnitude(evaluate_pattern(w, geom, grid));
            for (std::size_t i = 0; i < avg.size(); ++i)
                avg[i] += p.values[i];
        }
        double mean = 0.0;
        for (auto &v : avg)
            mean += (v /= static_cast<double>(seq.size()));
        mean /= static_cast<double>(avg.size());
        for (double v : avg)
            CHECK(std::abs(v - mean) < 0.05 * mean);
    }
    SUBCASE("other sizes search their own basis")
    {
        for (std::size_t n : {4u, 12u})
        {
            const auto g = ArrayGeometry::ula(n);
            const auto seq = rbf_sequence(g, 3, 5);
            for (const auto &w : seq)
            {
                REQUIRE(w.size() == n);
                for (auto c : w.coeffs)
                    CHECK(std::abs(std::abs(c) - 1.0) < 1e-12);
            }
            // The searched basis beats the all-ones beam.
            const auto grid = AngularGrid::azimuth(1024);
            const auto basis = min_variance_basis(g, 8, 0);
            CHECK(pattern_variance(evaluate_pattern(basis, g, grid)) <
                  pattern_variance(evaluate_pattern(WeightVector{CVector(n, 1.0)}, g, grid)));
        }
    }
}

TEST_CASE("codebook file round-trips bit-exactly")
{
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial)
    {
        std::uniform_int_distribution<int> kdist(2, 9), ndist(2, 12);
        const int K = kdist(rng);
        const std::size_t n = static_cast<std::size_t>(ndist(rng));
        std::uniform_int_distribution<int> ph(0, K - 1);
        std::vector<std::vector<int>> phases(trial % 3 == 0 ? 3 : 2, std::vector<int>(n));
        for (auto &p : phases)
            for (auto &v : p)
                v = ph(rng);
        Codebook cb{ArrayGeometry::ula(n, 0.1 + 0.37 * trial), SearchMode::Randomized, rng(),
                    ComplementarySet::from_phases(phases, K)};
        cb.set.composite_variance = std::uniform_real_distribution<double>(0, 1)(rng);

        std::ostringstream first;
        write_codebook(first, cb);
        std::istringstream in(first.str());
        const Codebook back = read_codebook(in);
        std::ostringstream second;
        write_codebook(second, back);
        CHECK(first.str() == second.str());
        CHECK(back.set.phases == phases);
        CHECK(back.set.composite_variance == cb.set.composite_variance);
        CHECK(back.geometry == cb.geometry);
    }
}

TEST_CASE("malformed codebook files")
{
    auto parse = [](const std::string &s) {
        std::istringstream in(s);
        return read_codebook(in);
    };
    const std::string head = "geometry = ula\nn_x = 4\nn_y = 1\nd_x = 0.5\nd_y = 0.5\nN = 4\nK = 2\nmode = exhaustive\n"
                             "seed = 0\ncomposite_variance = 0\n";
    CHECK_NOTHROW(parse(head + "vector = 0 0 0 1\nvector = 0 0 1 0\n"));
    CHECK_THROWS_AS(parse(head + "vector = 0 0 0 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse(head + "vector = 0 0 0 2\nvector = 0 0 1 0\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse(head + "vector = 0 0 0\nvector = 0 0 1 0\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse(head + "vector = 0 0 x 1\nvector = 0 0 1 0\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("geometry = ula\nthis line is broken\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("n_x = 4\n"), std::invalid_argument);
}
