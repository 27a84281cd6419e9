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
#include "cbf/format.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

namespace cbf
{
    namespace
    {
        // Coarse-grid variances closer than this are treated as ties.
        constexpr double kTieTolerance = 1e-13;

        AngularGrid coarse_grid(const ArrayGeometry &geom, std::size_t points)
        {
            if (geom.kind == ArrayKind::ULA)
                return AngularGrid::azimuth(points);
            const std::size_t n_phi = 16;
            return AngularGrid::planar(n_phi, std::max<std::size_t>(points / n_phi, 8));
        }

        std::vector<double> power_on(const WeightVector &w, const ArrayGeometry &geom, const AngularGrid &grid)
        {
            return squared_magnitude(evaluate_pattern(w, geom, grid)).values;
        }

        // K^e, or nullopt past 2^63.
        std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint64_t e)
        {
            std::uint64_t r = 1;
            for (std::uint64_t i = 0; i < e; ++i)
            {
                if (r > (std::numeric_limits<std::uint64_t>::max() >> 1) / base)
                    return std::nullopt;
                r *= base;
            }
            return r;
        }

        // Candidate c -> phase indices with w[0] fixed at 0; element 1 is the most significant digit.
        std::vector<int> candidate_phases(std::uint64_t c, std::size_t n, int K)
        {
            std::vector<int> p(n, 0);
            for (std::size_t i = n; i-- > 1;)
            {
                p[i] = static_cast<int>(c % static_cast<std::uint64_t>(K));
                c /= static_cast<std::uint64_t>(K);
            }
            return p;
        }

        double variance_of_mean(const std::vector<double> &sum, double inv_count)
        {
            const double n = static_cast<double>(sum.size());
            double s1 = 0.0, s2 = 0.0;
            for (double v : sum)
            {
                const double c = v * inv_count;
                s1 += c;
                s2 += c * c;
            }
            const double m = s1 / n;
            return std::max(0.0, s2 / n - m * m);
        }

        double single_variance(const WeightVector &w, const ArrayGeometry &geom, const AngularGrid &grid)
        {
            RealGrid r{grid.phis.size(), grid.thetas.size(), power_on(w, geom, grid)};
            return pattern_variance(r);
        }

        struct ExhaustiveScan
        {
            const std::vector<std::vector<double>> &powers;
            std::size_t set_size;
            double inv_count;
            std::vector<std::size_t> current;
            std::vector<std::vector<double>> partial;
            std::vector<std::size_t> best;
            double best_var = std::numeric_limits<double>::infinity();
            bool done = false;

            ExhaustiveScan(const std::vector<std::vector<double>> &p, std::size_t s)
                : powers(p), set_size(s), inv_count(1.0 / static_cast<double>(s)), current(s),
                  partial(s + 1, std::vector<double>(p.front().size(), 0.0))
            {
            }

            void run(std::size_t depth, std::size_t start)
            {
                for (std::size_t c = start; c < powers.size() && !done; ++c)
                {
                    current[depth] = c;
                    auto &next = partial[depth + 1];
                    const auto &prev = partial[depth];
                    const auto &pc = powers[c];
                    for (std::size_t t = 0; t < next.size(); ++t)
                        next[t] = prev[t] + pc[t];
                    if (depth + 1 < set_size)
                    {
                        run(depth + 1, c);
                        continue;
                    }
                    const double var = variance_of_mean(next, inv_count);
                    if (var < best_var - kTieTolerance)
                    {
                        best_var = var;
                        best = current;
                        if (best_var < kZeroVariance)
                            done = true;
                    }
                }
            }
        };

        ComplementarySet search_exhaustive(const ArrayGeometry &geom, const SearchConfig &cfg)
        {
            const std::size_t n = geom.size();
            const auto space = checked_pow(static_cast<std::uint64_t>(cfg.K), cfg.set_size * (n - 1));
            if (!space || *space > cfg.max_exhaustive)
            {
                std::ostringstream msg;
                msg << "exhaustive search over K^(" << cfg.set_size << "(N-1)) = " << cfg.K << "^"
                    << cfg.set_size * (n - 1) << " candidate sets exceeds the limit of " << cfg.max_exhaustive
                    << "; use Randomized (--mode randomized) or GolayConstruct (--mode golay)";
                throw BudgetExceeded(msg.str());
            }
            const std::uint64_t m = *checked_pow(static_cast<std::uint64_t>(cfg.K), n - 1);
            const AngularGrid coarse = coarse_grid(geom, cfg.coarse_points);

            std::vector<std::vector<double>> powers;
            powers.reserve(m);
            for (std::uint64_t c = 0; c < m; ++c)
                powers.push_back(power_on(WeightVector::from_phases(candidate_phases(c, n, cfg.K), cfg.K), geom, coarse));

            ExhaustiveScan scan(powers, cfg.set_size);
            scan.run(0, 0);

            std::vector<std::vector<int>> phases;
            for (std::size_t c : scan.best)
                phases.push_back(candidate_phases(c, n, cfg.K));
            return ComplementarySet::from_phases(std::move(phases), cfg.K);
        }

        ComplementarySet search_randomized(const ArrayGeometry &geom, const SearchConfig &cfg)
        {
            if (cfg.budget == 0)
                throw std::invalid_argument("randomized search needs a positive budget");
            const std::size_t n = geom.size();
            const AngularGrid coarse = coarse_grid(geom, cfg.coarse_points);
            std::mt19937_64 rng(cfg.seed);
            std::uniform_int_distribution<int> digit(0, cfg.K - 1);
            const double inv_count = 1.0 / static_cast<double>(cfg.set_size);

            std::vector<std::vector<int>> best;
            double best_var = std::numeric_limits<double>::infinity();
            std::vector<double> sum;
            for (std::uint64_t trial = 0; trial < cfg.budget; ++trial)
            {
                std::vector<std::vector<int>> set(cfg.set_size, std::vector<int>(n, 0));
                for (auto &p : set)
                    for (std::size_t i = 1; i < n; ++i)
                        p[i] = digit(rng);
                std::sort(set.begin(), set.end());

                sum.assign(coarse.size(), 0.0);
                for (const auto &p : set)
                {
                    const auto pw = power_on(WeightVector::from_phases(p, cfg.K), geom, coarse);
                    for (std::size_t t = 0; t < sum.size(); ++t)
                        sum[t] += pw[t];
                }
                const double var = variance_of_mean(sum, inv_count);
                if (var < best_var)
                {
                    best_var = var;
                    best = std::move(set);
                    if (best_var < kZeroVariance)
                        break;
                }
            }
            return ComplementarySet::from_phases(std::move(best), cfg.K);
        }

        std::vector<int> to_phases(const std::vector<int> &pm)
        {
            std::vector<int> p(pm.size());
            std::transform(pm.begin(), pm.end(), p.begin(), [](int v) { return v > 0 ? 0 : 1; });
            return p;
        }

        using Pair = std::pair<std::vector<int>, std::vector<int>>;

        Pair doubled(const Pair &ab)
        {
            const auto &[a, b] = ab;
            std::vector<int> x(a), y(a);
            x.insert(x.end(), b.begin(), b.end());
            for (int v : b)
                y.push_back(-v);
            return {x, y};
        }

        // Turyn product: length n (a, b) with length m (c, d) -> length n m.
        Pair turyn(const Pair &ab, const Pair &cd)
        {
            const auto &[a, b] = ab;
            const auto &[c, d] = cd;
            const std::size_t n = a.size(), m = c.size();
            std::vector<int> x(n * m), y(n * m);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < m; ++j)
                {
                    const int p = (c[j] + d[j]) / 2;
                    const int q = (c[j] - d[j]) / 2;
                    x[i * m + j] = a[i] * p + b[n - 1 - i] * q;
                    y[i * m + j] = b[i] * p - a[n - 1 - i] * q;
                }
            return {x, y};
        }

        const Pair kGolay10{{1, 1, -1, 1, -1, 1, -1, -1, 1, 1}, {1, 1, -1, 1, 1, 1, 1, 1, -1, -1}};
        const Pair kGolay26{{1, 1, 1, 1, -1, 1, 1, -1, -1, 1, -1, 1, -1, 1, -1, -1, 1, -1, 1, 1, 1, -1, -1, 1, 1, 1},
                            {1, 1, 1, 1, -1, 1, 1, -1, -1, 1, -1, 1, 1, 1, 1, 1, -1, 1, -1, -1, -1, 1, 1, -1, -1, -1}};

        bool golay_length(std::size_t n)
        {
            if (n == 0)
                return false;
            for (std::size_t f : {26u, 10u, 2u})
                while (n % f == 0)
                    n /= f;
            return n == 1;
        }
    }

    std::string to_string(SearchMode m)
    {
        switch (m)
        {
        case SearchMode::Exhaustive: return "exhaustive";
        case SearchMode::Randomized: return "randomized";
        case SearchMode::GolayConstruct: return "golay";
        }
        return "unknown";
    }

    SearchMode parse_search_mode(const std::string &s)
    {
        if (s == "exhaustive")
            return SearchMode::Exhaustive;
        if (s == "randomized")
            return SearchMode::Randomized;
        if (s == "golay")
            return SearchMode::GolayConstruct;
        throw std::invalid_argument("unknown search mode '" + s + "' (exhaustive, randomized, golay)");
    }

    ComplementarySet ComplementarySet::from_phases(std::vector<std::vector<int>> phases, int K)
    {
        ComplementarySet s;
        s.alphabet_size = K;
        for (const auto &p : phases)
            s.vectors.push_back(WeightVector::from_phases(p, K));
        s.phases = std::move(phases);
        return s;
    }

    void ComplementarySet::rescore(const ArrayGeometry &geom, const AngularGrid &grid)
    {
        composite_variance = cbf::composite_variance(vectors, geom, grid);
    }

    ComplementarySet search_complementary(const ArrayGeometry &geom, const SearchConfig &cfg)
    {
        geom.validate();
        if (cfg.K < 2)
            throw std::invalid_argument("search: alphabet size K must be >= 2");
        if (cfg.set_size != 2 && cfg.set_size != 3)
            throw std::invalid_argument("search: set size must be 2 or 3");
        if (cfg.coarse_points < 16)
            throw std::invalid_argument("search: coarse grid needs at least 16 points");

        ComplementarySet result;
        switch (cfg.mode)
        {
        case SearchMode::Exhaustive: result = search_exhaustive(geom, cfg); break;
        case SearchMode::Randomized: result = search_randomized(geom, cfg); break;
        case SearchMode::GolayConstruct:
            if (cfg.set_size != 2)
                throw std::invalid_argument("search: the Golay construction yields pairs only");
            result = golay_construct(geom);
            break;
        }
        result.rescore(geom, cfg.grid ? *cfg.grid : AngularGrid::default_for(geom));
        return result;
    }

    std::pair<std::vector<int>, std::vector<int>> golay_pair(std::size_t n)
    {
        if (n == 1)
            return {{1}, {1}};
        if (!golay_length(n))
            throw UnsupportedLength("no binary Golay construction for length " + std::to_string(n) +
                                    " (supported: 2^a 10^b 26^c)");
        Pair p{{1}, {1}};
        std::size_t rest = n;
        for (const auto &[f, base] : {std::pair{std::size_t{26}, &kGolay26}, std::pair{std::size_t{10}, &kGolay10}})
            while (rest % f == 0)
            {
                p = p.first.size() == 1 ? *base : turyn(p, *base);
                rest /= f;
            }
        while (rest % 2 == 0)
        {
            p = doubled(p);
            rest /= 2;
        }
        return p;
    }

    ComplementarySet golay_construct(std::size_t n)
    {
        if (n < 2)
            throw UnsupportedLength("Golay construction needs at least 2 elements");
        const auto [a, b] = golay_pair(n);
        auto set = ComplementarySet::from_phases({to_phases(a), to_phases(b)}, 2);
        const auto geom = ArrayGeometry::ula(n);
        set.rescore(geom, AngularGrid::default_for(geom));
        return set;
    }

    ComplementarySet golay_construct(const ArrayGeometry &geom)
    {
        geom.validate();
        if (geom.kind == ArrayKind::ULA || geom.n_x == 1 || geom.n_y == 1)
        {
            auto set = golay_construct(geom.size());
            set.rescore(geom, AngularGrid::default_for(geom));
            return set;
        }

        // From Golay pairs (a, b) along x and (c, d) along y:
        //   X = ((a + b) (x) c + (a - b) (x) d) / 2
        //   Y = ((a + b) (x) rev(d) - (a - b) (x) rev(c)) / 2
        if (!golay_length(geom.n_x) || !golay_length(geom.n_y))
            throw UnsupportedLength("no 2-D Golay construction for a " + std::to_string(geom.n_x) + "x" +
                                    std::to_string(geom.n_y) + " array (each side must be 2^a 10^b 26^c)");
        const auto [a, b] = golay_pair(geom.n_x);
        const auto [c, d] = golay_pair(geom.n_y);
        const std::size_t ny = geom.n_y;

        std::vector<int> x(geom.size()), y(geom.size());
        for (std::size_t i = 0; i < geom.n_x; ++i)
            for (std::size_t j = 0; j < ny; ++j)
            {
                const int sum = (a[i] + b[i]) / 2, diff = (a[i] - b[i]) / 2;
                x[i * ny + j] = sum * c[j] + diff * d[j];
                y[i * ny + j] = sum * d[ny - 1 - j] - diff * c[ny - 1 - j];
            }
        auto set = ComplementarySet::from_phases({to_phases(x), to_phases(y)}, 2);
        set.rescore(geom, AngularGrid::default_for(geom));
        return set;
    }

    WeightVector rbf_reference_basis()
    {
        const double r = std::numbers::sqrt2 / 2.0;
        const double s = std::numbers::sqrt2;
        WeightVector w;
        w.coeffs = {cdouble(-s, 0), cdouble(-1, 1), cdouble(0, s), cdouble(1, -1),
                    cdouble(-1, 1), cdouble(1, -1), cdouble(s, 0), cdouble(1, 1)};
        for (auto &c : w.coeffs)
            c *= r;
        return w;
    }

    WeightVector min_variance_basis(const ArrayGeometry &geom, int K, std::uint64_t seed)
    {
        geom.validate();
        if (K < 2)
            throw std::invalid_argument("min_variance_basis: K must be >= 2");
        const std::size_t n = geom.size();
        const AngularGrid coarse = coarse_grid(geom, 512);

        const auto space = checked_pow(static_cast<std::uint64_t>(K), n - 1);
        if (space && *space <= (std::uint64_t{1} << 16))
        {
            std::vector<int> best;
            double best_var = std::numeric_limits<double>::infinity();
            for (std::uint64_t c = 0; c < *space; ++c)
            {
                auto p = candidate_phases(c, n, K);
                const double v = single_variance(WeightVector::from_phases(p, K), geom, coarse);
                if (v < best_var - kTieTolerance)
                {
                    best_var = v;
                    best = std::move(p);
                }
            }
            return WeightVector::from_phases(best, K);
        }

        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> digit(0, K - 1);
        std::vector<int> best;
        double best_var = std::numeric_limits<double>::infinity();
        for (int restart = 0; restart < 4; ++restart)
        {
            std::vector<int> p(n, 0);
            for (std::size_t i = 1; i < n; ++i)
                p[i] = digit(rng);
            double cur = single_variance(WeightVector::from_phases(p, K), geom, coarse);
            for (int sweep = 0; sweep < 50; ++sweep)
            {
                bool improved = false;
                for (std::size_t i = 1; i < n; ++i)
                {
                    const int keep = p[i];
                    for (int k = 0; k < K; ++k)
                    {
                        if (k == keep)
                            continue;
                        p[i] = k;
                        const double v = single_variance(WeightVector::from_phases(p, K), geom, coarse);
                        if (v < cur - kTieTolerance)
                        {
                            cur = v;
                            improved = true;
                            break;
                        }
                        p[i] = keep;
                    }
                }
                if (!improved)
                    break;
            }
            if (cur < best_var)
            {
                best_var = cur;
                best = p;
            }
        }
        return WeightVector::from_phases(best, K);
    }

    namespace
    {
        WeightVector default_rbf_basis(const ArrayGeometry &geom)
        {
            if (geom.kind == ArrayKind::ULA && geom.size() == 8)
                return rbf_reference_basis();
            return min_variance_basis(geom, RbfSequence::kAlphabet, 0);
        }
    }

    RbfSequence::RbfSequence(const ArrayGeometry &geom, std::uint64_t seed)
        : RbfSequence(default_rbf_basis(geom), seed)
    {
    }

    RbfSequence::RbfSequence(WeightVector basis, std::uint64_t seed) : basis_(std::move(basis)), rng_(seed)
    {
        if (basis_.coeffs.empty())
            throw std::invalid_argument("RbfSequence: empty basis");
    }

    WeightVector RbfSequence::next()
    {
        std::uniform_int_distribution<int> digit(0, kAlphabet - 1);
        WeightVector w = basis_;
        for (auto &c : w.coeffs)
            c *= unit_phasor(digit(rng_), kAlphabet);
        return w;
    }

    std::vector<WeightVector> rbf_sequence(const ArrayGeometry &geom, std::size_t count, std::uint64_t seed)
    {
        if (count == 0)
            throw std::invalid_argument("rbf_sequence: count must be >= 1");
        RbfSequence seq(geom, seed);
        std::vector<WeightVector> out;
        out.reserve(count);
        for (std::size_t i = 0; i < count; ++i)
            out.push_back(seq.next());
        return out;
    }

    std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_subarrays(const ArrayGeometry &geom)
    {
        geom.validate();
        const std::size_t n = geom.size();
        if (n % 2 != 0)
            throw std::invalid_argument("split_subarrays: odd element count " + std::to_string(n) +
                                        " (use a three-beam grouping)");
        std::pair<std::vector<std::size_t>, std::vector<std::size_t>> halves;
        for (std::size_t i = 0; i < n; ++i)
            (i < n / 2 ? halves.first : halves.second).push_back(i);
        return halves;
    }

    void write_codebook(std::ostream &os, const Codebook &cb)
    {
        const auto &g = cb.geometry;
        os << "# cbf codebook v1\n";
        os << "geometry = " << (g.kind == ArrayKind::ULA ? "ula" : "upa") << '\n';
        os << "n_x = " << g.n_x << '\n';
        os << "n_y = " << g.n_y << '\n';
        os << "d_x = " << format_double(g.d_x) << '\n';
        os << "d_y = " << format_double(g.d_y) << '\n';
        os << "N = " << g.size() << '\n';
        os << "K = " << cb.set.alphabet_size << '\n';
        os << "mode = " << to_string(cb.mode) << '\n';
        os << "seed = " << cb.seed << '\n';
        os << "composite_variance = " << format_double(cb.set.composite_variance) << '\n';
        for (const auto &p : cb.set.phases)
        {
            os << "vector =";
            for (int v : p)
                os << ' ' << v;
            os << '\n';
        }
    }

    Codebook read_codebook(std::istream &is)
    {
        std::map<std::string, std::string> kv;
        std::vector<std::string> vectors;
        std::string line;
        int lineno = 0;
        while (std::getline(is, line))
        {
            ++lineno;
            if (line.empty() || line[0] == '#')
                continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("codebook line " + std::to_string(lineno) + ": expected 'key = value'");
            auto trim = [](std::string s) {
                const auto b = s.find_first_not_of(" \t\r");
                const auto e = s.find_last_not_of(" \t\r");
                return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
            };
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key == "vector")
                vectors.push_back(value);
            else
                kv[key] = value;
        }
        auto need = [&](const char *key) -> const std::string & {
            auto it = kv.find(key);
            if (it == kv.end())
                throw std::invalid_argument(std::string("codebook: missing key '") + key + "'");
            return it->second;
        };

        Codebook cb;
        const std::string &kind = need("geometry");
        if (kind != "ula" && kind != "upa")
            throw std::invalid_argument("codebook: geometry must be ula or upa");
        cb.geometry.kind = kind == "ula" ? ArrayKind::ULA : ArrayKind::UPA;
        cb.geometry.n_x = std::stoul(need("n_x"));
        cb.geometry.n_y = std::stoul(need("n_y"));
        cb.geometry.d_x = parse_double(need("d_x"));
        cb.geometry.d_y = parse_double(need("d_y"));
        cb.geometry.validate();
        if (std::stoul(need("N")) != cb.geometry.size())
            throw std::invalid_argument("codebook: N does not match n_x * n_y");
        const int K = std::stoi(need("K"));
        if (K < 2)
            throw std::invalid_argument("codebook: K must be >= 2");
        cb.mode = parse_search_mode(need("mode"));
        cb.seed = std::stoull(need("seed"));

        if (vectors.size() < 2 || vectors.size() > 3)
            throw std::invalid_argument("codebook: expected 2 or 3 vectors, got " + std::to_string(vectors.size()));
        std::vector<std::vector<int>> phases;
        for (const auto &v : vectors)
        {
            std::istringstream ss(v);
            std::vector<int> p;
            int x;
            while (ss >> x)
            {
                if (x < 0 || x >= K)
                    throw std::invalid_argument("codebook: phase index " + std::to_string(x) + " outside [0, K)");
                p.push_back(x);
            }
            if (!ss.eof())
                throw std::invalid_argument("codebook: malformed vector '" + v + "'");
            if (p.size() != cb.geometry.size())
                throw std::invalid_argument("codebook: vector length " + std::to_string(p.size()) +
                                            " does not match N = " + std::to_string(cb.geometry.size()));
            phases.push_back(std::move(p));
        }
        cb.set = ComplementarySet::from_phases(std::move(phases), K);
        cb.set.composite_variance = parse_double(need("composite_variance"));
        return cb;
    }
}
