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

#ifndef CBF_CODEBOOK_HPP
#define CBF_CODEBOOK_HPP

#include "cbf/array.hpp"
#include "cbf/pattern.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cbf
{
    // Threshold below which a composite variance counts as exactly zero.
    inline constexpr double kZeroVariance = 1e-12;

    // Exhaustive search space is too large for the configured limit.
    class BudgetExceeded : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // No binary Golay construction is known for the requested length.
    class UnsupportedLength : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    enum class SearchMode
    {
        Exhaustive,
        Randomized,
        GolayConstruct
    };

    std::string to_string(SearchMode m);
    SearchMode parse_search_mode(const std::string &s);

    // Two (or three, for an odd hybrid grouping) unit-modulus weight vectors drawn from
    // the alphabet exp(j 2 pi k / K). phases[v][i] is the alphabet index of vectors[v][i].
    struct ComplementarySet
    {
        std::vector<WeightVector> vectors;
        std::vector<std::vector<int>> phases;
        double composite_variance = 0.0;
        int alphabet_size = 2;

        static ComplementarySet from_phases(std::vector<std::vector<int>> phases, int K);

        // Recompute composite_variance on the given grid.
        void rescore(const ArrayGeometry &geom, const AngularGrid &grid);
    };

    struct SearchConfig
    {
        int K = 2;
        SearchMode mode = SearchMode::Exhaustive;
        std::uint64_t budget = 1u << 20; // candidate sets evaluated in Randomized mode
        std::optional<AngularGrid> grid; // final scoring grid; AngularGrid::default_for(geom) if empty
        std::uint64_t seed = 0;
        std::size_t set_size = 2;
        std::size_t coarse_points = 512;
        // Exhaustive requires K^(set_size (N - 1)) <= this after fixing w[0] = 1.
        std::uint64_t max_exhaustive = std::uint64_t{1} << 24;
    };

    // Complementary beam search.
    //
    // Exhaustive scans every unordered set of candidate vectors (first coefficient fixed to 1,
    // since |g| does not see a global phase) in lexicographic order of phase indices, scoring
    // each on a coarse grid. It stops at the first set whose composite variance is below
    // kZeroVariance; otherwise the lexicographically first minimum wins. Randomized draws
    // cfg.budget sets from a seeded generator. GolayConstruct returns the binary Golay
    // construction for the geometry. The winner is re-scored on the full grid.
    ComplementarySet search_complementary(const ArrayGeometry &geom, const SearchConfig &cfg);

    // Binary Golay pair of length n as +-1 sequences. Supports n = 2^a 10^b 26^c.
    std::pair<std::vector<int>, std::vector<int>> golay_pair(std::size_t n);

    // Golay pair for an n-element ULA (d = lambda/2), scored on the default grid.
    ComplementarySet golay_construct(std::size_t n);

    // Two-dimensional Golay array pair for a UPA, flattened row-major. Each side must be 1 or a
    // supported Golay length.
    ComplementarySet golay_construct(const ArrayGeometry &geom);

    // The 8-element random-beamforming basis vector with its fixed published coefficients.
    WeightVector rbf_reference_basis();

    // Unit-modulus vector from the K-phase alphabet with minimal single-pattern variance.
    // Exhaustive for small spaces, otherwise seeded coordinate descent.
    WeightVector min_variance_basis(const ArrayGeometry &geom, int K = 8, std::uint64_t seed = 0);

    // Random-beamforming pattern source: each call to next() returns the basis vector with
    // i.i.d. per-element phases drawn uniformly from the 8-phase alphabet.
    class RbfSequence
    {
    public:
        static constexpr int kAlphabet = 8;

        RbfSequence(const ArrayGeometry &geom, std::uint64_t seed);
        RbfSequence(WeightVector basis, std::uint64_t seed);

        WeightVector next();
        const WeightVector &basis() const { return basis_; }

    private:
        WeightVector basis_;
        std::mt19937_64 rng_;
    };

    std::vector<WeightVector> rbf_sequence(const ArrayGeometry &geom, std::size_t count, std::uint64_t seed);

    // First and second halves of the element indices (row-major for a UPA).
    std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_subarrays(const ArrayGeometry &geom);

    // Key-value codebook file.
    struct Codebook
    {
        ArrayGeometry geometry;
        SearchMode mode = SearchMode::Exhaustive;
        std::uint64_t seed = 0;
        ComplementarySet set;
    };

    void write_codebook(std::ostream &os, const Codebook &cb);
    Codebook read_codebook(std::istream &is);
}

#endif
