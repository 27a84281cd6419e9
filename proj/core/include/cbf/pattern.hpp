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

#ifndef CBF_PATTERN_HPP
#define CBF_PATTERN_HPP

#include "cbf/array.hpp"

#include <iosfwd>
#include <span>
#include <vector>

namespace cbf
{
    // One complex coefficient per array element (row-major for a UPA).
    struct WeightVector
    {
        CVector coeffs;

        std::size_t size() const { return coeffs.size(); }

        // coeffs[i] = exp(j 2 pi phases[i] / K)
        static WeightVector from_phases(std::span<const int> phases, int K);

        bool operator==(const WeightVector &) const = default;
    };

    enum class Normalization
    {
        Raw,
        PerElement // gains divided by sqrt(N)
    };

    // Uniform sampling of the angular domain. A singleton elevation {pi/2} is the
    // in-plane (ULA) case; anything longer is a planar (phi x theta) grid.
    struct AngularGrid
    {
        std::vector<double> thetas;
        std::vector<double> phis;

        // thetas[i] = 2 pi i / n, phis = {pi/2}
        static AngularGrid azimuth(std::size_t n_theta = 4096);

        // phis at the midpoints of n_phi equal cells on [0, pi], thetas as azimuth().
        static AngularGrid planar(std::size_t n_phi = 180, std::size_t n_theta = 360);

        // azimuth() for a ULA, planar() otherwise.
        static AngularGrid default_for(const ArrayGeometry &geom);

        std::size_t size() const { return thetas.size() * phis.size(); }
        bool is_planar() const { return phis.size() > 1; }

        bool operator==(const AngularGrid &) const = default;
    };

    // Real values over a grid, row-major (phi index major, theta index minor).
    struct RealGrid
    {
        std::size_t n_phi = 0;
        std::size_t n_theta = 0;
        std::vector<double> values;

        double at(std::size_t ip, std::size_t it) const { return values[ip * n_theta + it]; }
    };

    struct BeamPattern
    {
        std::size_t n_phi = 0;
        std::size_t n_theta = 0;
        std::vector<cdouble> gains; // row-major like RealGrid
        Normalization normalization = Normalization::PerElement;

        cdouble at(std::size_t ip, std::size_t it) const { return gains[ip * n_theta + it]; }
    };

    // gains[phi][theta] = w^H a(phi, theta), over sqrt(N) for PerElement.
    BeamPattern evaluate_pattern(const WeightVector &w, const ArrayGeometry &geom, const AngularGrid &grid,
                                 Normalization norm = Normalization::PerElement);

    // Single-direction gain.
    cdouble pattern_gain(const WeightVector &w, const ArrayGeometry &geom, const Direction &dir,
                         Normalization norm = Normalization::PerElement);

    RealGrid squared_magnitude(const BeamPattern &p);

    // sqrt((|g1|^2 + |g2|^2) / 2) pointwise.
    RealGrid composite_amplitude(const BeamPattern &p1, const BeamPattern &p2);

    // sqrt(mean_k |g_k|^2) pointwise for any number of patterns (3 for odd hybrid grouping).
    RealGrid composite_amplitude(std::span<const BeamPattern> patterns);

    enum class VarianceMode
    {
        // Mean over grid points of (|g|^2 - m)^2 with m the grid mean. Independent of grid size.
        Canonical,
        // Canonical times the angular measure: 2 pi for a 1-D grid, (2 pi)^2 for a planar one.
        // The (2 pi)^2 factor keeps the [0, 2 pi] elevation limits of the original un-normalized
        // integral although the planar grid itself only samples elevations in [0, pi].
        PaperIntegral
    };

    // Variance of squared gains over the grid. Throws on an empty grid.
    double pattern_variance(const RealGrid &squared_gains, VarianceMode mode = VarianceMode::Canonical);
    double pattern_variance(const BeamPattern &p, VarianceMode mode = VarianceMode::Canonical);

    // Canonical variance of mean_k |g_k|^2 for a set of weight vectors.
    double composite_variance(std::span<const WeightVector> set, const ArrayGeometry &geom, const AngularGrid &grid,
                              VarianceMode mode = VarianceMode::Canonical);

    // min |w_i|^2 / max |w_i|^2: the power-amplifier utilization of the weakest branch.
    double pa_efficiency(const WeightVector &w);

    // CSV with columns phi_rad,theta_rad,re,im,abs,abs2.
    void write_pattern_csv(std::ostream &os, const BeamPattern &p, const AngularGrid &grid);

    // Same schema for a real amplitude (im = 0), used for composite patterns.
    void write_amplitude_csv(std::ostream &os, const RealGrid &amplitude, const AngularGrid &grid);
}

#endif
