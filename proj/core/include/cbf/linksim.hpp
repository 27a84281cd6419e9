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

#ifndef CBF_LINKSIM_HPP
#define CBF_LINKSIM_HPP

#include "cbf/array.hpp"
#include "cbf/codebook.hpp"
#include "cbf/pattern.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cbf
{
    enum class Scheme
    {
        SingleAntenna,
        RBF,
        CBF_Digital,
        CBF_Analog
    };

    enum class Channel
    {
        AWGN,
        RayleighBlockFlat
    };

    std::string to_string(Scheme s);
    std::string to_string(Channel c);
    Scheme parse_scheme(const std::string &s);   // single, rbf, cbf, cbf-analog
    Channel parse_channel(const std::string &s); // awgn, rayleigh

    struct SimConfig
    {
        Scheme scheme = Scheme::SingleAntenna;
        ArrayGeometry geom = ArrayGeometry::ula(8);
        Direction angle;
        Channel channel = Channel::AWGN;
        std::vector<double> snr_db_list; // Eb/N0 in dB
        std::size_t block_len = 100;     // symbols per TFB and per fading block
        std::uint64_t total_bits = 10'000'000;
        std::uint64_t seed = 1;

        // Complementary pair for the CBF schemes; golay_construct(geom) when empty.
        std::optional<ComplementarySet> codebook;
        // RBF basis; the geometry default when empty.
        std::optional<WeightVector> rbf_basis;

        // A point may stop once it has both min_errors errors and min_bits bits.
        bool early_stop = true;
        std::uint64_t min_errors = 500;
        std::uint64_t min_bits = 1'000'000;

        unsigned threads = 0; // 0: hardware concurrency

        void validate() const;
    };

    struct BerCurve
    {
        Scheme scheme = Scheme::SingleAntenna;
        Channel channel = Channel::AWGN;
        double angle_deg = 0.0;
        std::vector<double> snr_db;
        std::vector<double> ber;
        std::vector<std::uint64_t> bit_errors;
        std::vector<std::uint64_t> bits_simulated;
    };

    // Gray QPSK with unit symbol energy; bit pair (b0, b1) maps to ((1 - 2 b0) + j (1 - 2 b1)) / sqrt(2).
    CVector qpsk_modulate(std::span<const std::uint8_t> bits);

    // Coherent minimum-distance detection after derotation by a known gain.
    std::vector<std::uint8_t> qpsk_demodulate(std::span<const cdouble> symbols, cdouble gain);

    // One gain per block of block_len symbols (the last block may be short).
    std::vector<std::uint8_t> qpsk_demodulate(std::span<const cdouble> symbols, std::span<const cdouble> block_gains,
                                              std::size_t block_len);

    // Array gain seen at the receiver on each TFB, PerElement-normalized.
    //   SingleAntenna: 1
    //   RBF:           g_t(theta) of the t-th random pattern
    //   CBF_Digital:   composite amplitude sqrt((|g1|^2 + |g2|^2) / 2), real and constant
    //   CBF_Analog:    g1 on even TFBs, g2 on odd TFBs
    // RBF patterns are generated in TFB order; asking for an earlier TFB than the last one throws.
    class EffectiveGain
    {
    public:
        EffectiveGain(const SimConfig &cfg, std::uint64_t seed);

        cdouble at(std::size_t tfb);

        // Weight vector transmitted on the TFB most recently returned by at().
        const WeightVector &current_weights() const { return current_; }

    private:
        Scheme scheme_;
        ArrayGeometry geom_;
        Direction angle_;
        std::vector<WeightVector> pair_;
        cdouble g1_{1.0}, g2_{1.0};
        double composite_ = 1.0;
        std::optional<RbfSequence> rbf_;
        std::size_t next_rbf_ = 0;
        cdouble rbf_gain_{0.0};
        WeightVector current_;
    };

    // Monte Carlo BER at each configured Eb/N0. SNR point i uses seed cfg.seed ^ i, so the
    // result does not depend on how points are scheduled over threads.
    BerCurve run_ber(const SimConfig &cfg);

    // run_ber per angle (azimuth in radians), with seed cfg.seed + (index << 32).
    std::vector<BerCurve> angle_sweep(const SimConfig &cfg, std::span<const double> angles_rad);

    // Columns scheme,channel,angle_deg,snr_db,ber,bit_errors,bits after one '#' line
    // documenting the noise calibration.
    void write_ber_csv(std::ostream &os, std::span<const BerCurve> curves);
}

#endif
