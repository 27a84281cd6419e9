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

#include "cbf/linksim.hpp"
#include "cbf/format.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <ostream>
#include <random>
#include <stdexcept>
#include <thread>

namespace cbf
{
    std::string to_string(Scheme s)
    {
        switch (s)
        {
        case Scheme::SingleAntenna: return "single";
        case Scheme::RBF: return "rbf";
        case Scheme::CBF_Digital: return "cbf";
        case Scheme::CBF_Analog: return "cbf-analog";
        }
        return "unknown";
    }

    std::string to_string(Channel c)
    {
        return c == Channel::AWGN ? "awgn" : "rayleigh";
    }

    Scheme parse_scheme(const std::string &s)
    {
        if (s == "single")
            return Scheme::SingleAntenna;
        if (s == "rbf")
            return Scheme::RBF;
        if (s == "cbf" || s == "cbf-digital")
            return Scheme::CBF_Digital;
        if (s == "cbf-analog")
            return Scheme::CBF_Analog;
        throw std::invalid_argument("unknown scheme '" + s + "' (single, rbf, cbf, cbf-analog)");
    }

    Channel parse_channel(const std::string &s)
    {
        if (s == "awgn")
            return Channel::AWGN;
        if (s == "rayleigh")
            return Channel::RayleighBlockFlat;
        throw std::invalid_argument("unknown channel '" + s + "' (awgn, rayleigh)");
    }

    void SimConfig::validate() const
    {
        geom.validate();
        if (total_bits == 0 || total_bits % 2 != 0)
            throw std::invalid_argument("SimConfig: total_bits must be even and positive");
        if (block_len == 0)
            throw std::invalid_argument("SimConfig: block_len must be >= 1");
        for (double s : snr_db_list)
            if (!std::isfinite(s))
                throw std::invalid_argument("SimConfig: SNR values must be finite");
        if (codebook)
        {
            if (codebook->vectors.size() < 2)
                throw std::invalid_argument("SimConfig: codebook needs at least two vectors");
            for (const auto &w : codebook->vectors)
                if (w.size() != geom.size())
                    throw std::invalid_argument("SimConfig: codebook vector length does not match the array");
        }
        if (rbf_basis && rbf_basis->size() != geom.size())
            throw std::invalid_argument("SimConfig: RBF basis length does not match the array");
    }

    CVector qpsk_modulate(std::span<const std::uint8_t> bits)
    {
        if (bits.size() % 2 != 0)
            throw std::invalid_argument("qpsk_modulate: odd number of bits");
        const double a = 1.0 / std::numbers::sqrt2;
        CVector out(bits.size() / 2);
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = {bits[2 * i] ? -a : a, bits[2 * i + 1] ? -a : a};
        return out;
    }

    namespace
    {
        void demod_into(std::span<const cdouble> symbols, cdouble gain, std::uint8_t *out)
        {
            if (gain == cdouble(0.0))
                throw std::invalid_argument("qpsk_demodulate: zero channel gain");
            const cdouble rot = std::conj(gain);
            for (std::size_t i = 0; i < symbols.size(); ++i)
            {
                const cdouble z = symbols[i] * rot;
                out[2 * i] = z.real() < 0.0;
                out[2 * i + 1] = z.imag() < 0.0;
            }
        }
    }

    std::vector<std::uint8_t> qpsk_demodulate(std::span<const cdouble> symbols, cdouble gain)
    {
        std::vector<std::uint8_t> bits(2 * symbols.size());
        demod_into(symbols, gain, bits.data());
        return bits;
    }

    std::vector<std::uint8_t> qpsk_demodulate(std::span<const cdouble> symbols, std::span<const cdouble> block_gains,
                                              std::size_t block_len)
    {
        if (block_len == 0)
            throw std::invalid_argument("qpsk_demodulate: block_len must be >= 1");
        const std::size_t blocks = (symbols.size() + block_len - 1) / block_len;
        if (block_gains.size() != blocks)
            throw std::invalid_argument("qpsk_demodulate: expected " + std::to_string(blocks) + " block gains");
        std::vector<std::uint8_t> bits(2 * symbols.size());
        for (std::size_t b = 0; b < blocks; ++b)
        {
            const std::size_t start = b * block_len;
            const std::size_t len = std::min(block_len, symbols.size() - start);
            demod_into(symbols.subspan(start, len), block_gains[b], bits.data() + 2 * start);
        }
        return bits;
    }

    EffectiveGain::EffectiveGain(const SimConfig &cfg, std::uint64_t seed)
        : scheme_(cfg.scheme), geom_(cfg.geom), angle_(cfg.angle)
    {
        switch (scheme_)
        {
        case Scheme::SingleAntenna: break;
        case Scheme::RBF:
            rbf_.emplace(cfg.rbf_basis ? RbfSequence(*cfg.rbf_basis, seed) : RbfSequence(cfg.geom, seed));
            break;
        case Scheme::CBF_Digital:
        case Scheme::CBF_Analog: {
            pair_ = cfg.codebook ? cfg.codebook->vectors : golay_construct(cfg.geom).vectors;
            if (pair_.size() < 2)
                throw std::invalid_argument("EffectiveGain: CBF needs at least two vectors");
            double acc = 0.0;
            for (const auto &w : pair_)
                acc += std::norm(pattern_gain(w, geom_, angle_));
            composite_ = std::sqrt(acc / static_cast<double>(pair_.size()));
            g1_ = pattern_gain(pair_[0], geom_, angle_);
            g2_ = pattern_gain(pair_[1], geom_, angle_);
            break;
        }
        }
    }

    cdouble EffectiveGain::at(std::size_t tfb)
    {
        switch (scheme_)
        {
        case Scheme::SingleAntenna: return 1.0;
        case Scheme::CBF_Digital: return composite_;
        case Scheme::CBF_Analog:
            current_ = pair_[tfb % pair_.size()];
            if (pair_.size() == 2)
                return tfb % 2 == 0 ? g1_ : g2_;
            return pattern_gain(current_, geom_, angle_);
        case Scheme::RBF:
            if (next_rbf_ > 0 && tfb + 1 < next_rbf_)
                throw std::logic_error("EffectiveGain: RBF patterns must be requested in TFB order");
            while (next_rbf_ <= tfb)
            {
                current_ = rbf_->next();
                ++next_rbf_;
                if (next_rbf_ > tfb)
                    rbf_gain_ = pattern_gain(current_, geom_, angle_);
            }
            return rbf_gain_;
        }
        return 1.0;
    }

    namespace
    {
        std::uint64_t splitmix64(std::uint64_t x)
        {
            x += 0x9E3779B97F4A7C15ull;
            x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
            x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
            return x ^ (x >> 31);
        }

        std::mt19937_64 stream(std::uint64_t seed, std::uint32_t id)
        {
            std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), id};
            return std::mt19937_64(seq);
        }

        struct PointResult
        {
            std::uint64_t errors = 0;
            std::uint64_t bits = 0;
        };

        PointResult simulate_point(const SimConfig &cfg, double snr_db, std::uint64_t seed)
        {
            const double ebn0 = std::pow(10.0, snr_db / 10.0);
            // Unit symbol energy, 2 bits per symbol: N0 = 1 / (2 Eb/N0) per complex sample.
            const double noise_sd = std::sqrt(1.0 / (2.0 * ebn0) / 2.0);
            const bool rayleigh = cfg.channel == Channel::RayleighBlockFlat;

            auto bit_rng = stream(seed, 1);
            auto noise_rng = stream(seed, 2);
            auto fade_rng = stream(seed, 3);
            std::normal_distribution<double> noise(0.0, noise_sd);
            std::normal_distribution<double> fade(0.0, std::sqrt(0.5));
            EffectiveGain gain(cfg, splitmix64(seed ^ 4));

            const bool analog = cfg.scheme == Scheme::CBF_Analog;
            const std::size_t repeats =
                analog ? (cfg.codebook ? cfg.codebook->vectors.size() : std::size_t{2}) : std::size_t{1};
            const double tx_scale = 1.0 / std::sqrt(static_cast<double>(repeats));

            const std::uint64_t total_symbols = cfg.total_bits / 2;
            std::vector<std::uint8_t> bits(2 * cfg.block_len), rx(2 * cfg.block_len);
            CVector combined(cfg.block_len);
            PointResult r;
            std::uint64_t sent = 0;
            for (std::size_t blk = 0; sent < total_symbols; ++blk)
            {
                const std::size_t len = static_cast<std::size_t>(std::min<std::uint64_t>(cfg.block_len, total_symbols - sent));
                std::uint64_t word = 0;
                for (std::size_t i = 0; i < 2 * len; ++i)
                {
                    if (i % 64 == 0)
                        word = bit_rng();
                    bits[i] = static_cast<std::uint8_t>(word & 1u);
                    word >>= 1;
                }
                const CVector s = qpsk_modulate(std::span(bits.data(), 2 * len));

                // Maximal-ratio combining over the copies (a single copy unless analog CBF).
                std::fill(combined.begin(), combined.begin() + len, cdouble(0.0));
                for (std::size_t rep = 0; rep < repeats; ++rep)
                {
                    cdouble a = gain.at(blk * repeats + rep) * tx_scale;
                    if (rayleigh)
                        a *= cdouble(fade(fade_rng), fade(fade_rng));
                    const cdouble ac = std::conj(a);
                    for (std::size_t i = 0; i < len; ++i)
                    {
                        const cdouble y = a * s[i] + cdouble(noise(noise_rng), noise(noise_rng));
                        combined[i] += ac * y;
                    }
                }
                // Already derotated by the combiner. A zero gain leaves pure noise and detection guesses.
                demod_into(std::span(combined.data(), len), cdouble(1.0), rx.data());

                for (std::size_t i = 0; i < 2 * len; ++i)
                    r.errors += bits[i] != rx[i];
                r.bits += 2 * len;
                sent += len;
                if (cfg.early_stop && r.errors >= cfg.min_errors && r.bits >= cfg.min_bits)
                    break;
            }
            return r;
        }
    }

    BerCurve run_ber(const SimConfig &cfg_in)
    {
        cfg_in.validate();
        SimConfig cfg = cfg_in;
        if (cfg.scheme == Scheme::RBF && !cfg.rbf_basis)
            cfg.rbf_basis = RbfSequence(cfg.geom, 0).basis();
        if ((cfg.scheme == Scheme::CBF_Digital || cfg.scheme == Scheme::CBF_Analog) && !cfg.codebook)
            cfg.codebook = golay_construct(cfg.geom);

        const std::size_t jobs = cfg.snr_db_list.size();
        std::vector<PointResult> results(jobs);
        unsigned workers = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
        workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(jobs, 1)));

        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto worker = [&] {
            for (std::size_t j; (j = next.fetch_add(1)) < jobs;)
            {
                try
                {
                    results[j] = simulate_point(cfg, cfg.snr_db_list[j], cfg.seed ^ static_cast<std::uint64_t>(j));
                }
                catch (...)
                {
                    std::lock_guard lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                }
            }
        };
        if (workers <= 1)
            worker();
        else
        {
            std::vector<std::jthread> pool;
            for (unsigned t = 0; t < workers; ++t)
                pool.emplace_back(worker);
        }
        if (failure)
            std::rethrow_exception(failure);

        BerCurve curve;
        curve.scheme = cfg.scheme;
        curve.channel = cfg.channel;
        curve.angle_deg = cfg.angle.azimuth * 180.0 / std::numbers::pi;
        curve.snr_db = cfg.snr_db_list;
        for (const auto &r : results)
        {
            curve.bit_errors.push_back(r.errors);
            curve.bits_simulated.push_back(r.bits);
            curve.ber.push_back(static_cast<double>(r.errors) / static_cast<double>(r.bits));
        }
        return curve;
    }

    std::vector<BerCurve> angle_sweep(const SimConfig &cfg, std::span<const double> angles_rad)
    {
        std::vector<BerCurve> out;
        out.reserve(angles_rad.size());
        for (std::size_t a = 0; a < angles_rad.size(); ++a)
        {
            SimConfig c = cfg;
            c.angle.azimuth = angles_rad[a];
            c.seed = cfg.seed + (static_cast<std::uint64_t>(a) << 32);
            out.push_back(run_ber(c));
        }
        return out;
    }

    void write_ber_csv(std::ostream &os, std::span<const BerCurve> curves)
    {
        os << "# Es=1 per QPSK symbol, Eb=Es/2, noise variance per complex symbol = 1/(2*EbN0)\n";
        os << "scheme,channel,angle_deg,snr_db,ber,bit_errors,bits\n";
        for (const auto &c : curves)
            for (std::size_t i = 0; i < c.snr_db.size(); ++i)
                os << to_string(c.scheme) << ',' << to_string(c.channel) << ',' << format_double(c.angle_deg) << ','
                   << format_double(c.snr_db[i]) << ',' << format_double(c.ber[i]) << ',' << c.bit_errors[i] << ','
                   << c.bits_simulated[i] << '\n';
    }
}
