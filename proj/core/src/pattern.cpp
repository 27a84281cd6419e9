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

#include "cbf/pattern.hpp"
#include "cbf/format.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace cbf
{
    namespace
    {
        void check_length(const WeightVector &w, const ArrayGeometry &geom)
        {
            if (w.size() != geom.size())
                throw std::invalid_argument("weight vector has " + std::to_string(w.size()) + " entries, array has " +
                                            std::to_string(geom.size()) + " elements");
        }

        // sum_k c_k z^k by Horner's rule
        cdouble horner(const cdouble *c, std::size_t n, cdouble z)
        {
            cdouble acc = 0.0;
            for (std::size_t k = n; k-- > 0;)
                acc = acc * z + c[k];
            return acc;
        }

        cdouble gain_conj(const CVector &wc, const ArrayGeometry &geom, double phi, double theta)
        {
            const double two_pi = 2.0 * std::numbers::pi;
            if (geom.kind == ArrayKind::ULA)
            {
                const cdouble z = std::polar(1.0, -two_pi * geom.d_x * std::sin(theta));
                return horner(wc.data(), wc.size(), z);
            }
            const double s = std::sin(phi);
            const cdouble zx = std::polar(1.0, -two_pi * geom.d_x * s * std::cos(theta));
            const cdouble zy = std::polar(1.0, -two_pi * geom.d_y * s * std::sin(theta));
            cdouble acc = 0.0;
            for (std::size_t ix = geom.n_x; ix-- > 0;)
                acc = acc * zx + horner(wc.data() + ix * geom.n_y, geom.n_y, zy);
            return acc;
        }

        CVector conjugated(const WeightVector &w)
        {
            CVector wc(w.coeffs);
            for (auto &c : wc)
                c = std::conj(c);
            return wc;
        }

        double norm_scale(const ArrayGeometry &geom, Normalization norm)
        {
            return norm == Normalization::PerElement ? 1.0 / std::sqrt(static_cast<double>(geom.size())) : 1.0;
        }

        void check_same_shape(const BeamPattern &a, const BeamPattern &b)
        {
            if (a.n_phi != b.n_phi || a.n_theta != b.n_theta || a.gains.size() != b.gains.size())
                throw std::invalid_argument("composite_amplitude: patterns sampled on different grids");
            if (a.normalization != b.normalization)
                throw std::invalid_argument("composite_amplitude: patterns use different normalizations");
        }
    }

    WeightVector WeightVector::from_phases(std::span<const int> phases, int K)
    {
        WeightVector w;
        w.coeffs.reserve(phases.size());
        for (int p : phases)
            w.coeffs.push_back(unit_phasor(p, K));
        return w;
    }

    AngularGrid AngularGrid::azimuth(std::size_t n_theta)
    {
        AngularGrid g;
        g.thetas.resize(n_theta);
        for (std::size_t i = 0; i < n_theta; ++i)
            g.thetas[i] = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n_theta);
        g.phis = {std::numbers::pi / 2.0};
        return g;
    }

    AngularGrid AngularGrid::planar(std::size_t n_phi, std::size_t n_theta)
    {
        AngularGrid g = azimuth(n_theta);
        g.phis.resize(n_phi);
        for (std::size_t i = 0; i < n_phi; ++i)
            g.phis[i] = std::numbers::pi * (static_cast<double>(i) + 0.5) / static_cast<double>(n_phi);
        return g;
    }

    AngularGrid AngularGrid::default_for(const ArrayGeometry &geom)
    {
        return geom.kind == ArrayKind::ULA ? azimuth() : planar();
    }

    BeamPattern evaluate_pattern(const WeightVector &w, const ArrayGeometry &geom, const AngularGrid &grid,
                                 Normalization norm)
    {
        check_length(w, geom);
        const CVector wc = conjugated(w);
        const double scale = norm_scale(geom, norm);

        BeamPattern p;
        p.n_phi = grid.phis.size();
        p.n_theta = grid.thetas.size();
        p.normalization = norm;
        p.gains.resize(p.n_phi * p.n_theta);
        for (std::size_t ip = 0; ip < p.n_phi; ++ip)
            for (std::size_t it = 0; it < p.n_theta; ++it)
                p.gains[ip * p.n_theta + it] = scale * gain_conj(wc, geom, grid.phis[ip], grid.thetas[it]);
        return p;
    }

    cdouble pattern_gain(const WeightVector &w, const ArrayGeometry &geom, const Direction &dir, Normalization norm)
    {
        check_length(w, geom);
        return norm_scale(geom, norm) * gain_conj(conjugated(w), geom, dir.elevation, dir.azimuth);
    }

    RealGrid squared_magnitude(const BeamPattern &p)
    {
        RealGrid r{p.n_phi, p.n_theta, std::vector<double>(p.gains.size())};
        std::transform(p.gains.begin(), p.gains.end(), r.values.begin(), [](cdouble g) { return std::norm(g); });
        return r;
    }

    RealGrid composite_amplitude(const BeamPattern &p1, const BeamPattern &p2)
    {
        const BeamPattern pair[] = {p1, p2};
        return composite_amplitude(pair);
    }

    RealGrid composite_amplitude(std::span<const BeamPattern> patterns)
    {
        if (patterns.empty())
            throw std::invalid_argument("composite_amplitude: no patterns");
        for (const auto &p : patterns.subspan(1))
            check_same_shape(patterns.front(), p);

        RealGrid r{patterns.front().n_phi, patterns.front().n_theta,
                   std::vector<double>(patterns.front().gains.size(), 0.0)};
        for (const auto &p : patterns)
            for (std::size_t i = 0; i < r.values.size(); ++i)
                r.values[i] += std::norm(p.gains[i]);
        const double inv = 1.0 / static_cast<double>(patterns.size());
        for (auto &v : r.values)
            v = std::sqrt(v * inv);
        return r;
    }

    double pattern_variance(const RealGrid &squared_gains, VarianceMode mode)
    {
        const auto &v = squared_gains.values;
        if (v.empty())
            throw std::invalid_argument("pattern_variance: empty grid");
        const double n = static_cast<double>(v.size());
        double mean = 0.0;
        for (double x : v)
            mean += x;
        mean /= n;
        double acc = 0.0;
        for (double x : v)
            acc += (x - mean) * (x - mean);
        const double canonical = acc / n;
        if (mode == VarianceMode::Canonical)
            return canonical;
        const double two_pi = 2.0 * std::numbers::pi;
        return canonical * (squared_gains.n_phi > 1 ? two_pi * two_pi : two_pi);
    }

    double pattern_variance(const BeamPattern &p, VarianceMode mode)
    {
        return pattern_variance(squared_magnitude(p), mode);
    }

    double composite_variance(std::span<const WeightVector> set, const ArrayGeometry &geom, const AngularGrid &grid,
                              VarianceMode mode)
    {
        std::vector<BeamPattern> patterns;
        patterns.reserve(set.size());
        for (const auto &w : set)
            patterns.push_back(evaluate_pattern(w, geom, grid));
        RealGrid power = composite_amplitude(patterns);
        for (auto &v : power.values)
            v *= v;
        return pattern_variance(power, mode);
    }

    double pa_efficiency(const WeightVector &w)
    {
        if (w.coeffs.empty())
            throw std::invalid_argument("pa_efficiency: empty weight vector");
        double lo = std::norm(w.coeffs.front());
        double hi = lo;
        for (cdouble c : w.coeffs)
        {
            lo = std::min(lo, std::norm(c));
            hi = std::max(hi, std::norm(c));
        }
        if (!(hi > 0.0))
            throw std::invalid_argument("pa_efficiency: all coefficients are zero");
        return lo / hi;
    }

    namespace
    {
        void check_grid(std::size_t n_phi, std::size_t n_theta, const AngularGrid &grid)
        {
            if (n_phi != grid.phis.size() || n_theta != grid.thetas.size())
                throw std::invalid_argument("CSV export: pattern does not match grid");
        }

        void write_row(std::ostream &os, double phi, double theta, cdouble g)
        {
            os << format_double(phi) << ',' << format_double(theta) << ',' << format_double(g.real()) << ','
               << format_double(g.imag()) << ',' << format_double(std::abs(g)) << ',' << format_double(std::norm(g))
               << '\n';
        }
    }

    void write_pattern_csv(std::ostream &os, const BeamPattern &p, const AngularGrid &grid)
    {
        check_grid(p.n_phi, p.n_theta, grid);
        os << "phi_rad,theta_rad,re,im,abs,abs2\n";
        for (std::size_t ip = 0; ip < p.n_phi; ++ip)
            for (std::size_t it = 0; it < p.n_theta; ++it)
                write_row(os, grid.phis[ip], grid.thetas[it], p.at(ip, it));
    }

    void write_amplitude_csv(std::ostream &os, const RealGrid &amplitude, const AngularGrid &grid)
    {
        check_grid(amplitude.n_phi, amplitude.n_theta, grid);
        os << "phi_rad,theta_rad,re,im,abs,abs2\n";
        for (std::size_t ip = 0; ip < amplitude.n_phi; ++ip)
            for (std::size_t it = 0; it < amplitude.n_theta; ++it)
                write_row(os, grid.phis[ip], grid.thetas[it], cdouble(amplitude.at(ip, it), 0.0));
    }
}
