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

#include "cbf/array.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cbf
{
    ArrayGeometry ArrayGeometry::ula(std::size_t n, double d)
    {
        ArrayGeometry g{ArrayKind::ULA, n, 1, d, d};
        g.validate();
        return g;
    }

    ArrayGeometry ArrayGeometry::upa(std::size_t nx, std::size_t ny, double dx, double dy)
    {
        ArrayGeometry g{ArrayKind::UPA, nx, ny, dx, dy};
        g.validate();
        return g;
    }

    void ArrayGeometry::validate() const
    {
        if (n_x == 0 || n_y == 0)
            throw std::invalid_argument("ArrayGeometry: element counts must be positive");
        if (kind == ArrayKind::ULA && n_y != 1)
            throw std::invalid_argument("ArrayGeometry: a ULA has n_y == 1");
        if (size() < 2)
            throw std::invalid_argument("ArrayGeometry: at least 2 elements required, got " + std::to_string(size()));
        if (!(d_x > 0.0) || (kind == ArrayKind::UPA && !(d_y > 0.0)))
            throw std::invalid_argument("ArrayGeometry: element spacing must be > 0");
    }

    CVector steering_ula(const ArrayGeometry &geom, double theta)
    {
        if (geom.kind != ArrayKind::ULA)
            throw std::invalid_argument("steering_ula: geometry is not a ULA");
        const double step = -2.0 * std::numbers::pi * geom.d_x * std::sin(theta);
        CVector a(geom.n_x);
        for (std::size_t k = 0; k < geom.n_x; ++k)
            a[k] = std::polar(1.0, step * static_cast<double>(k));
        return a;
    }

    CVector steering_upa(const ArrayGeometry &geom, double phi, double theta)
    {
        if (geom.kind != ArrayKind::UPA)
            throw std::invalid_argument("steering_upa: geometry is not a UPA");
        const double s = std::sin(phi);
        const double step_x = -2.0 * std::numbers::pi * geom.d_x * s * std::cos(theta);
        const double step_y = -2.0 * std::numbers::pi * geom.d_y * s * std::sin(theta);
        CVector a(geom.size());
        for (std::size_t ix = 0; ix < geom.n_x; ++ix)
            for (std::size_t iy = 0; iy < geom.n_y; ++iy)
                a[ix * geom.n_y + iy] = std::polar(1.0, step_x * static_cast<double>(ix) + step_y * static_cast<double>(iy));
        return a;
    }

    CVector steering(const ArrayGeometry &geom, const Direction &dir)
    {
        return geom.kind == ArrayKind::ULA ? steering_ula(geom, dir.azimuth)
                                           : steering_upa(geom, dir.elevation, dir.azimuth);
    }

    cdouble unit_phasor(long long k, long long K)
    {
        if (K < 1)
            throw std::invalid_argument("unit_phasor: alphabet size must be positive");
        long long r = ((k % K) + K) % K;
        if ((4 * r) % K == 0)
        {
            switch ((4 * r) / K)
            {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, -1.0};
            }
        }
        return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(K));
    }
}
