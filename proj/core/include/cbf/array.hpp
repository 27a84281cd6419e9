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

#ifndef CBF_ARRAY_HPP
#define CBF_ARRAY_HPP

#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

namespace cbf
{
    using cdouble = std::complex<double>;
    using CVector = std::vector<cdouble>;

    enum class ArrayKind
    {
        ULA,
        UPA
    };

    // Array topology. Spacings are in wavelengths, so no carrier frequency is stored.
    // For a ULA, n_x is the element count and n_y is 1. UPA elements are flattened
    // row-major: element (ix, iy) lives at index ix * n_y + iy.
    struct ArrayGeometry
    {
        ArrayKind kind = ArrayKind::ULA;
        std::size_t n_x = 8;
        std::size_t n_y = 1;
        double d_x = 0.5;
        double d_y = 0.5;

        static ArrayGeometry ula(std::size_t n, double d = 0.5);
        static ArrayGeometry upa(std::size_t nx, std::size_t ny, double dx = 0.5, double dy = 0.5);

        std::size_t size() const { return n_x * n_y; }

        // Throws std::invalid_argument unless N >= 2 and spacings are positive.
        void validate() const;

        bool operator==(const ArrayGeometry &) const = default;
    };

    // Azimuth theta and elevation phi in radians. ULA directions use phi = pi/2.
    struct Direction
    {
        double azimuth = 0.0;
        double elevation = std::numbers::pi / 2.0;
    };

    // Entry k is exp(-j 2 pi d k sin(theta)).
    CVector steering_ula(const ArrayGeometry &geom, double theta);

    // Kronecker product v_x (x) v_y with phase steps -2 pi d_x sin(phi) cos(theta) along x
    // and -2 pi d_y sin(phi) sin(theta) along y. Uses the exp(-j...) convention of the
    // received-signal model for both geometries, so g = w^H a is consistent.
    CVector steering_upa(const ArrayGeometry &geom, double phi, double theta);

    // Dispatches on geom.kind; the elevation is ignored for a ULA.
    CVector steering(const ArrayGeometry &geom, const Direction &dir);

    // exp(j 2 pi k / K), exact at multiples of pi/2.
    cdouble unit_phasor(long long k, long long K);
}

#endif
