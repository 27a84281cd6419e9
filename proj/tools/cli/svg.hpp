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

#ifndef CBF_TOOLS_SVG_HPP
#define CBF_TOOLS_SVG_HPP

#include <string>
#include <vector>

namespace cbf::svg
{
    // One polar trace: radius per azimuth. Values are embedded verbatim in the
    // element's data-theta / data-r attributes.
    struct PolarTrace
    {
        std::string label;
        std::vector<double> thetas;
        std::vector<double> radii;
    };

    std::string polar_plot(const std::vector<PolarTrace> &traces, const std::string &title);

    struct BerTrace
    {
        std::string label;
        std::vector<double> snr_db;
        std::vector<double> ber;
    };

    // Semilog BER-vs-SNR plot; zero BER points are omitted from the drawn line but kept in data-ber.
    std::string semilog_plot(const std::vector<BerTrace> &traces, const std::string &title);
}

#endif
