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

#ifndef CBF_TOOLS_COMMANDS_HPP
#define CBF_TOOLS_COMMANDS_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace cbf::cli
{
    inline constexpr const char *kToolVersion = "0.1.0";

    // Runs the cbf command line. Returns the process exit code.
    int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

    // "start:step:stop" (inclusive) or a comma-separated list.
    std::vector<double> parse_number_list(const std::string &text);
}

#endif
