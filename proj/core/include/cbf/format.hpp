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

#ifndef CBF_FORMAT_HPP
#define CBF_FORMAT_HPP

#include <charconv>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>

namespace cbf
{
    // Shortest round-trip representation; identical bytes on every run.
    inline std::string format_double(double v)
    {
        char buf[64];
        auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
        if (ec != std::errc())
            throw std::runtime_error("format_double: conversion failed");
        return std::string(buf, end);
    }

    inline double parse_double(std::string_view s)
    {
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size())
            throw std::invalid_argument("not a number: '" + std::string(s) + "'");
        return v;
    }
}

#endif
