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

#include "svg.hpp"

#include "cbf/format.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace cbf::svg
{
    namespace
    {
        constexpr const char *kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

        std::string escape(const std::string &s)
        {
            std::string out;
            for (char c : s)
            {
                switch (c)
                {
                case '&': out += "&amp;"; break;
                case '<': out += "&lt;"; break;
                case '>': out += "&gt;"; break;
                case '"': out += "&quot;"; break;
                default: out += c;
                }
            }
            return out;
        }

        std::string join(const std::vector<double> &v)
        {
            std::string s;
            for (std::size_t i = 0; i < v.size(); ++i)
            {
                if (i)
                    s += ' ';
                s += format_double(v[i]);
            }
            return s;
        }

        // Fixed 2-decimal pixel coordinates keep the drawing compact.
        std::string px(double v)
        {
            std::ostringstream os;
            os.setf(std::ios::fixed);
            os.precision(2);
            os << v;
            return os.str();
        }
    }

    std::string polar_plot(const std::vector<PolarTrace> &traces, const std::string &title)
    {
        const double size = 480.0, cx = size / 2.0, cy = size / 2.0 + 10.0, rmax_px = 200.0;
        double rmax = 0.0;
        for (const auto &t : traces)
            for (double r : t.radii)
                rmax = std::max(rmax, r);
        if (rmax <= 0.0)
            rmax = 1.0;
        const double scale = rmax_px / rmax;

        std::ostringstream os;
        os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size + 20
           << "\" viewBox=\"0 0 " << size << ' ' << size + 20 << "\">\n";
        os << "<title>" << escape(title) << "</title>\n";
        os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        os << "<text x=\"" << cx << "\" y=\"16\" text-anchor=\"middle\" font-size=\"13\">" << escape(title) << "</text>\n";
        for (int ring = 1; ring <= 4; ++ring)
            os << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"" << px(rmax_px * ring / 4.0)
               << "\" fill=\"none\" stroke=\"#ccc\"/>\n";
        for (int spoke = 0; spoke < 12; ++spoke)
        {
            const double a = spoke * std::numbers::pi / 6.0;
            os << "<line x1=\"" << cx << "\" y1=\"" << cy << "\" x2=\"" << px(cx + rmax_px * std::cos(a)) << "\" y2=\""
               << px(cy - rmax_px * std::sin(a)) << "\" stroke=\"#eee\"/>\n";
        }
        for (std::size_t k = 0; k < traces.size(); ++k)
        {
            const auto &t = traces[k];
            os << "<polyline class=\"trace\" data-label=\"" << escape(t.label) << "\" data-theta=\"" << join(t.thetas)
               << "\" data-r=\"" << join(t.radii) << "\" fill=\"none\" stroke=\"" << kPalette[k % 6]
               << "\" stroke-width=\"1.5\" points=\"";
            for (std::size_t i = 0; i <= t.thetas.size() && !t.thetas.empty(); ++i)
            {
                const std::size_t j = i % t.thetas.size();
                const double r = t.radii[j] * scale;
                os << (i ? " " : "") << px(cx + r * std::cos(t.thetas[j])) << ',' << px(cy - r * std::sin(t.thetas[j]));
            }
            os << "\"/>\n";
            os << "<text x=\"8\" y=\"" << 36 + 14 * k << "\" font-size=\"11\" fill=\"" << kPalette[k % 6] << "\">"
               << escape(t.label) << "</text>\n";
        }
        os << "</svg>\n";
        return os.str();
    }

    std::string semilog_plot(const std::vector<BerTrace> &traces, const std::string &title)
    {
        const double w = 560.0, h = 420.0, left = 60.0, right = 20.0, top = 30.0, bottom = 40.0;
        double xmin = 0.0, xmax = 1.0, lmin = -1.0;
        bool first = true;
        for (const auto &t : traces)
            for (std::size_t i = 0; i < t.snr_db.size(); ++i)
            {
                xmin = first ? t.snr_db[i] : std::min(xmin, t.snr_db[i]);
                xmax = first ? t.snr_db[i] : std::max(xmax, t.snr_db[i]);
                first = false;
                if (t.ber[i] > 0.0)
                    lmin = std::min(lmin, std::floor(std::log10(t.ber[i])));
            }
        if (xmax <= xmin)
            xmax = xmin + 1.0;
        const double lmax = 0.0;
        auto X = [&](double x) { return left + (x - xmin) / (xmax - xmin) * (w - left - right); };
        auto Y = [&](double b) { return top + (lmax - std::log10(b)) / (lmax - lmin) * (h - top - bottom); };

        std::ostringstream os;
        os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 "
           << w << ' ' << h << "\">\n";
        os << "<title>" << escape(title) << "</title>\n";
        os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        os << "<text x=\"" << w / 2 << "\" y=\"18\" text-anchor=\"middle\" font-size=\"13\">" << escape(title) << "</text>\n";
        for (int d = static_cast<int>(lmin); d <= 0; ++d)
        {
            const double y = Y(std::pow(10.0, d));
            os << "<line x1=\"" << left << "\" y1=\"" << px(y) << "\" x2=\"" << w - right << "\" y2=\"" << px(y)
               << "\" stroke=\"#ddd\"/>\n";
            os << "<text x=\"" << left - 6 << "\" y=\"" << px(y + 4) << "\" text-anchor=\"end\" font-size=\"10\">1e"
               << d << "</text>\n";
        }
        os << "<text x=\"" << w / 2 << "\" y=\"" << h - 8 << "\" text-anchor=\"middle\" font-size=\"11\">Eb/N0 (dB)</text>\n";
        for (std::size_t k = 0; k < traces.size(); ++k)
        {
            const auto &t = traces[k];
            os << "<polyline class=\"trace\" data-label=\"" << escape(t.label) << "\" data-snr=\"" << join(t.snr_db)
               << "\" data-ber=\"" << join(t.ber) << "\" fill=\"none\" stroke=\"" << kPalette[k % 6]
               << "\" stroke-width=\"1.5\" points=\"";
            bool any = false;
            for (std::size_t i = 0; i < t.snr_db.size(); ++i)
            {
                if (!(t.ber[i] > 0.0))
                    continue;
                os << (any ? " " : "") << px(X(t.snr_db[i])) << ',' << px(Y(t.ber[i]));
                any = true;
            }
            os << "\"/>\n";
            os << "<text x=\"" << w - right - 4 << "\" y=\"" << top + 14 * (k + 1) << "\" text-anchor=\"end\" font-size=\"11\" fill=\""
               << kPalette[k % 6] << "\">" << escape(t.label) << "</text>\n";
        }
        os << "</svg>\n";
        return os.str();
    }
}
