// SPDX-License-Identifier: Apache-2.0
//
// hmimo: wavenumber-domain uplink simulation for holographic MIMO surfaces
// Copyright (C) 2026 The hmimo contributors
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

#include "hmimo/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>

namespace hmimo
{
    namespace
    {
        constexpr double width = 640.0, height = 420.0;
        constexpr double left = 70.0, right = 150.0, top = 30.0, bottom = 60.0;

        const char *palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

        std::string num(double v, const char *f = "%.2f")
        {
            char buf[40];
            std::snprintf(buf, sizeof(buf), f, v);
            return buf;
        }
    }

    std::string render_svg(const std::vector<ResultRow> &rows)
    {
        if (rows.empty())
            throw Error(Errc::EmptyInput, "no rows to plot");
        const std::string axis = rows.front().axis;
        for (const auto &r : rows)
            if (r.axis != axis)
                throw Error(Errc::ValidationError, "rows: plot rows must share one sweep axis");

        bool logx = axis == "total_power";
        for (const auto &r : rows)
            logx = logx && r.axis_value > 0.0;
        auto xval = [&](double v) { return logx ? std::log10(v) : v; };

        // Schemes in order of first appearance.
        std::vector<std::string> order;
        std::map<std::string, std::vector<std::pair<double, double>>> series;
        double x0 = INFINITY, x1 = -INFINITY, y0 = 0.0, y1 = -INFINITY;
        for (const auto &r : rows)
        {
            if (!series.count(r.scheme))
                order.push_back(r.scheme);
            auto &s = series[r.scheme];
            if (!std::isfinite(r.sum_se))
                continue;
            s.emplace_back(xval(r.axis_value), r.sum_se);
            x0 = std::min(x0, xval(r.axis_value));
            x1 = std::max(x1, xval(r.axis_value));
            y1 = std::max(y1, r.sum_se);
        }
        if (!std::isfinite(x0))
            throw Error(Errc::EmptyInput, "no finite rows to plot");
        if (x1 - x0 <= 0.0)
        {
            x0 -= 0.5;
            x1 += 0.5;
        }
        if (y1 <= y0)
            y1 = y0 + 1.0;

        const double pw = width - left - right, ph = height - top - bottom;
        auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
        auto py = [&](double y) { return top + ph - (y - y0) / (y1 - y0) * ph; };

        std::string out;
        out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width, "%.0f") + "\" height=\"" +
               num(height, "%.0f") + "\" viewBox=\"0 0 " + num(width, "%.0f") + " " + num(height, "%.0f") + "\">\n";
        out += "<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        out += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(pw) + "\" height=\"" + num(ph) +
               "\" fill=\"none\" stroke=\"black\"/>\n";
        for (int t = 0; t <= 4; ++t)
        {
            const double xv = x0 + (x1 - x0) * t / 4.0, yv = y0 + (y1 - y0) * t / 4.0;
            const std::string xl = logx ? "1e" + num(xv, "%.2g") : num(xv, "%.4g");
            out += "<text x=\"" + num(px(xv)) + "\" y=\"" + num(top + ph + 18) +
                   "\" font-size=\"11\" text-anchor=\"middle\">" + xl + "</text>\n";
            out += "<text x=\"" + num(left - 6) + "\" y=\"" + num(py(yv) + 4) +
                   "\" font-size=\"11\" text-anchor=\"end\">" + num(yv, "%.4g") + "</text>\n";
        }
        out += "<text x=\"" + num(left + 0.5 * pw) + "\" y=\"" + num(height - 15) +
               "\" font-size=\"13\" text-anchor=\"middle\">" + axis + (logx ? " (log10)" : "") + "</text>\n";
        out += "<text x=\"18\" y=\"" + num(top + 0.5 * ph) + "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
               num(top + 0.5 * ph) + ")\">sum SE (bit/s/Hz)</text>\n";

        for (std::size_t i = 0; i < order.size(); ++i)
        {
            const char *color = palette[i % (sizeof(palette) / sizeof(palette[0]))];
            const auto &pts = series[order[i]];
            if (pts.size() == 1)
                out += "<circle cx=\"" + num(px(pts[0].first)) + "\" cy=\"" + num(py(pts[0].second)) +
                       "\" r=\"4\" fill=\"" + color + "\"/>\n";
            else if (pts.size() > 1)
            {
                out += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"2\" points=\"";
                for (std::size_t p = 0; p < pts.size(); ++p)
                    out += (p ? " " : "") + num(px(pts[p].first)) + "," + num(py(pts[p].second));
                out += "\"/>\n";
            }
            const double ly = top + 16.0 + 18.0 * static_cast<double>(i);
            out += "<line x1=\"" + num(width - right + 12) + "\" y1=\"" + num(ly) + "\" x2=\"" +
                   num(width - right + 32) + "\" y2=\"" + num(ly) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
            out += "<text x=\"" + num(width - right + 38) + "\" y=\"" + num(ly + 4) + "\" font-size=\"12\">" +
                   order[i] + "</text>\n";
        }
        out += "</svg>\n";
        return out;
    }

    void emit_plot(const std::vector<ResultRow> &rows, const std::filesystem::path &path)
    {
        const std::string svg = render_svg(rows);
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error(Errc::IoError, "cannot write " + path.string());
        out << svg;
    }
}
