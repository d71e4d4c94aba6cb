// Copyright 2026 The qest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qest/serialize.hpp"

namespace qest::cli {

namespace {

constexpr double kWidth = 640.0, kHeight = 420.0, kMargin = 60.0;
constexpr const char *kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

std::string escape(const std::string &s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string svg_plot(const PlotSpec &spec, const std::vector<Series> &series) {
    auto tx = [&](double x) { return spec.log_x ? std::log10(x) : x; };
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto &s : series) {
        for (const auto &[x, y] : s.points) {
            if (!std::isfinite(tx(x)) || !std::isfinite(y)) continue;
            x0 = std::min(x0, tx(x));
            x1 = std::max(x1, tx(x));
            y0 = std::min(y0, y);
            y1 = std::max(y1, y);
        }
    }
    if (!(x0 <= x1)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (x1 - x0 < 1e-12) x0 -= 0.5, x1 += 0.5;
    if (y1 - y0 < 1e-12) y0 -= 0.5, y1 += 0.5;
    double sx = (kWidth - 2 * kMargin) / (x1 - x0);
    double sy = (kHeight - 2 * kMargin) / (y1 - y0);
    if (spec.equal_aspect) sx = sy = std::min(sx, sy);

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kWidth - 2 * kMargin
       << "\" height=\"" << kHeight - 2 * kMargin << "\" fill=\"none\" stroke=\"#444\"/>\n";
    os << "<text x=\"" << kWidth / 2 << "\" y=\"" << kMargin / 2 << "\" text-anchor=\"middle\">"
       << escape(spec.title) << "</text>\n";
    os << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 15 << "\" text-anchor=\"middle\">"
       << escape(spec.x_label) << (spec.log_x ? " (log10)" : "") << "</text>\n";
    os << "<text x=\"15\" y=\"" << kHeight / 2 << "\" transform=\"rotate(-90 15 " << kHeight / 2
       << ")\" text-anchor=\"middle\">" << escape(spec.y_label) << "</text>\n";
    os << "<text x=\"" << kMargin << "\" y=\"" << kHeight - kMargin + 15 << "\">" << format_double(x0)
       << "</text><text x=\"" << kWidth - kMargin << "\" y=\"" << kHeight - kMargin + 15
       << "\" text-anchor=\"end\">" << format_double(x1) << "</text>\n";
    os << "<text x=\"" << kMargin - 5 << "\" y=\"" << kHeight - kMargin << "\" text-anchor=\"end\">"
       << format_double(y0) << "</text><text x=\"" << kMargin - 5 << "\" y=\"" << kMargin + 10
       << "\" text-anchor=\"end\">" << format_double(y1) << "</text>\n";
    for (std::size_t k = 0; k < series.size(); ++k) {
        const char *color = kColors[k % std::size(kColors)];
        os << "<" << (series[k].closed ? "polygon" : "polyline") << " fill=\"none\" stroke=\"" << color
           << "\" stroke-width=\"1.5\" points=\"";
        for (const auto &[x, y] : series[k].points) {
            if (!std::isfinite(tx(x)) || !std::isfinite(y)) continue;
            os << kMargin + (tx(x) - x0) * sx << "," << kHeight - kMargin - (y - y0) * sy << " ";
        }
        os << "\"/>\n";
        os << "<text x=\"" << kWidth - kMargin - 5 << "\" y=\"" << kMargin + 15 + 15 * k
           << "\" text-anchor=\"end\" fill=\"" << color << "\">" << escape(series[k].label)
           << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace qest::cli
