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

#pragma once

#include <string>
#include <utility>
#include <vector>

namespace qest::cli {

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;
    bool closed = false;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool equal_aspect = false;
};

/// Minimal standalone SVG: axes box, one polyline per series, a legend.
std::string svg_plot(const PlotSpec &spec, const std::vector<Series> &series);

}  // namespace qest::cli
