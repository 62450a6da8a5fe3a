// Copyright 2026 The cztheta Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Minimal SVG renders of the CSV outputs.

#pragma once

#include <string>
#include <vector>

namespace cztheta::cli {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool markers = true;
};

std::string line_plot(const std::string& title, const std::string& xlabel,
                      const std::string& ylabel, const std::vector<Series>& series,
                      bool log_y = false);

/// values[i * ny + k] at (x[i], y[k]).
std::string heatmap(const std::string& title, const std::string& xlabel,
                    const std::string& ylabel, const std::vector<double>& x,
                    const std::vector<double>& y, const std::vector<double>& values);

}  // namespace cztheta::cli
