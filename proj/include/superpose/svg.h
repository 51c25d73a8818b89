// Copyright 2026 The Superpose Authors
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

#ifndef SUPERPOSE_SVG_H
#define SUPERPOSE_SVG_H

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace superpose::io {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> error;  // optional, same length as y
  bool bars = false;
  std::string color = "#1f77b4";
};

/// Curves and/or bars with error whiskers on shared axes.
void write_xy_plot(const std::filesystem::path& path, const std::string& title,
                   const std::string& x_label, const std::string& y_label,
                   const std::vector<PlotSeries>& series);

/// values(r, c) drawn at (x[c], y[r]); NaN cells are left grey.
void write_heatmap(const std::filesystem::path& path, const std::string& title,
                   const std::string& x_label, const std::string& y_label,
                   const std::vector<double>& x, const std::vector<double>& y,
                   const Eigen::MatrixXd& values);

}  // namespace superpose::io

#endif  // SUPERPOSE_SVG_H
