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

#include "superpose/svg.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "superpose/csv.h"

namespace superpose::io {
namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 55;

std::string escape(const std::string& s) {
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

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (!std::isfinite(lo)) lo = 0, hi = 1;
    if (hi - lo < 1e-12) lo -= 0.5, hi += 0.5;
  }
};

void header(std::ostringstream& s, const std::string& title, const std::string& xl, const std::string& yl) {
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(title) << "</text>\n"
    << "<text x=\"" << (kLeft + kWidth - kRight) / 2 << "\" y=\"" << kHeight - 12 << "\" text-anchor=\"middle\">" << escape(xl)
    << "</text>\n"
    << "<text transform=\"translate(16," << (kTop + kHeight - kBottom) / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
    << escape(yl) << "</text>\n";
}

void axes(std::ostringstream& s, const Range& xr, const Range& yr) {
  const double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;
  s << "<rect x=\"" << x0 << "\" y=\"" << y1 << "\" width=\"" << x1 - x0 << "\" height=\"" << y0 - y1
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double fx = xr.lo + (xr.hi - xr.lo) * k / 4, px = x0 + (x1 - x0) * k / 4;
    const double fy = yr.lo + (yr.hi - yr.lo) * k / 4, py = y0 - (y0 - y1) * k / 4;
    s << "<text x=\"" << px << "\" y=\"" << y0 + 16 << "\" text-anchor=\"middle\">" << format_number(std::round(fx * 1e4) / 1e4) << "</text>\n";
    s << "<text x=\"" << x0 - 6 << "\" y=\"" << py + 4 << "\" text-anchor=\"end\">" << format_number(std::round(fy * 1e4) / 1e4) << "</text>\n";
  }
}

void save(const std::filesystem::path& path, const std::ostringstream& s) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << s.str() << "</svg>\n";
}

}  // namespace

void write_xy_plot(const std::filesystem::path& path, const std::string& title, const std::string& x_label,
                   const std::string& y_label, const std::vector<PlotSeries>& series) {
  Range xr, yr;
  for (const auto& ps : series) {
    for (double v : ps.x) xr.add(v);
    for (std::size_t i = 0; i < ps.y.size(); ++i) {
      const double e = i < ps.error.size() ? ps.error[i] : 0.0;
      yr.add(ps.y[i] - e);
      yr.add(ps.y[i] + e);
      if (ps.bars) yr.add(0.0);
    }
  }
  xr.finish();
  yr.finish();
  const double pad = (xr.hi - xr.lo) * 0.05;
  xr.lo -= pad;
  xr.hi += pad;
  const double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;
  auto px = [&](double v) { return x0 + (v - xr.lo) / (xr.hi - xr.lo) * (x1 - x0); };
  auto py = [&](double v) { return y0 - (v - yr.lo) / (yr.hi - yr.lo) * (y0 - y1); };

  std::ostringstream s;
  header(s, title, x_label, y_label);
  axes(s, xr, yr);
  const double bar_w = series.empty() || series.front().x.size() < 2 ? 10.0 : 0.6 * (x1 - x0) / static_cast<double>(series.front().x.size() + 1);
  for (std::size_t k = 0; k < series.size(); ++k) {
    const PlotSeries& ps = series[k];
    if (ps.bars) {
      for (std::size_t i = 0; i < ps.x.size() && i < ps.y.size(); ++i) {
        if (!std::isfinite(ps.y[i])) continue;
        const double top = py(std::max(ps.y[i], yr.lo)), base = py(std::max(0.0, yr.lo));
        s << "<rect x=\"" << px(ps.x[i]) - bar_w / 2 << "\" y=\"" << std::min(top, base) << "\" width=\"" << bar_w
          << "\" height=\"" << std::abs(base - top) << "\" fill=\"" << ps.color << "\" fill-opacity=\"0.6\"/>\n";
      }
    } else {
      s << "<polyline fill=\"none\" stroke=\"" << ps.color << "\" stroke-width=\"2\" points=\"";
      for (std::size_t i = 0; i < ps.x.size() && i < ps.y.size(); ++i) {
        if (std::isfinite(ps.y[i])) s << px(ps.x[i]) << ',' << py(ps.y[i]) << ' ';
      }
      s << "\"/>\n";
    }
    for (std::size_t i = 0; i < ps.error.size() && i < ps.y.size(); ++i) {
      if (!std::isfinite(ps.y[i]) || !std::isfinite(ps.error[i])) continue;
      s << "<line x1=\"" << px(ps.x[i]) << "\" x2=\"" << px(ps.x[i]) << "\" y1=\"" << py(ps.y[i] - ps.error[i])
        << "\" y2=\"" << py(ps.y[i] + ps.error[i]) << "\" stroke=\"black\"/>\n";
    }
    s << "<text x=\"" << x1 - 150 << "\" y=\"" << y1 + 18 + 16 * static_cast<double>(k) << "\" fill=\"" << ps.color << "\">"
      << escape(ps.label) << "</text>\n";
  }
  save(path, s);
}

void write_heatmap(const std::filesystem::path& path, const std::string& title, const std::string& x_label,
                   const std::string& y_label, const std::vector<double>& x, const std::vector<double>& y,
                   const Eigen::MatrixXd& values) {
  if (values.rows() != static_cast<Eigen::Index>(y.size()) || values.cols() != static_cast<Eigen::Index>(x.size())) {
    throw std::invalid_argument("heatmap values do not match the axes");
  }
  Range vr;
  for (Eigen::Index i = 0; i < values.size(); ++i) vr.add(values(i));
  vr.finish();
  const double x0 = kLeft, x1 = kWidth - kRight - 60, y0 = kHeight - kBottom, y1 = kTop;
  const double cw = (x1 - x0) / std::max<double>(1, static_cast<double>(x.size()));
  const double ch = (y0 - y1) / std::max<double>(1, static_cast<double>(y.size()));
  std::ostringstream s;
  header(s, title, x_label, y_label);
  for (std::size_t r = 0; r < y.size(); ++r) {
    for (std::size_t c = 0; c < x.size(); ++c) {
      const double v = values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      std::string fill = "#cccccc";
      if (std::isfinite(v)) {
        const double t = (v - vr.lo) / (vr.hi - vr.lo);
        char buf[16];
        std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(255 * t), 60, static_cast<int>(255 * (1 - t)));
        fill = buf;
      }
      s << "<rect x=\"" << x0 + cw * static_cast<double>(c) << "\" y=\"" << y0 - ch * static_cast<double>(r + 1) << "\" width=\""
        << cw << "\" height=\"" << ch << "\" fill=\"" << fill << "\"/>\n";
      s << "<text x=\"" << x0 + cw * (static_cast<double>(c) + 0.5) << "\" y=\"" << y0 - ch * (static_cast<double>(r) + 0.5) + 4
        << "\" text-anchor=\"middle\" font-size=\"10\" fill=\"white\">" << format_number(std::round(v * 1e4) / 1e4) << "</text>\n";
    }
    s << "<text x=\"" << x0 - 6 << "\" y=\"" << y0 - ch * (static_cast<double>(r) + 0.5) + 4 << "\" text-anchor=\"end\">"
      << format_number(y[r]) << "</text>\n";
  }
  for (std::size_t c = 0; c < x.size(); ++c) {
    s << "<text x=\"" << x0 + cw * (static_cast<double>(c) + 0.5) << "\" y=\"" << y0 + 16 << "\" text-anchor=\"middle\">"
      << format_number(x[c]) << "</text>\n";
  }
  save(path, s);
}

}  // namespace superpose::io
