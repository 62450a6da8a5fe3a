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

#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace cztheta::cli {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 30.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(4) << v;
  return os.str();
}

struct Frame {
  double x0, x1, y0, y1;
  double px(double x) const { return kLeft + (x - x0) / (x1 - x0) * (kWidth - kLeft - kRight); }
  double py(double y) const {
    return kHeight - kBottom - (y - y0) / (y1 - y0) * (kHeight - kTop - kBottom);
  }
};

void widen(double& lo, double& hi) {
  if (!(hi > lo)) {
    const double pad = lo == 0.0 ? 1.0 : 0.05 * std::abs(lo);
    lo -= pad;
    hi += pad;
  }
}

void axes(std::ostringstream& os, const Frame& f, const std::string& title,
          const std::string& xlabel, const std::string& ylabel, bool log_y) {
  os << "<rect x='" << kLeft << "' y='" << kTop << "' width='" << kWidth - kLeft - kRight
     << "' height='" << kHeight - kTop - kBottom << "' fill='none' stroke='black'/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double x = f.x0 + (f.x1 - f.x0) * i / 4.0;
    const double y = f.y0 + (f.y1 - f.y0) * i / 4.0;
    os << "<text x='" << f.px(x) << "' y='" << kHeight - kBottom + 18
       << "' font-size='11' text-anchor='middle'>" << fmt(x) << "</text>\n";
    os << "<text x='" << kLeft - 6 << "' y='" << f.py(y) + 4
       << "' font-size='11' text-anchor='end'>" << fmt(log_y ? std::pow(10.0, y) : y)
       << "</text>\n";
  }
  os << "<text x='" << kWidth / 2 << "' y='" << kTop - 14
     << "' font-size='14' text-anchor='middle'>" << escape(title) << "</text>\n";
  os << "<text x='" << kWidth / 2 << "' y='" << kHeight - 16
     << "' font-size='12' text-anchor='middle'>" << escape(xlabel) << "</text>\n";
  os << "<text transform='translate(18," << kHeight / 2
     << ") rotate(-90)' font-size='12' text-anchor='middle'>" << escape(ylabel) << "</text>\n";
}

std::string open_svg() {
  std::ostringstream os;
  os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth << "' height='" << kHeight
     << "' viewBox='0 0 " << kWidth << ' ' << kHeight << "'>\n"
     << "<rect width='100%' height='100%' fill='white'/>\n";
  return os.str();
}

}  // namespace

std::string line_plot(const std::string& title, const std::string& xlabel,
                      const std::string& ylabel, const std::vector<Series>& series,
                      bool log_y) {
  auto ty = [&](double y) { return log_y ? std::log10(std::max(y, 1e-300)) : y; };
  Frame f{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
          std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i]) || (log_y && s.y[i] <= 0.0)) continue;
      f.x0 = std::min(f.x0, s.x[i]);
      f.x1 = std::max(f.x1, s.x[i]);
      f.y0 = std::min(f.y0, ty(s.y[i]));
      f.y1 = std::max(f.y1, ty(s.y[i]));
    }
  }
  if (!std::isfinite(f.x0)) f = {0.0, 1.0, 0.0, 1.0};
  widen(f.x0, f.x1);
  widen(f.y0, f.y1);
  std::ostringstream os;
  os << std::setprecision(6) << open_svg();
  axes(os, f, title, xlabel, ylabel, log_y);
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kColors[k % 5];
    os << "<polyline fill='none' stroke='" << color << "' stroke-width='1.5' points='";
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.y[i]) || (log_y && s.y[i] <= 0.0)) continue;
      os << f.px(s.x[i]) << ',' << f.py(ty(s.y[i])) << ' ';
    }
    os << "'/>\n";
    if (s.markers) {
      for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
        if (!std::isfinite(s.y[i]) || (log_y && s.y[i] <= 0.0)) continue;
        os << "<circle cx='" << f.px(s.x[i]) << "' cy='" << f.py(ty(s.y[i]))
           << "' r='2.5' fill='" << color << "'/>\n";
      }
    }
    os << "<text x='" << kWidth - kRight - 8 << "' y='" << kTop + 16 + 14 * k
       << "' font-size='11' text-anchor='end' fill='" << color << "'>" << escape(s.label)
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string heatmap(const std::string& title, const std::string& xlabel,
                    const std::string& ylabel, const std::vector<double>& x,
                    const std::vector<double>& y, const std::vector<double>& values) {
  Frame f{x.empty() ? 0.0 : x.front(), x.empty() ? 1.0 : x.back(),
          y.empty() ? 0.0 : y.front(), y.empty() ? 1.0 : y.back()};
  widen(f.x0, f.x1);
  widen(f.y0, f.y1);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double v : values) {
    if (!std::isfinite(v)) continue;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!(hi > lo)) hi = lo + 1.0;
  std::ostringstream os;
  os << std::setprecision(6) << open_svg();
  const double cw = x.size() > 1 ? std::abs(f.px(x[1]) - f.px(x[0])) : kWidth - kLeft - kRight;
  const double ch = y.size() > 1 ? std::abs(f.py(y[1]) - f.py(y[0])) : kHeight - kTop - kBottom;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t k = 0; k < y.size(); ++k) {
      const std::size_t idx = i * y.size() + k;
      if (idx >= values.size() || !std::isfinite(values[idx])) continue;
      const double t = (values[idx] - lo) / (hi - lo);
      const int r = static_cast<int>(255 * t);
      const int b = static_cast<int>(255 * (1.0 - t));
      os << "<rect x='" << f.px(x[i]) - cw / 2 << "' y='" << f.py(y[k]) - ch / 2 << "' width='"
         << cw << "' height='" << ch << "' fill='rgb(" << r << ",40," << b << ")'/>\n";
    }
  }
  axes(os, f, title + " [" + fmt(lo) + ", " + fmt(hi) + "]", xlabel, ylabel, false);
  os << "</svg>\n";
  return os.str();
}

}  // namespace cztheta::cli
