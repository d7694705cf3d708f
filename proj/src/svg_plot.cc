// Copyright 2026 The GlobalDP Authors
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

#include "svg_plot.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace globaldp::svg {
namespace {

constexpr double kPanelWidth = 600;
constexpr double kPanelHeight = 340;
constexpr double kTitleHeight = 36;
constexpr double kMarginLeft = 64;
constexpr double kMarginRight = 160;  // legend strip
constexpr double kMarginTop = 34;
constexpr double kMarginBottom = 52;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#ff7f0e", "#9467bd", "#8c564b"};

std::string Escape(std::string_view s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string TickLabel(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void Add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void Finish() {
    if (!(lo <= hi)) {
      lo = 0;
      hi = 1;
    }
    if (hi - lo < 1e-12) {
      lo -= 0.5;
      hi += 0.5;
    }
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
  }
};

// Roughly five ticks at 1/2/5 multiples.
std::vector<double> Ticks(const Range& r) {
  const double raw = (r.hi - r.lo) / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double f : {1.0, 2.0, 5.0, 10.0}) {
    step = f * mag;
    if (step >= raw) break;
  }
  std::vector<double> ticks;
  for (double t = std::ceil(r.lo / step) * step; t <= r.hi + 1e-9 * step;
       t += step) {
    ticks.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
  }
  return ticks;
}

void RenderPanel(std::ostringstream& out, const Panel& panel, double x0,
                 double y0) {
  Range xr, yr;
  for (const auto& s : panel.series) {
    for (double v : s.x) xr.Add(v);
    for (double v : s.y) yr.Add(v);
    for (double v : s.y_low) yr.Add(v);
    for (double v : s.y_high) yr.Add(v);
  }
  xr.Finish();
  yr.Finish();

  const double left = x0 + kMarginLeft;
  const double right = x0 + kPanelWidth - kMarginRight;
  const double top = y0 + kMarginTop;
  const double bottom = y0 + kPanelHeight - kMarginBottom;
  auto px = [&](double v) { return left + (v - xr.lo) / (xr.hi - xr.lo) * (right - left); };
  auto py = [&](double v) { return bottom - (v - yr.lo) / (yr.hi - yr.lo) * (bottom - top); };

  out << "<text x=\"" << Num((left + right) / 2) << "\" y=\"" << Num(y0 + 20)
      << "\" text-anchor=\"middle\" font-size=\"14\" font-family=\"sans-serif\">"
      << Escape(panel.title) << "</text>\n";
  out << "<rect x=\"" << Num(left) << "\" y=\"" << Num(top) << "\" width=\""
      << Num(right - left) << "\" height=\"" << Num(bottom - top)
      << "\" fill=\"none\" stroke=\"#333\"/>\n";

  for (double t : Ticks(xr)) {
    out << "<line x1=\"" << Num(px(t)) << "\" y1=\"" << Num(bottom) << "\" x2=\""
        << Num(px(t)) << "\" y2=\"" << Num(bottom + 5) << "\" stroke=\"#333\"/>"
        << "<text x=\"" << Num(px(t)) << "\" y=\"" << Num(bottom + 18)
        << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">"
        << TickLabel(t) << "</text>\n";
  }
  for (double t : Ticks(yr)) {
    out << "<line x1=\"" << Num(left - 5) << "\" y1=\"" << Num(py(t)) << "\" x2=\""
        << Num(right) << "\" y2=\"" << Num(py(t))
        << "\" stroke=\"#ddd\"/><text x=\"" << Num(left - 8) << "\" y=\""
        << Num(py(t) + 4)
        << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">"
        << TickLabel(t) << "</text>\n";
  }
  out << "<text x=\"" << Num((left + right) / 2) << "\" y=\"" << Num(bottom + 40)
      << "\" text-anchor=\"middle\" font-size=\"12\" font-family=\"sans-serif\">"
      << Escape(panel.x_label) << "</text>\n";
  out << "<text transform=\"translate(" << Num(x0 + 16) << ","
      << Num((top + bottom) / 2)
      << ") rotate(-90)\" text-anchor=\"middle\" font-size=\"12\" "
         "font-family=\"sans-serif\">"
      << Escape(panel.y_label) << "</text>\n";

  for (std::size_t k = 0; k < panel.series.size(); ++k) {
    const Series& s = panel.series[k];
    const char* color = kPalette[k % std::size(kPalette)];
    out << "<g>\n<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.8\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      out << (i ? " " : "") << Num(px(s.x[i])) << "," << Num(py(s.y[i]));
    }
    out << "\"/>\n";
    const bool whiskers = s.y_low.size() == s.y.size() && s.y_high.size() == s.y.size();
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (whiskers) {
        out << "<line x1=\"" << Num(px(s.x[i])) << "\" y1=\"" << Num(py(s.y_low[i]))
            << "\" x2=\"" << Num(px(s.x[i])) << "\" y2=\"" << Num(py(s.y_high[i]))
            << "\" stroke=\"" << color << "\"/>\n";
      }
      if (s.markers) {
        out << "<circle cx=\"" << Num(px(s.x[i])) << "\" cy=\"" << Num(py(s.y[i]))
            << "\" r=\"3\" fill=\"" << color << "\"/>\n";
      }
    }
    const double ly = top + 14 + 16 * static_cast<double>(k);
    out << "<line x1=\"" << Num(right + 12) << "\" y1=\"" << Num(ly - 4)
        << "\" x2=\"" << Num(right + 32) << "\" y2=\"" << Num(ly - 4)
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/><text x=\""
        << Num(right + 37) << "\" y=\"" << Num(ly)
        << "\" font-size=\"11\" font-family=\"sans-serif\">" << Escape(s.label)
        << "</text>\n</g>\n";
  }
}

}  // namespace

std::string Render(std::string_view title, const std::vector<Panel>& panels) {
  const double width = kPanelWidth * static_cast<double>(std::max<std::size_t>(1, panels.size()));
  const double height = kPanelHeight + kTitleHeight;
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << Num(width)
      << "\" height=\"" << Num(height) << "\" viewBox=\"0 0 " << Num(width) << " "
      << Num(height) << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << Num(width / 2)
      << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\" "
         "font-family=\"sans-serif\" font-weight=\"bold\">"
      << Escape(title) << "</text>\n";
  for (std::size_t i = 0; i < panels.size(); ++i) {
    RenderPanel(out, panels[i], kPanelWidth * static_cast<double>(i), kTitleHeight);
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace globaldp::svg
