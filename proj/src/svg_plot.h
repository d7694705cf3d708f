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

#ifndef GLOBALDP_SRC_SVG_PLOT_H_
#define GLOBALDP_SRC_SVG_PLOT_H_

#include <string>
#include <string_view>
#include <vector>

namespace globaldp::svg {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  // Optional whiskers; empty or same length as y.
  std::vector<double> y_low;
  std::vector<double> y_high;
  bool markers = true;
};

struct Panel {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
};

// Self-contained SVG document with the panels laid out left to right. Uses
// only inline presentation attributes: no scripts, stylesheets, fonts or
// links.
std::string Render(std::string_view title, const std::vector<Panel>& panels);

}  // namespace globaldp::svg

#endif  // GLOBALDP_SRC_SVG_PLOT_H_
