// Copyright 2026 The motionsim Authors. All Rights Reserved.
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

#include "motionsim/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <vector>

#include "motionsim/error.hpp"

namespace motionsim {

namespace {

constexpr const char* kPalette[] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2",
                                    "#59a14f", "#edc948", "#b07aa1"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_bar_chart(const ScoreReport& report,
                             const std::string& title) {
  std::vector<std::string> groups;
  std::set<Measure> measure_set;
  double top = 0.0;
  for (const auto& g : report.per_group) {
    if (std::find(groups.begin(), groups.end(), g.group_label) ==
        groups.end()) {
      groups.push_back(g.group_label);
    }
    measure_set.insert(g.measure);
    if (g.n > 0) top = std::max(top, g.mean_discrepancy + g.std_discrepancy);
  }
  if (groups.empty()) throw ParameterError("report has no groups to plot");
  const std::vector<Measure> measures(measure_set.begin(), measure_set.end());
  if (!(top > 0.0)) top = 1.0;

  const double bar_w = 18.0, gap = 24.0, left = 70.0, right = 160.0;
  const double plot_h = 300.0, top_margin = 40.0, bottom = 60.0;
  const double cluster_w = bar_w * double(measures.size()) + gap;
  const double width = left + cluster_w * double(groups.size()) + right;
  const double height = top_margin + plot_h + bottom;
  const auto y_of = [&](double v) {
    return top_margin + plot_h * (1.0 - std::max(v, 0.0) / top);
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width)
      << "\" height=\"" << num(height) << "\" viewBox=\"0 0 " << num(width)
      << ' ' << num(height) << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty()) {
    svg << "<text x=\"" << num(width / 2) << "\" y=\"24\" "
        << "text-anchor=\"middle\" font-size=\"16\">" << escape(title)
        << "</text>\n";
  }
  // Axes and ticks.
  svg << "<line x1=\"" << num(left) << "\" y1=\"" << num(top_margin)
      << "\" x2=\"" << num(left) << "\" y2=\"" << num(top_margin + plot_h)
      << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << num(left) << "\" y1=\"" << num(top_margin + plot_h)
      << "\" x2=\"" << num(width - right) << "\" y2=\""
      << num(top_margin + plot_h) << "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double v = top * k / 4.0;
    svg << "<text x=\"" << num(left - 6) << "\" y=\"" << num(y_of(v) + 4)
        << "\" text-anchor=\"end\" font-size=\"11\">" << num(v)
        << "</text>\n";
  }

  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    const double x0 = left + gap / 2 + cluster_w * double(gi);
    svg << "<g class=\"cluster\" data-group=\"" << escape(groups[gi])
        << "\">\n";
    for (std::size_t mi = 0; mi < measures.size(); ++mi) {
      const auto it = std::find_if(
          report.per_group.begin(), report.per_group.end(),
          [&](const GroupScore& g) {
            return g.group_label == groups[gi] && g.measure == measures[mi];
          });
      if (it == report.per_group.end() || it->n == 0) continue;
      const double x = x0 + bar_w * double(mi);
      const double y = y_of(it->mean_discrepancy);
      svg << "  <rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\""
          << num(bar_w - 2) << "\" height=\""
          << num(top_margin + plot_h - y) << "\" fill=\""
          << kPalette[mi % std::size(kPalette)] << "\"><title>"
          << escape(groups[gi]) << " / " << to_string(measures[mi]) << ": "
          << it->mean_discrepancy << "</title></rect>\n";
      const double cx = x + (bar_w - 2) / 2;
      const double lo = y_of(it->mean_discrepancy - it->std_discrepancy);
      const double hi = y_of(it->mean_discrepancy + it->std_discrepancy);
      svg << "  <line class=\"errorbar\" x1=\"" << num(cx) << "\" y1=\""
          << num(lo) << "\" x2=\"" << num(cx) << "\" y2=\"" << num(hi)
          << "\" stroke=\"black\"/>\n";
    }
    svg << "  <text x=\"" << num(x0 + cluster_w / 2 - gap / 2) << "\" y=\""
        << num(top_margin + plot_h + 18) << "\" text-anchor=\"middle\" "
        << "font-size=\"12\">" << escape(groups[gi]) << "</text>\n";
    svg << "</g>\n";
  }

  for (std::size_t mi = 0; mi < measures.size(); ++mi) {
    const double y = top_margin + 16.0 * double(mi);
    const double x = width - right + 16;
    svg << "<rect x=\"" << num(x) << "\" y=\"" << num(y)
        << "\" width=\"12\" height=\"12\" fill=\""
        << kPalette[mi % std::size(kPalette)] << "\"/>\n";
    svg << "<text x=\"" << num(x + 18) << "\" y=\"" << num(y + 10)
        << "\" font-size=\"12\">" << to_string(measures[mi]) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace motionsim
