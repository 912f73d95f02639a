/*
 * Copyright 2026 The flipaudit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "flipaudit/chart.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>
#include <vector>

#include <fmt/format.h>

namespace flipaudit {

namespace {

constexpr double kWidth = 760.0;
constexpr double kLabelX = 16.0;
constexpr double kBarX = 160.0;
constexpr double kBarWidth = 460.0;
constexpr double kRowHeight = 24.0;
constexpr double kBarHeight = 16.0;
constexpr double kTitleHeight = 30.0;
constexpr double kAxisHeight = 22.0;
constexpr double kPanelGap = 18.0;

struct Bar {
  std::string label;
  BandedMetric metric;
};

struct Panel {
  std::string id;
  std::string title;
  double axis_max;
  bool percent;
  std::vector<Bar> bars;
};

double panel_height(const Panel& p) {
  return kTitleHeight + static_cast<double>(p.bars.size()) * kRowHeight + kAxisHeight;
}

void draw_panel(std::string& svg, const Panel& p, double top) {
  svg += fmt::format("  <g class=\"panel\" id=\"{}\" transform=\"translate(0,{:.2f})\">\n", p.id,
                     top);
  svg += fmt::format(
      "    <text class=\"panel-title\" x=\"{:.2f}\" y=\"20\" font-size=\"14\" "
      "font-weight=\"bold\">{}</text>\n",
      kLabelX, p.title);
  double y = kTitleHeight;
  for (const Bar& bar : p.bars) {
    const bool infinite = bar.metric.value.is_infinite();
    const double raw = infinite ? p.axis_max : std::max(0.0, bar.metric.value.value());
    const double shown = p.percent ? raw * 100.0 : raw;
    const double axis = p.percent ? 100.0 : p.axis_max;
    const double width = kBarWidth * std::min(shown, axis) / axis;
    const std::string value_text =
        infinite ? "∞"
                 : (p.percent ? fmt::format("{:.1f}%", shown) : format_display(bar.metric.value));
    const double text_y = y + kBarHeight - 3.0;
    svg += fmt::format(
        "    <text class=\"label\" x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"12\">{}</text>\n",
        kLabelX, text_y, bar.label);
    svg += fmt::format(
        "    <rect class=\"bar{}\" data-metric=\"{}\" data-band=\"{}\" x=\"{:.2f}\" "
        "y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"{}\"/>\n",
        infinite ? " clamped" : "", bar.label, to_string(bar.metric.band), kBarX, y, width,
        kBarHeight, band_color(bar.metric.band));
    svg += fmt::format(
        "    <text class=\"{}\" x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"12\">{}</text>\n",
        infinite ? "value infinity-marker" : "value", kBarX + width + 6.0, text_y, value_text);
    y += kRowHeight;
  }
  const double axis_y = y + 2.0;
  svg += fmt::format(
      "    <line class=\"axis\" x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" "
      "stroke=\"#444444\" stroke-width=\"1\"/>\n",
      kBarX, axis_y, kBarX + kBarWidth, axis_y);
  const std::string max_label =
      p.percent ? std::string("100%") : fmt::format("{:.2f} (∞ cap)", p.axis_max);
  svg += fmt::format(
      "    <text class=\"tick\" x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"10\">0</text>\n", kBarX,
      axis_y + 14.0);
  svg += fmt::format(
      "    <text class=\"tick\" x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"10\" "
      "text-anchor=\"end\">{}</text>\n",
      kBarX + kBarWidth, axis_y + 14.0, max_label);
  svg += "  </g>\n";
}

}  // namespace

double infinity_cap(const ProportionalityReport& report) {
  double largest = 0.0;
  for (const ProportionalitySection* s :
       {&report.flip_proportionality, &report.harmful_proportionality}) {
    for (const BandedMetric* m :
         {&s->difference, &s->disparity_index, &s->flip_disparity, &s->relative_disparity}) {
      if (m->value.is_finite()) largest = std::max(largest, m->value.value());
    }
  }
  return std::max(kMinInfinityCap, kInfinityCapFactor * largest);
}

std::string render_chart_svg(const ProportionalityReport& r) {
  std::vector<Panel> panels;
  panels.push_back({"panel-overall", "Overall flips (%)", 100.0, true,
                    {{"FR", r.overall.flip_rate}, {"HFP", r.overall.hfp}}});
  panels.push_back({"panel-groups", "Flips by group (%)", 100.0, true,
                    {{"Group 0 FR", r.groups[0].flip_rate},
                     {"Group 1 FR", r.groups[1].flip_rate},
                     {"Group 0 HFP", r.groups[0].hfp},
                     {"Group 1 HFP", r.groups[1].hfp}}});
  const auto& fp = r.flip_proportionality;
  const auto& hp = r.harmful_proportionality;
  panels.push_back({"panel-proportionality", "Group-based flip proportionality",
                    infinity_cap(r), false,
                    {{"FRD", fp.difference},
                     {"DI", fp.disparity_index},
                     {"FD", fp.flip_disparity},
                     {"RFD", fp.relative_disparity},
                     {"HFPD", hp.difference},
                     {"HDI", hp.disparity_index},
                     {"HFD", hp.flip_disparity},
                     {"RHFD", hp.relative_disparity}}});

  double height = kPanelGap;
  for (const Panel& p : panels) height += panel_height(p) + kPanelGap;
  height += 24.0;

  std::string svg = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" "
      "viewBox=\"0 0 {:.0f} {:.0f}\" font-family=\"sans-serif\">\n",
      kWidth, height, kWidth, height);
  svg += fmt::format(
      "  <rect class=\"background\" x=\"0\" y=\"0\" width=\"{:.0f}\" height=\"{:.0f}\" "
      "fill=\"#ffffff\"/>\n",
      kWidth, height);
  double top = kPanelGap;
  for (const Panel& p : panels) {
    draw_panel(svg, p, top);
    top += panel_height(p) + kPanelGap;
  }
  svg += fmt::format(
      "  <g class=\"legend\" transform=\"translate({:.2f},{:.2f})\">\n", kLabelX, top);
  double x = 0.0;
  for (Band b : {Band::kAcceptable, Band::kModerate, Band::kDisproportionate}) {
    svg += fmt::format(
        "    <rect x=\"{:.2f}\" y=\"0\" width=\"12\" height=\"12\" fill=\"{}\"/>\n", x,
        band_color(b));
    svg += fmt::format("    <text x=\"{:.2f}\" y=\"11\" font-size=\"11\">{}</text>\n",
                       x + 16.0, to_string(b));
    x += 130.0;
  }
  svg += fmt::format("    <text x=\"{:.2f}\" y=\"11\" font-size=\"11\">Verdict: {}</text>\n", x,
                     to_string(r.verdict));
  svg += "  </g>\n</svg>\n";
  return svg;
}

void emit_chart(const ProportionalityReport& report, const std::string& out_path) {
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot write chart to '{}'", out_path));
  out << render_chart_svg(report);
  if (!out) throw std::runtime_error(fmt::format("failed writing chart to '{}'", out_path));
}

}  // namespace flipaudit
