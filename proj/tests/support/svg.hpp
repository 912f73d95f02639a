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

#ifndef FLIPAUDIT_TESTS_SUPPORT_SVG_HPP_
#define FLIPAUDIT_TESTS_SUPPORT_SVG_HPP_

#include <sstream>
#include <string>
#include <vector>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

// Structural view of a rendered chart, parsed with a real XML parser.
namespace svg_check {

struct Bar {
  std::string metric;
  std::string band;
  std::string fill;
  double width = 0.0;
  bool clamped = false;
};

struct Panel {
  std::string id;
  std::vector<Bar> bars;
};

struct Document {
  bool well_formed = false;
  std::string error;
  std::vector<Panel> panels;
  std::size_t infinity_markers = 0;
  double full_width = 0.0;

  const Bar* find_bar(const std::string& panel, const std::string& metric) const {
    for (const auto& p : panels) {
      if (p.id != panel) continue;
      for (const auto& b : p.bars) {
        if (b.metric == metric) return &b;
      }
    }
    return nullptr;
  }
};

inline Document parse(const std::string& text) {
  namespace pt = boost::property_tree;
  Document doc;
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::read_xml(in, tree);
  } catch (const pt::xml_parser_error& e) {
    doc.error = e.what();
    return doc;
  }
  const auto svg = tree.get_child_optional("svg");
  if (!svg) {
    doc.error = "no <svg> root";
    return doc;
  }
  doc.well_formed = true;
  for (const auto& [tag, node] : *svg) {
    if (tag != "g" || node.get<std::string>("<xmlattr>.class", "") != "panel") continue;
    Panel panel;
    panel.id = node.get<std::string>("<xmlattr>.id", "");
    for (const auto& [child_tag, child] : node) {
      const std::string cls = child.get<std::string>("<xmlattr>.class", "");
      if (child_tag == "line" && cls == "axis") {
        doc.full_width = child.get<double>("<xmlattr>.x2") - child.get<double>("<xmlattr>.x1");
      }
      if (child_tag == "text" && cls.find("infinity-marker") != std::string::npos) {
        ++doc.infinity_markers;
      }
      if (child_tag != "rect" || cls.rfind("bar", 0) != 0) continue;
      Bar bar;
      bar.metric = child.get<std::string>("<xmlattr>.data-metric", "");
      bar.band = child.get<std::string>("<xmlattr>.data-band", "");
      bar.fill = child.get<std::string>("<xmlattr>.fill", "");
      bar.width = child.get<double>("<xmlattr>.width", -1.0);
      bar.clamped = cls.find("clamped") != std::string::npos;
      panel.bars.push_back(bar);
    }
    doc.panels.push_back(panel);
  }
  return doc;
}

}  // namespace svg_check

#endif  // FLIPAUDIT_TESTS_SUPPORT_SVG_HPP_
