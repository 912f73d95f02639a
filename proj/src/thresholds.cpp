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

#include "flipaudit/thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include <fmt/format.h>

#include "flipaudit/errors.hpp"
#include "flipaudit/kv_file.hpp"

namespace flipaudit {

std::string_view to_string(Band band) {
  switch (band) {
    case Band::kAcceptable: return "Acceptable";
    case Band::kModerate: return "Moderate";
    case Band::kDisproportionate: return "Disproportionate";
  }
  return "Disproportionate";
}

std::optional<Band> parse_band(std::string_view text) {
  for (Band b : {Band::kAcceptable, Band::kModerate, Band::kDisproportionate}) {
    if (to_string(b) == text) return b;
  }
  return std::nullopt;
}

std::string_view band_color(Band band) {
  switch (band) {
    case Band::kAcceptable: return "#2e9d4b";
    case Band::kModerate: return "#f2c12e";
    case Band::kDisproportionate: return "#d6392f";
  }
  return "#d6392f";
}

ThresholdConfig ThresholdConfig::defaults() {
  ThresholdConfig config;
  for (std::string_view name : kMetricNames) {
    const bool ideal_one = name == "DFR" || name == "DI" || name == "HDI";
    const bool tight = name == "FRD" || name == "HFPD";
    config.set(name, ThresholdEntry{ideal_one ? 1.0 : 0.0, tight ? 0.05 : 0.1,
                                    tight ? 0.15 : 0.3});
  }
  return config;
}

void ThresholdConfig::set(std::string_view metric, const ThresholdEntry& entry) {
  if (!std::isfinite(entry.ideal) || !std::isfinite(entry.acceptable_delta) ||
      !std::isfinite(entry.moderate_delta)) {
    throw ConfigError(fmt::format("threshold for {} must be finite", metric));
  }
  if (!(entry.acceptable_delta > 0.0) || !(entry.acceptable_delta < entry.moderate_delta)) {
    throw ConfigError(fmt::format(
        "threshold for {} needs 0 < acceptable_delta < moderate_delta (got {}, {})", metric,
        entry.acceptable_delta, entry.moderate_delta));
  }
  entries_.insert_or_assign(std::string(metric), entry);
}

const ThresholdEntry& ThresholdConfig::at(std::string_view metric) const {
  const auto it = entries_.find(metric);
  if (it == entries_.end()) {
    throw ConfigError(fmt::format("no threshold configured for metric '{}'", metric));
  }
  return it->second;
}

ThresholdConfig ThresholdConfig::parse(std::istream& in, std::string_view source) {
  ThresholdConfig config = defaults();
  for (const KvEntry& kv : parse_kv(in, source)) {
    const std::string context = fmt::format("{}:{}", source, kv.line);
    if (std::find(kMetricNames.begin(), kMetricNames.end(), kv.key) == kMetricNames.end()) {
      throw ConfigError(fmt::format("{}: unknown metric '{}'", context, kv.key));
    }
    std::vector<double> fields;
    std::string_view rest = kv.value;
    while (true) {
      const auto comma = rest.find(',');
      fields.push_back(parse_double(rest.substr(0, comma), context));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    if (fields.size() != 3) {
      throw ConfigError(fmt::format(
          "{}: expected 'ideal, acceptable_delta, moderate_delta' for {}", context, kv.key));
    }
    try {
      config.set(kv.key, ThresholdEntry{fields[0], fields[1], fields[2]});
    } catch (const ConfigError& e) {
      throw ConfigError(fmt::format("{}: {}", context, e.what()));
    }
  }
  return config;
}

ThresholdConfig ThresholdConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open threshold file '{}'", path));
  return parse(in, path);
}

std::string ThresholdConfig::serialize() const {
  std::string out = "# metric = ideal, acceptable_delta, moderate_delta\n";
  for (std::string_view name : kMetricNames) {
    if (const auto it = entries_.find(name); it != entries_.end()) {
      const ThresholdEntry& e = it->second;
      out += fmt::format("{} = {}, {}, {}\n", name, e.ideal, e.acceptable_delta,
                         e.moderate_delta);
    }
  }
  return out;
}

Band classify(std::string_view metric, const MetricValue& value, const ThresholdConfig& config) {
  const ThresholdEntry& entry = config.at(metric);
  if (value.is_infinite()) return Band::kDisproportionate;
  // Both groups at zero means there is no gap to grade, whatever the
  // convention value is (FD/HFD report 1 against an ideal of 0).
  if (value.annotation() == Annotation::kBothValuesAreZero) return Band::kAcceptable;
  const double distance = std::abs(value.value() - entry.ideal);
  if (distance <= entry.acceptable_delta + kBoundaryTolerance) return Band::kAcceptable;
  if (distance <= entry.moderate_delta + kBoundaryTolerance) return Band::kModerate;
  return Band::kDisproportionate;
}

}  // namespace flipaudit
