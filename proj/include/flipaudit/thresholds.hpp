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

#ifndef FLIPAUDIT_THRESHOLDS_HPP_
#define FLIPAUDIT_THRESHOLDS_HPP_

#include <array>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "flipaudit/metric_value.hpp"

namespace flipaudit {

/// Ordered from least to most severe.
enum class Band { kAcceptable = 0, kModerate = 1, kDisproportionate = 2 };

std::string_view to_string(Band band);
std::optional<Band> parse_band(std::string_view text);
/// Fill color used in charts: green, yellow, red.
std::string_view band_color(Band band);

inline Band worst(Band a, Band b) { return a < b ? b : a; }

/// Every metric name the audit produces, in report order.
inline constexpr std::array<std::string_view, 11> kMetricNames = {
    "FR", "DFR", "HFP", "FRD", "DI", "FD", "RFD", "HFPD", "HDI", "HFD", "RHFD"};

struct ThresholdEntry {
  double ideal = 0.0;
  double acceptable_delta = 0.1;
  double moderate_delta = 0.3;

  friend bool operator==(const ThresholdEntry&, const ThresholdEntry&) = default;
};

/// Per-metric ideal value and band widths. A distance from the ideal up to
/// `acceptable_delta` is Acceptable, up to `moderate_delta` Moderate, and
/// anything further (or +inf) Disproportionate. Boundaries belong to the
/// less severe band.
class ThresholdConfig {
 public:
  /// FR/HFP/FRD/HFPD/FD/HFD/RFD/RHFD ideal 0, DFR/DI/HDI ideal 1; deltas
  /// 0.1 / 0.3 except FRD and HFPD at 0.05 / 0.15.
  static ThresholdConfig defaults();

  /// Reads "NAME = ideal, acceptable_delta, moderate_delta" lines on top of
  /// the defaults. Unknown names and inconsistent deltas are ConfigErrors.
  static ThresholdConfig parse(std::istream& in, std::string_view source);
  static ThresholdConfig from_file(const std::string& path);

  std::string serialize() const;

  /// Throws ConfigError for a metric without an entry.
  const ThresholdEntry& at(std::string_view metric) const;
  /// Throws ConfigError unless 0 < acceptable_delta < moderate_delta.
  void set(std::string_view metric, const ThresholdEntry& entry);

  const std::map<std::string, ThresholdEntry, std::less<>>& entries() const { return entries_; }

  friend bool operator==(const ThresholdConfig&, const ThresholdConfig&) = default;

 private:
  std::map<std::string, ThresholdEntry, std::less<>> entries_;
};

/// Absolute slack applied at band boundaries so that decimal thresholds
/// such as |1.1 - 1| = 0.1 land in the lenient band despite rounding.
inline constexpr double kBoundaryTolerance = 1e-12;

/// Infinite values are Disproportionate; "Both values are zero" values are
/// Acceptable regardless of the number they carry.
Band classify(std::string_view metric, const MetricValue& value, const ThresholdConfig& config);

}  // namespace flipaudit

#endif  // FLIPAUDIT_THRESHOLDS_HPP_
