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

#ifndef FLIPAUDIT_REPORT_HPP_
#define FLIPAUDIT_REPORT_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "flipaudit/fairness_gates.hpp"
#include "flipaudit/flip_core.hpp"
#include "flipaudit/group_metrics.hpp"
#include "flipaudit/metric_value.hpp"
#include "flipaudit/thresholds.hpp"

namespace flipaudit {

inline constexpr int kReportSchemaVersion = 1;

enum class Verdict { kProportionate, kReviewRequired, kDisproportionate };

std::string_view to_string(Verdict verdict);
std::optional<Verdict> parse_verdict(std::string_view text);
Verdict verdict_for(Band worst_band);

struct BandedMetric {
  MetricValue value = MetricValue::finite(0.0);
  Band band = Band::kAcceptable;

  friend bool operator==(const BandedMetric&, const BandedMetric&) = default;
};

/// Flip counts and rates over one population (whole frame or one group).
struct FlipSection {
  std::size_t samples = 0;
  std::size_t n_flips = 0;
  std::size_t n_favorable = 0;
  std::size_t n_unfavorable = 0;
  BandedMetric flip_rate;
  BandedMetric hfp;
  BandedMetric dfr;

  friend bool operator==(const FlipSection&, const FlipSection&) = default;
};

/// One family of pairwise metrics: difference, disparity index, flip
/// disparity and relative disparity. The flip-rate family is FRD/DI/FD/RFD,
/// the harmful family HFPD/HDI/HFD/RHFD.
struct ProportionalitySection {
  BandedMetric difference;
  BandedMetric disparity_index;
  BandedMetric flip_disparity;
  BandedMetric relative_disparity;

  friend bool operator==(const ProportionalitySection&,
                         const ProportionalitySection&) = default;
};

struct ProportionalityReport {
  std::size_t total_samples = 0;
  FlipSection overall;
  /// Indexed by group value: groups[0] is S = 0, groups[1] is S = 1.
  std::array<FlipSection, 2> groups;
  ProportionalitySection flip_proportionality;
  ProportionalitySection harmful_proportionality;
  std::optional<FairnessResult> fairness_pre;
  std::optional<FairnessResult> fairness_post;
  Verdict verdict = Verdict::kProportionate;

  /// Worst band across the eight proportionality metrics.
  Band worst_proportionality_band() const;

  friend bool operator==(const ProportionalityReport&, const ProportionalityReport&) = default;
};

struct ReportFairness {
  std::optional<FairnessResult> pre;
  std::optional<FairnessResult> post;
};

ProportionalityReport build_report(const AuditFrame& frame, const ThresholdConfig& config,
                                   const ReportFairness& fairness = {});

/// Display rounding: exact integers as "1.0", values >= 0.1 in magnitude
/// with 2 decimals, smaller ones with 3, infinity as "∞".
std::string format_display(const MetricValue& value);

/// Sectioned plain-text table.
std::string render_text(const ProportionalityReport& report);

/// JSON document with fixed key order; infinities are the string "inf".
std::string render_structured(const ProportionalityReport& report);

/// Inverse of render_structured. Throws IngestError(kMalformedDocument).
ProportionalityReport parse_structured(std::string_view document);

}  // namespace flipaudit

#endif  // FLIPAUDIT_REPORT_HPP_
