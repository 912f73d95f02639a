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

#ifndef FLIPAUDIT_GROUP_METRICS_HPP_
#define FLIPAUDIT_GROUP_METRICS_HPP_

#include <cstddef>
#include <utility>

#include "flipaudit/flip_core.hpp"
#include "flipaudit/metric_value.hpp"

namespace flipaudit {

inline constexpr Label kPrivileged = 1;
inline constexpr Label kUnprivileged = 0;

struct GroupFlipSummary {
  Label group_id = kUnprivileged;
  std::size_t size = 0;
  FlipSummary summary;

  friend bool operator==(const GroupFlipSummary&, const GroupFlipSummary&) = default;
};

/// Returns (privileged, unprivileged). Throws ValidationError when either
/// group has no instances.
std::pair<GroupFlipSummary, GroupFlipSummary> split_by_group(const AuditFrame& frame);

// Pairwise metrics. Each one serves both the flip-rate family (FR inputs)
// and the harmful family (HFP inputs). All rate arguments must be finite
// and nonnegative; std::invalid_argument otherwise.

/// |a - b|. FRD and HFPD.
MetricValue rate_difference(const MetricValue& rate_priv, const MetricValue& rate_unpriv);

/// max / min, +inf when exactly one rate is zero, 1 when both are. DI and HDI.
MetricValue disparity_index(const MetricValue& rate_a, const MetricValue& rate_b);

/// |a / FR - b / FR| against the overall flip rate. Follows the same
/// one-zero (+inf) and both-zero (1) conventions as the disparity index.
/// FD and HFD.
MetricValue flip_disparity(const MetricValue& rate_priv, const MetricValue& rate_unpriv,
                           const MetricValue& overall_flip_rate);

/// diff / (a + b), 0 when both rates are zero. RFD and RHFD.
MetricValue relative_disparity(const MetricValue& diff, const MetricValue& rate_priv,
                               const MetricValue& rate_unpriv);

struct ProportionalityMetrics {
  MetricValue frd = MetricValue::finite(0.0);
  MetricValue hfpd = MetricValue::finite(0.0);
  MetricValue di = MetricValue::finite(1.0);
  MetricValue hdi = MetricValue::finite(1.0);
  MetricValue fd = MetricValue::finite(0.0);
  MetricValue hfd = MetricValue::finite(0.0);
  MetricValue rfd = MetricValue::finite(0.0);
  MetricValue rhfd = MetricValue::finite(0.0);

  friend bool operator==(const ProportionalityMetrics&,
                         const ProportionalityMetrics&) = default;
};

ProportionalityMetrics compute_proportionality(const FlipSummary& overall,
                                               const GroupFlipSummary& privileged,
                                               const GroupFlipSummary& unprivileged);

ProportionalityMetrics compute_proportionality(const AuditFrame& frame);

}  // namespace flipaudit

#endif  // FLIPAUDIT_GROUP_METRICS_HPP_
