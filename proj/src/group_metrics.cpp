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

#include "flipaudit/group_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <fmt/format.h>

#include "flipaudit/errors.hpp"

namespace flipaudit {

namespace {

double finite_rate(const MetricValue& rate, const char* what) {
  if (!rate.is_finite() || rate.value() < 0.0) {
    throw std::invalid_argument(fmt::format("{} must be a finite nonnegative rate", what));
  }
  return rate.value();
}

}  // namespace

std::pair<GroupFlipSummary, GroupFlipSummary> split_by_group(const AuditFrame& frame) {
  const auto pred = frame.y_predicted();
  const auto corr = frame.y_corrected();
  const auto group = frame.group();

  // [group][0] favorable, [group][1] unfavorable
  std::size_t sizes[2] = {0, 0};
  std::size_t flips[2][2] = {{0, 0}, {0, 0}};
  for (std::size_t i = 0; i < frame.size(); ++i) {
    const Label g = group[i];
    ++sizes[g];
    switch (classify_flip(pred[i], corr[i])) {
      case FlipKind::kFavorableFlip: ++flips[g][0]; break;
      case FlipKind::kUnfavorableFlip: ++flips[g][1]; break;
      case FlipKind::kNoFlip: break;
    }
  }
  for (Label g : {kUnprivileged, kPrivileged}) {
    if (sizes[g] == 0) {
      throw ValidationError(fmt::format("group {} has no instances", static_cast<int>(g)));
    }
  }
  auto make = [&](Label g) {
    return GroupFlipSummary{g, sizes[g], summarize_counts(sizes[g], flips[g][0], flips[g][1])};
  };
  return {make(kPrivileged), make(kUnprivileged)};
}

MetricValue rate_difference(const MetricValue& rate_priv, const MetricValue& rate_unpriv) {
  const double a = finite_rate(rate_priv, "privileged rate");
  const double b = finite_rate(rate_unpriv, "unprivileged rate");
  return MetricValue::finite(std::abs(a - b));
}

MetricValue disparity_index(const MetricValue& rate_a, const MetricValue& rate_b) {
  const double a = finite_rate(rate_a, "first rate");
  const double b = finite_rate(rate_b, "second rate");
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  if (hi == 0.0) return MetricValue::finite(1.0, Annotation::kBothValuesAreZero);
  if (lo == 0.0) return MetricValue::infinity(Annotation::kOneValueIsZero);
  return MetricValue::finite(hi / lo);
}

MetricValue flip_disparity(const MetricValue& rate_priv, const MetricValue& rate_unpriv,
                           const MetricValue& overall_flip_rate) {
  const double a = finite_rate(rate_priv, "privileged rate");
  const double b = finite_rate(rate_unpriv, "unprivileged rate");
  const double overall = finite_rate(overall_flip_rate, "overall flip rate");
  if (a == 0.0 && b == 0.0) return MetricValue::finite(1.0, Annotation::kBothValuesAreZero);
  if (a == 0.0 || b == 0.0) return MetricValue::infinity(Annotation::kOneValueIsZero);
  if (overall == 0.0) {
    // A group with a nonzero rate implies at least one flip overall.
    throw std::invalid_argument("nonzero group rate with zero overall flip rate");
  }
  return MetricValue::finite(std::abs(a / overall - b / overall));
}

MetricValue relative_disparity(const MetricValue& diff, const MetricValue& rate_priv,
                               const MetricValue& rate_unpriv) {
  const double d = finite_rate(diff, "difference");
  const double a = finite_rate(rate_priv, "privileged rate");
  const double b = finite_rate(rate_unpriv, "unprivileged rate");
  const double sum = a + b;
  if (sum == 0.0) return MetricValue::finite(0.0, Annotation::kNoFlips);
  return MetricValue::finite(d / sum);
}

ProportionalityMetrics compute_proportionality(const FlipSummary& overall,
                                               const GroupFlipSummary& privileged,
                                               const GroupFlipSummary& unprivileged) {
  const FlipSummary& p = privileged.summary;
  const FlipSummary& u = unprivileged.summary;

  ProportionalityMetrics m;
  m.frd = rate_difference(p.flip_rate, u.flip_rate);
  m.di = disparity_index(p.flip_rate, u.flip_rate);
  m.fd = flip_disparity(p.flip_rate, u.flip_rate, overall.flip_rate);
  m.rfd = relative_disparity(m.frd, p.flip_rate, u.flip_rate);

  m.hfpd = rate_difference(p.hfp, u.hfp);
  m.hdi = disparity_index(p.hfp, u.hfp);
  m.hfd = flip_disparity(p.hfp, u.hfp, overall.flip_rate);
  m.rhfd = relative_disparity(m.hfpd, p.hfp, u.hfp);
  return m;
}

ProportionalityMetrics compute_proportionality(const AuditFrame& frame) {
  const auto [privileged, unprivileged] = split_by_group(frame);
  return compute_proportionality(summarize_flips(frame), privileged, unprivileged);
}

}  // namespace flipaudit
