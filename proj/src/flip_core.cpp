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

#include "flipaudit/flip_core.hpp"

#include <string_view>
#include <utility>

#include <fmt/format.h>

#include "flipaudit/errors.hpp"

namespace flipaudit {

namespace {

void check_column(std::span<const Label> column, std::string_view name,
                  std::size_t expected_size) {
  if (column.size() != expected_size) {
    throw ValidationError(fmt::format("column '{}' has length {}, expected {}", name,
                                      column.size(), expected_size));
  }
  for (std::size_t i = 0; i < column.size(); ++i) {
    if (column[i] > 1) {
      throw ValidationError(fmt::format("non-binary value {} at index {} in column '{}'",
                                        static_cast<int>(column[i]), i, name));
    }
  }
}

}  // namespace

AuditFrame::AuditFrame(std::vector<Label> y_predicted, std::vector<Label> y_corrected,
                       std::vector<Label> group, std::optional<std::vector<Label>> y_true)
    : y_predicted_(std::move(y_predicted)),
      y_corrected_(std::move(y_corrected)),
      group_(std::move(group)),
      y_true_(std::move(y_true)) {
  const std::size_t n = y_predicted_.size();
  if (n == 0) throw ValidationError("audit frame is empty");
  check_column(y_predicted_, "y_predicted", n);
  check_column(y_corrected_, "y_corrected", n);
  check_column(group_, "group", n);
  if (y_true_) check_column(*y_true_, "y_true", n);
}

AuditFrame AuditFrame::from_predictions(std::vector<Label> y_predicted,
                                        std::vector<Label> group,
                                        std::optional<std::vector<Label>> y_true) {
  std::vector<Label> corrected = y_predicted;
  return AuditFrame(std::move(y_predicted), std::move(corrected), std::move(group),
                    std::move(y_true));
}

std::span<const Label> AuditFrame::y_true() const {
  if (!y_true_) throw ValidationError("frame has no true labels");
  return *y_true_;
}

AuditFrame AuditFrame::with_corrected(std::vector<Label> y_corrected) const {
  return AuditFrame(y_predicted_, std::move(y_corrected), group_, y_true_);
}

FlipKind classify_flip(Label predicted, Label corrected) {
  if (predicted == 0 && corrected == 1) return FlipKind::kFavorableFlip;
  if (predicted == 1 && corrected == 0) return FlipKind::kUnfavorableFlip;
  return FlipKind::kNoFlip;
}

std::vector<FlipKind> classify_flips(const AuditFrame& frame) {
  const auto pred = frame.y_predicted();
  const auto corr = frame.y_corrected();
  std::vector<FlipKind> kinds(frame.size());
  for (std::size_t i = 0; i < kinds.size(); ++i) kinds[i] = classify_flip(pred[i], corr[i]);
  return kinds;
}

MetricValue flip_rate(std::size_t n_flips, std::size_t n) {
  if (n == 0) throw ValidationError("flip rate over zero instances");
  if (n_flips > n) throw ValidationError("more flips than instances");
  if (n_flips == 0) return MetricValue::finite(0.0, Annotation::kNoFlips);
  return MetricValue::finite(static_cast<double>(n_flips) / static_cast<double>(n));
}

MetricValue directional_flip_ratio(std::size_t n_favorable, std::size_t n_unfavorable) {
  if (n_favorable == 0 && n_unfavorable == 0) {
    return MetricValue::finite(1.0, Annotation::kNoFlips);
  }
  if (n_unfavorable == 0) return MetricValue::infinity(Annotation::kOnlyBeneficialFlips);
  if (n_favorable == 0) return MetricValue::finite(0.0, Annotation::kOnlyHarmfulFlips);
  return MetricValue::finite(static_cast<double>(n_favorable) /
                             static_cast<double>(n_unfavorable));
}

MetricValue harmful_flip_proportion(std::size_t n_unfavorable, std::size_t n_flips) {
  if (n_unfavorable > n_flips) {
    throw ValidationError("more unfavorable flips than flips");
  }
  if (n_flips == 0) return MetricValue::finite(0.0, Annotation::kNoFlips);
  if (n_unfavorable == n_flips) return MetricValue::finite(1.0, Annotation::kOnlyHarmfulFlips);
  if (n_unfavorable == 0) return MetricValue::finite(0.0, Annotation::kNoHarmfulFlips);
  return MetricValue::finite(static_cast<double>(n_unfavorable) /
                             static_cast<double>(n_flips));
}

FlipSummary summarize_counts(std::size_t n, std::size_t n_favorable,
                             std::size_t n_unfavorable) {
  FlipSummary summary;
  summary.n = n;
  summary.n_favorable = n_favorable;
  summary.n_unfavorable = n_unfavorable;
  summary.n_flips = n_favorable + n_unfavorable;
  summary.flip_rate = flip_rate(summary.n_flips, n);
  summary.dfr = directional_flip_ratio(n_favorable, n_unfavorable);
  summary.hfp = harmful_flip_proportion(n_unfavorable, summary.n_flips);
  return summary;
}

FlipSummary summarize_flips(const AuditFrame& frame) {
  std::size_t favorable = 0;
  std::size_t unfavorable = 0;
  const auto pred = frame.y_predicted();
  const auto corr = frame.y_corrected();
  for (std::size_t i = 0; i < frame.size(); ++i) {
    switch (classify_flip(pred[i], corr[i])) {
      case FlipKind::kFavorableFlip: ++favorable; break;
      case FlipKind::kUnfavorableFlip: ++unfavorable; break;
      case FlipKind::kNoFlip: break;
    }
  }
  return summarize_counts(frame.size(), favorable, unfavorable);
}

FlipSummary summarize_flips(const AuditFrame& frame, std::span<const Label> mask) {
  if (mask.size() != frame.size()) {
    throw ValidationError(
        fmt::format("mask has length {}, expected {}", mask.size(), frame.size()));
  }
  std::size_t selected = 0;
  std::size_t favorable = 0;
  std::size_t unfavorable = 0;
  const auto pred = frame.y_predicted();
  const auto corr = frame.y_corrected();
  for (std::size_t i = 0; i < frame.size(); ++i) {
    if (mask[i] == 0) continue;
    ++selected;
    switch (classify_flip(pred[i], corr[i])) {
      case FlipKind::kFavorableFlip: ++favorable; break;
      case FlipKind::kUnfavorableFlip: ++unfavorable; break;
      case FlipKind::kNoFlip: break;
    }
  }
  if (selected == 0) throw ValidationError("empty group");
  return summarize_counts(selected, favorable, unfavorable);
}

}  // namespace flipaudit
