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

#ifndef FLIPAUDIT_FLIP_CORE_HPP_
#define FLIPAUDIT_FLIP_CORE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "flipaudit/metric_value.hpp"

namespace flipaudit {

/// Binary label or group value. 1 is the favorable outcome / privileged
/// group, 0 the unfavorable outcome / unprivileged group.
using Label = std::uint8_t;

/// Aligned per-instance vectors for one audit. Construction validates that
/// every vector has the same nonzero length and holds only 0/1.
class AuditFrame {
 public:
  AuditFrame(std::vector<Label> y_predicted, std::vector<Label> y_corrected,
             std::vector<Label> group,
             std::optional<std::vector<Label>> y_true = std::nullopt);

  /// Frame whose corrected labels equal the predictions (no intervention
  /// applied yet).
  static AuditFrame from_predictions(std::vector<Label> y_predicted,
                                     std::vector<Label> group,
                                     std::optional<std::vector<Label>> y_true = std::nullopt);

  std::size_t size() const { return y_predicted_.size(); }
  std::span<const Label> y_predicted() const { return y_predicted_; }
  std::span<const Label> y_corrected() const { return y_corrected_; }
  std::span<const Label> group() const { return group_; }
  bool has_y_true() const { return y_true_.has_value(); }
  /// Throws ValidationError when the frame carries no true labels.
  std::span<const Label> y_true() const;

  /// Same predictions, groups and true labels with new corrected labels.
  AuditFrame with_corrected(std::vector<Label> y_corrected) const;

  friend bool operator==(const AuditFrame&, const AuditFrame&) = default;

 private:
  std::vector<Label> y_predicted_;
  std::vector<Label> y_corrected_;
  std::vector<Label> group_;
  std::optional<std::vector<Label>> y_true_;
};

enum class FlipKind { kNoFlip, kFavorableFlip, kUnfavorableFlip };

/// Per-instance flip tags, same length as the frame.
std::vector<FlipKind> classify_flips(const AuditFrame& frame);

FlipKind classify_flip(Label predicted, Label corrected);

/// FR: flipped instances over all instances. Throws ValidationError for n == 0.
MetricValue flip_rate(std::size_t n_flips, std::size_t n);

/// DFR: favorable flips over unfavorable flips, with the 0 / 1 / +inf
/// conventions for degenerate counts.
MetricValue directional_flip_ratio(std::size_t n_favorable, std::size_t n_unfavorable);

/// HFP: unfavorable flips over all flips; 0 when there are no flips.
MetricValue harmful_flip_proportion(std::size_t n_unfavorable, std::size_t n_flips);

struct FlipSummary {
  std::size_t n = 0;
  std::size_t n_flips = 0;
  std::size_t n_favorable = 0;
  std::size_t n_unfavorable = 0;
  MetricValue flip_rate = MetricValue::finite(0.0);
  MetricValue dfr = MetricValue::finite(1.0);
  MetricValue hfp = MetricValue::finite(0.0);

  friend bool operator==(const FlipSummary&, const FlipSummary&) = default;
};

/// Derives rates from raw counts. `n` is the number of audited instances.
FlipSummary summarize_counts(std::size_t n, std::size_t n_favorable,
                             std::size_t n_unfavorable);

FlipSummary summarize_flips(const AuditFrame& frame);

/// Summary over the instances whose mask entry is nonzero. The mask must
/// have the frame's length; an empty selection is rejected.
FlipSummary summarize_flips(const AuditFrame& frame, std::span<const Label> mask);

}  // namespace flipaudit

#endif  // FLIPAUDIT_FLIP_CORE_HPP_
