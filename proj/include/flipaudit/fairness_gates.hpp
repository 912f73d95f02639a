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

#ifndef FLIPAUDIT_FAIRNESS_GATES_HPP_
#define FLIPAUDIT_FAIRNESS_GATES_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "flipaudit/flip_core.hpp"

namespace flipaudit {

struct FairInterval {
  double lower = -0.1;
  double upper = 0.1;

  bool contains(double x) const { return lower <= x && x <= upper; }
  friend bool operator==(const FairInterval&, const FairInterval&) = default;
};

/// P(label=1 | S=0) - P(label=1 | S=1) from raw counts. Negative values
/// mean the unprivileged group receives fewer favorable outcomes. Shared by
/// the gate and the debiaser so both agree to the last bit.
double parity_gap(std::size_t positives_unpriv, std::size_t size_unpriv,
                  std::size_t positives_priv, std::size_t size_priv);

/// Statistical parity difference of `labels` split by `group`.
/// Throws ValidationError on misaligned input or a missing group.
double statistical_parity_difference(std::span<const Label> labels,
                                     std::span<const Label> group);

struct EqualizedOddsGap {
  double value = 0.0;  // max(|TPR0 - TPR1|, |FPR0 - FPR1|)
  /// Set when one of the two rates is undefined in some group and was
  /// left out of the maximum.
  std::optional<std::string> warning;
};

/// Throws ValidationError("EO requires true labels") when `y_true` is
/// empty, and when neither TPR nor FPR is defined in both groups.
EqualizedOddsGap equalized_odds_difference(std::span<const Label> y_true,
                                           std::span<const Label> labels,
                                           std::span<const Label> group);

struct FairnessResult {
  double sp_difference = 0.0;
  /// Absent when the labels were audited without ground truth; the gate
  /// is then SP-only.
  std::optional<double> eo_difference;
  std::optional<std::string> eo_warning;
  FairInterval fair_interval;
  bool sp_pass = true;
  bool eo_pass = true;

  bool passes() const { return sp_pass && eo_pass; }
  friend bool operator==(const FairnessResult&, const FairnessResult&) = default;
};

/// Gates `labels` on SP and, when `y_true` is given, EO.
FairnessResult evaluate_fairness(std::span<const Label> labels, std::span<const Label> group,
                                 std::optional<std::span<const Label>> y_true,
                                 const FairInterval& interval = {});

}  // namespace flipaudit

#endif  // FLIPAUDIT_FAIRNESS_GATES_HPP_
