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

#include "flipaudit/fairness_gates.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "flipaudit/errors.hpp"

namespace flipaudit {

namespace {

void check_aligned(std::span<const Label> a, std::span<const Label> b, const char* what) {
  if (a.size() != b.size()) {
    throw ValidationError(
        fmt::format("{} has length {}, expected {}", what, b.size(), a.size()));
  }
}

void check_binary(std::span<const Label> column, const char* what) {
  for (std::size_t i = 0; i < column.size(); ++i) {
    if (column[i] > 1) {
      throw ValidationError(fmt::format("non-binary value {} at index {} in column '{}'",
                                        static_cast<int>(column[i]), i, what));
    }
  }
}

struct Rates {
  std::size_t tp = 0, fn = 0, fp = 0, tn = 0;
};

}  // namespace

double parity_gap(std::size_t positives_unpriv, std::size_t size_unpriv,
                  std::size_t positives_priv, std::size_t size_priv) {
  if (size_unpriv == 0 || size_priv == 0) {
    throw ValidationError("statistical parity needs both groups");
  }
  return static_cast<double>(positives_unpriv) / static_cast<double>(size_unpriv) -
         static_cast<double>(positives_priv) / static_cast<double>(size_priv);
}

double statistical_parity_difference(std::span<const Label> labels,
                                     std::span<const Label> group) {
  check_aligned(labels, group, "group");
  check_binary(labels, "labels");
  check_binary(group, "group");
  std::size_t size[2] = {0, 0};
  std::size_t positives[2] = {0, 0};
  for (std::size_t i = 0; i < labels.size(); ++i) {
    ++size[group[i]];
    positives[group[i]] += labels[i];
  }
  return parity_gap(positives[0], size[0], positives[1], size[1]);
}

EqualizedOddsGap equalized_odds_difference(std::span<const Label> y_true,
                                           std::span<const Label> labels,
                                           std::span<const Label> group) {
  if (y_true.empty()) throw ValidationError("EO requires true labels");
  check_aligned(y_true, labels, "labels");
  check_aligned(y_true, group, "group");
  check_binary(y_true, "y_true");
  check_binary(labels, "labels");
  check_binary(group, "group");

  Rates r[2];
  std::size_t size[2] = {0, 0};
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    Rates& g = r[group[i]];
    ++size[group[i]];
    if (y_true[i] == 1) {
      (labels[i] == 1 ? g.tp : g.fn)++;
    } else {
      (labels[i] == 1 ? g.fp : g.tn)++;
    }
  }
  if (size[0] == 0 || size[1] == 0) {
    throw ValidationError("equalized odds needs both groups");
  }

  const bool tpr_defined = (r[0].tp + r[0].fn) > 0 && (r[1].tp + r[1].fn) > 0;
  const bool fpr_defined = (r[0].fp + r[0].tn) > 0 && (r[1].fp + r[1].tn) > 0;
  if (!tpr_defined && !fpr_defined) {
    throw ValidationError("equalized odds undefined: no group pair has both TPR and FPR");
  }

  auto ratio = [](std::size_t num, std::size_t den) {
    return static_cast<double>(num) / static_cast<double>(den);
  };
  EqualizedOddsGap gap;
  if (tpr_defined) {
    gap.value = std::abs(ratio(r[0].tp, r[0].tp + r[0].fn) - ratio(r[1].tp, r[1].tp + r[1].fn));
  } else {
    gap.warning = "TPR undefined (a group has no true positives); EO uses FPR only";
  }
  if (fpr_defined) {
    gap.value = std::max(gap.value, std::abs(ratio(r[0].fp, r[0].fp + r[0].tn) -
                                             ratio(r[1].fp, r[1].fp + r[1].tn)));
  } else {
    gap.warning = "FPR undefined (a group has no true negatives); EO uses TPR only";
  }
  return gap;
}

FairnessResult evaluate_fairness(std::span<const Label> labels, std::span<const Label> group,
                                 std::optional<std::span<const Label>> y_true,
                                 const FairInterval& interval) {
  if (!(interval.lower <= interval.upper)) {
    throw ValidationError("fair interval lower bound exceeds upper bound");
  }
  FairnessResult result;
  result.fair_interval = interval;
  result.sp_difference = statistical_parity_difference(labels, group);
  result.sp_pass = interval.contains(result.sp_difference);
  if (y_true) {
    const EqualizedOddsGap eo = equalized_odds_difference(*y_true, labels, group);
    result.eo_difference = eo.value;
    result.eo_warning = eo.warning;
    result.eo_pass = eo.value <= interval.upper;
  }
  return result;
}

}  // namespace flipaudit
