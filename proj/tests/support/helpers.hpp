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

#ifndef FLIPAUDIT_TESTS_SUPPORT_HELPERS_HPP_
#define FLIPAUDIT_TESTS_SUPPORT_HELPERS_HPP_

#include <cmath>
#include <string>

#include "flipaudit/flip_core.hpp"
#include "flipaudit/metric_value.hpp"
#include "oracle.hpp"

namespace testing_support {

inline flipaudit::AuditFrame to_frame(const oracle::RawFrame& raw, bool with_truth = false) {
  std::optional<std::vector<flipaudit::Label>> truth;
  if (with_truth) truth = raw.truth;
  return flipaudit::AuditFrame(raw.pred, raw.corr, raw.group, truth);
}

/// Kind and annotation must agree exactly; finite values within `tol`.
inline bool matches(const flipaudit::MetricValue& got, const oracle::Value& want,
                    double tol = 1e-12) {
  if (std::string(flipaudit::to_string(got.annotation())) != want.annotation) return false;
  if (got.is_infinite() != want.infinite) return false;
  return got.is_infinite() || std::fabs(got.value() - want.value) <= tol;
}

inline std::string describe(const oracle::Value& v) {
  return (v.infinite ? std::string("inf") : std::to_string(v.value)) + " (" + v.annotation + ")";
}

}  // namespace testing_support

#endif  // FLIPAUDIT_TESTS_SUPPORT_HELPERS_HPP_
