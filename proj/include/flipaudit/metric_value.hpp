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

#ifndef FLIPAUDIT_METRIC_VALUE_HPP_
#define FLIPAUDIT_METRIC_VALUE_HPP_

#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace flipaudit {

/// Short analysis attached to every metric. Anything other than
/// kRegularCalculation marks a degenerate input that was resolved by
/// convention rather than by the raw formula.
enum class Annotation {
  kRegularCalculation,
  kNoFlips,
  kOnlyHarmfulFlips,
  kOnlyBeneficialFlips,
  kNoHarmfulFlips,
  kOneValueIsZero,
  kBothValuesAreZero,
};

std::string_view to_string(Annotation annotation);
std::optional<Annotation> parse_annotation(std::string_view text);

/// Extended-real metric result: either a finite double or +infinity,
/// always paired with an annotation.
class MetricValue {
 public:
  enum class Kind { kFinite, kPositiveInfinity };

  static MetricValue finite(double value,
                            Annotation annotation = Annotation::kRegularCalculation);
  static MetricValue infinity(Annotation annotation);

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::kFinite; }
  bool is_infinite() const { return kind_ == Kind::kPositiveInfinity; }

  /// The finite value. Throws std::logic_error on an infinite metric.
  double value() const;
  /// The value as a double, +inf for infinite metrics.
  double as_double() const;
  Annotation annotation() const { return annotation_; }

  friend bool operator==(const MetricValue&, const MetricValue&) = default;

 private:
  MetricValue(Kind kind, double value, Annotation annotation)
      : kind_(kind), value_(value), annotation_(annotation) {}

  Kind kind_;
  double value_;
  Annotation annotation_;
};

std::ostream& operator<<(std::ostream& os, const MetricValue& metric);

}  // namespace flipaudit

#endif  // FLIPAUDIT_METRIC_VALUE_HPP_
