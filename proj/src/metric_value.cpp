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

#include "flipaudit/metric_value.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "flipaudit/errors.hpp"

namespace flipaudit {

namespace {

constexpr std::array<std::pair<Annotation, std::string_view>, 7> kAnnotationNames{{
    {Annotation::kRegularCalculation, "Regular calculation"},
    {Annotation::kNoFlips, "No flips"},
    {Annotation::kOnlyHarmfulFlips, "Only harmful flips"},
    {Annotation::kOnlyBeneficialFlips, "Only beneficial flips"},
    {Annotation::kNoHarmfulFlips, "No harmful flips"},
    {Annotation::kOneValueIsZero, "One value is zero"},
    {Annotation::kBothValuesAreZero, "Both values are zero"},
}};

}  // namespace

std::string_view to_string(Annotation annotation) {
  for (const auto& [key, name] : kAnnotationNames) {
    if (key == annotation) return name;
  }
  return "Regular calculation";
}

std::optional<Annotation> parse_annotation(std::string_view text) {
  for (const auto& [key, name] : kAnnotationNames) {
    if (name == text) return key;
  }
  return std::nullopt;
}

const char* to_string(IngestErrorCode code) {
  switch (code) {
    case IngestErrorCode::kUnreadableFile: return "unreadable-file";
    case IngestErrorCode::kUnknownColumn: return "unknown-column";
    case IngestErrorCode::kNonBinaryCell: return "non-binary-cell";
    case IngestErrorCode::kMissingCell: return "missing-cell";
    case IngestErrorCode::kRaggedRow: return "ragged-row";
    case IngestErrorCode::kMalformedDocument: return "malformed-document";
    case IngestErrorCode::kEmptyInput: return "empty-input";
    case IngestErrorCode::kDuplicateColumn: return "duplicate-column";
  }
  return "unknown";
}

MetricValue MetricValue::finite(double value, Annotation annotation) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument("MetricValue::finite requires a finite value");
  }
  return MetricValue(Kind::kFinite, value, annotation);
}

MetricValue MetricValue::infinity(Annotation annotation) {
  return MetricValue(Kind::kPositiveInfinity, 0.0, annotation);
}

double MetricValue::value() const {
  if (kind_ != Kind::kFinite) {
    throw std::logic_error("value() called on an infinite metric");
  }
  return value_;
}

double MetricValue::as_double() const {
  return kind_ == Kind::kFinite ? value_ : std::numeric_limits<double>::infinity();
}

std::ostream& operator<<(std::ostream& os, const MetricValue& metric) {
  if (metric.is_infinite()) {
    os << "inf";
  } else {
    os << metric.value();
  }
  return os << " (" << to_string(metric.annotation()) << ")";
}

}  // namespace flipaudit
