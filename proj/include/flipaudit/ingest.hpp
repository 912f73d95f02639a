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

#ifndef FLIPAUDIT_INGEST_HPP_
#define FLIPAUDIT_INGEST_HPP_

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "flipaudit/flip_core.hpp"

namespace flipaudit {

/// Which input columns feed which frame vectors. A column is found by
/// header name first; a string of digits that is not a header name is a
/// 0-based column index (delimited text only).
struct ColumnMapping {
  std::string predicted = "pred";
  /// Unset: the frame's corrected labels equal its predictions.
  std::optional<std::string> corrected = "corr";
  std::string group = "group";
  std::optional<std::string> truth;
  /// When set, a missing truth column is not an error.
  bool truth_optional = false;
  /// Raw label value meaning "favorable"; the other value maps to 0.
  Label favorable = 1;
  /// Raw group value meaning "privileged"; the other value maps to 0.
  Label privileged = 1;
};

enum class InputFormat { kAuto, kCsv, kJsonRecords };

/// Reads a header-bearing comma-separated file or a JSON array of records.
/// Every cell must be exactly 0 or 1; nothing is dropped or coerced.
/// Throws IngestError with row/column coordinates.
AuditFrame ingest(std::istream& in, const ColumnMapping& mapping,
                  InputFormat format = InputFormat::kAuto,
                  std::string_view source = "<input>");

/// "-" reads `stdin_stream`. Format is picked from a ".json" extension or,
/// failing that, from the first non-blank character.
AuditFrame ingest_path(const std::string& path, const ColumnMapping& mapping,
                       std::istream& stdin_stream);

/// Writes "pred,corr,group[,true]" with one row per instance.
void write_csv(const AuditFrame& frame, std::ostream& out);

}  // namespace flipaudit

#endif  // FLIPAUDIT_INGEST_HPP_
