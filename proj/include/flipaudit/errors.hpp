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

#ifndef FLIPAUDIT_ERRORS_HPP_
#define FLIPAUDIT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace flipaudit {

/// Input data violates an invariant (length mismatch, non-binary cell,
/// empty group, inconsistent scenario counts, ...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Threshold or scenario configuration is malformed or incomplete.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Tabular ingestion failures. Each failure class has its own code so the
/// CLI and callers can tell them apart without parsing messages.
enum class IngestErrorCode {
  kUnreadableFile,
  kUnknownColumn,
  kNonBinaryCell,
  kMissingCell,
  kRaggedRow,
  kMalformedDocument,
  kEmptyInput,
  kDuplicateColumn,
};

const char* to_string(IngestErrorCode code);

class IngestError : public ValidationError {
 public:
  IngestError(IngestErrorCode code, const std::string& message)
      : ValidationError(message), code_(code) {}

  IngestErrorCode code() const { return code_; }

 private:
  IngestErrorCode code_;
};

}  // namespace flipaudit

#endif  // FLIPAUDIT_ERRORS_HPP_
