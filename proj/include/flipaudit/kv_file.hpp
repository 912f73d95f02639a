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

#ifndef FLIPAUDIT_KV_FILE_HPP_
#define FLIPAUDIT_KV_FILE_HPP_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace flipaudit {

// Flat "key = value" text used for threshold and scenario files.
// '#' starts a comment; blank lines are ignored; duplicate keys are errors.

struct KvEntry {
  std::string key;
  std::string value;
  std::size_t line = 0;
};

/// Throws ConfigError citing `source` and the line number on malformed input.
std::vector<KvEntry> parse_kv(std::istream& in, std::string_view source);
std::vector<KvEntry> parse_kv_file(const std::string& path);

/// Strict numeric conversions; the whole string must be consumed.
double parse_double(std::string_view text, std::string_view context);
long long parse_integer(std::string_view text, std::string_view context);
std::uint64_t parse_unsigned(std::string_view text, std::string_view context);

std::string_view trim(std::string_view text);

}  // namespace flipaudit

#endif  // FLIPAUDIT_KV_FILE_HPP_
