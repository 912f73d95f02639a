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

#include "flipaudit/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <sstream>
#include <vector>

#include <fmt/format.h>

#include "flipaudit/errors.hpp"
#include "flipaudit/kv_file.hpp"
#include "json.hpp"

namespace flipaudit {

namespace {

struct Record {
  std::vector<std::string> fields;
  std::size_t line = 0;
};

struct Role {
  const char* name;
  std::string column;
  bool optional;
  std::vector<Label>* target;
  Label positive_raw;
  std::ptrdiff_t index = -1;
};

[[noreturn]] void fail(IngestErrorCode code, std::string message) {
  throw IngestError(code, std::move(message));
}

// RFC 4180-style splitting: quoted fields may contain commas, doubled
// quotes and newlines.
std::vector<Record> split_csv(const std::string& text, std::string_view source) {
  std::vector<Record> records;
  Record current;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  std::size_t line = 1;
  current.line = 1;

  auto end_field = [&] {
    current.fields.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    const bool blank = current.fields.size() == 1 && trim(current.fields[0]).empty();
    if (!blank) records.push_back(std::move(current));
    current = Record{};
    current.line = line;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (field_started && !trim(field).empty()) {
          fail(IngestErrorCode::kMalformedDocument,
               fmt::format("{}:{}: stray quote inside unquoted field", source, line));
        }
        field.clear();
        in_quotes = true;
        field_started = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        break;
      case '\n':
        ++line;
        end_record();
        break;
      default:
        field += c;
        field_started = true;
    }
  }
  if (in_quotes) {
    fail(IngestErrorCode::kMalformedDocument,
         fmt::format("{}: unterminated quoted field", source));
  }
  if (!field.empty() || !current.fields.empty()) end_record();
  return records;
}

Label map_raw(Label raw, Label positive_raw) { return raw == positive_raw ? 1 : 0; }

std::vector<Role> make_roles(const ColumnMapping& m, std::vector<Label>& pred,
                             std::vector<Label>& corr, std::vector<Label>& group,
                             std::vector<Label>& truth) {
  if (m.favorable > 1 || m.privileged > 1) {
    throw ValidationError("favorable and privileged values must be 0 or 1");
  }
  std::vector<Role> roles;
  roles.push_back({"predicted", m.predicted, false, &pred, m.favorable});
  if (m.corrected) roles.push_back({"corrected", *m.corrected, false, &corr, m.favorable});
  roles.push_back({"group", m.group, false, &group, m.privileged});
  if (m.truth) roles.push_back({"true", *m.truth, m.truth_optional, &truth, m.favorable});
  return roles;
}

void check_distinct(const std::vector<Role>& roles) {
  for (std::size_t a = 0; a < roles.size(); ++a) {
    for (std::size_t b = a + 1; b < roles.size(); ++b) {
      if (roles[a].index >= 0 && roles[a].index == roles[b].index) {
        fail(IngestErrorCode::kDuplicateColumn,
             fmt::format("{} and {} labels both map to column '{}'", roles[a].name,
                         roles[b].name, roles[a].column));
      }
    }
  }
}

AuditFrame assemble(const ColumnMapping& m, std::vector<Label> pred, std::vector<Label> corr,
                    std::vector<Label> group, std::vector<Label> truth, bool have_truth) {
  if (!m.corrected) corr = pred;
  std::optional<std::vector<Label>> y_true;
  if (have_truth) y_true = std::move(truth);
  return AuditFrame(std::move(pred), std::move(corr), std::move(group), std::move(y_true));
}

AuditFrame ingest_csv(const std::string& text, const ColumnMapping& mapping,
                      std::string_view source) {
  const std::vector<Record> records = split_csv(text, source);
  if (records.empty()) fail(IngestErrorCode::kEmptyInput, fmt::format("{}: no header row", source));
  const std::vector<std::string>& header = records.front().fields;
  std::vector<std::string> names;
  for (const auto& h : header) names.emplace_back(trim(h));

  std::vector<Label> pred, corr, group, truth;
  std::vector<Role> roles = make_roles(mapping, pred, corr, group, truth);
  for (Role& role : roles) {
    const auto hits = std::count(names.begin(), names.end(), role.column);
    if (hits > 1) {
      fail(IngestErrorCode::kDuplicateColumn,
           fmt::format("{}: header names column '{}' more than once", source, role.column));
    }
    if (hits == 1) {
      role.index = std::find(names.begin(), names.end(), role.column) - names.begin();
      continue;
    }
    const bool digits = !role.column.empty() &&
                        std::all_of(role.column.begin(), role.column.end(),
                                    [](unsigned char c) { return std::isdigit(c); });
    if (digits) {
      const auto idx = static_cast<std::ptrdiff_t>(parse_integer(role.column, "column index"));
      if (idx < static_cast<std::ptrdiff_t>(names.size())) {
        role.index = idx;
        role.column = names[idx];
        continue;
      }
    }
    if (!role.optional) {
      fail(IngestErrorCode::kUnknownColumn,
           fmt::format("{}: unknown column '{}' for {} labels", source, role.column, role.name));
    }
  }
  check_distinct(roles);

  if (records.size() < 2) {
    fail(IngestErrorCode::kEmptyInput, fmt::format("{}: header row but no data rows", source));
  }
  for (std::size_t r = 1; r < records.size(); ++r) {
    const Record& rec = records[r];
    if (rec.fields.size() != header.size()) {
      fail(IngestErrorCode::kRaggedRow,
           fmt::format("{}: row {} (line {}) has {} fields, header has {}", source, r,
                       rec.line, rec.fields.size(), header.size()));
    }
    for (Role& role : roles) {
      if (role.index < 0) continue;
      const std::string_view cell = trim(rec.fields[role.index]);
      if (cell.empty()) {
        fail(IngestErrorCode::kMissingCell,
             fmt::format("{}: row {} (line {}), column '{}': missing value", source, r,
                         rec.line, role.column));
      }
      if (cell != "0" && cell != "1") {
        fail(IngestErrorCode::kNonBinaryCell,
             fmt::format("{}: row {} (line {}), column '{}': value '{}' is not 0 or 1", source,
                         r, rec.line, role.column, cell));
      }
      role.target->push_back(map_raw(cell == "1" ? 1 : 0, role.positive_raw));
    }
  }
  const bool have_truth = std::any_of(roles.begin(), roles.end(), [&](const Role& role) {
    return role.target == &truth && role.index >= 0;
  });
  return assemble(mapping, std::move(pred), std::move(corr), std::move(group),
                  std::move(truth), have_truth);
}

AuditFrame ingest_json(const std::string& text, const ColumnMapping& mapping,
                       std::string_view source) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(IngestErrorCode::kMalformedDocument, fmt::format("{}: {}", source, e.what()));
  }
  if (!doc.is_array()) {
    fail(IngestErrorCode::kMalformedDocument,
         fmt::format("{}: expected a JSON array of records", source));
  }
  if (doc.empty()) fail(IngestErrorCode::kEmptyInput, fmt::format("{}: no records", source));

  std::vector<Label> pred, corr, group, truth;
  std::vector<Role> roles = make_roles(mapping, pred, corr, group, truth);
  const nlohmann::json& first = doc.front();
  if (!first.is_object()) {
    fail(IngestErrorCode::kMalformedDocument, fmt::format("{}: record 1 is not an object", source));
  }
  // Distinct names give distinct indices; equal names collide.
  std::vector<std::string> seen;
  for (Role& role : roles) {
    const auto it = std::find(seen.begin(), seen.end(), role.column);
    role.index = it == seen.end() ? static_cast<std::ptrdiff_t>(seen.size())
                                  : it - seen.begin();
    if (it == seen.end()) seen.push_back(role.column);
  }
  check_distinct(roles);
  for (Role& role : roles) {
    if (!first.contains(role.column)) {
      if (role.optional) {
        role.index = -1;
        continue;
      }
      fail(IngestErrorCode::kUnknownColumn,
           fmt::format("{}: unknown column '{}' for {} labels", source, role.column, role.name));
    }
  }

  for (std::size_t r = 0; r < doc.size(); ++r) {
    const nlohmann::json& rec = doc[r];
    if (!rec.is_object()) {
      fail(IngestErrorCode::kMalformedDocument,
           fmt::format("{}: record {} is not an object", source, r + 1));
    }
    for (Role& role : roles) {
      if (role.index < 0) continue;
      const auto it = rec.find(role.column);
      if (it == rec.end() || it->is_null()) {
        fail(IngestErrorCode::kMissingCell,
             fmt::format("{}: record {}, column '{}': missing value", source, r + 1,
                         role.column));
      }
      if (!it->is_number_integer() || (it->get<long long>() != 0 && it->get<long long>() != 1)) {
        fail(IngestErrorCode::kNonBinaryCell,
             fmt::format("{}: record {}, column '{}': value {} is not 0 or 1", source, r + 1,
                         role.column, it->dump()));
      }
      role.target->push_back(map_raw(static_cast<Label>(it->get<int>()), role.positive_raw));
    }
  }
  const bool have_truth = std::any_of(roles.begin(), roles.end(), [&](const Role& role) {
    return role.target == &truth && role.index >= 0;
  });
  return assemble(mapping, std::move(pred), std::move(corr), std::move(group),
                  std::move(truth), have_truth);
}

}  // namespace

AuditFrame ingest(std::istream& in, const ColumnMapping& mapping, InputFormat format,
                  std::string_view source) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (in.bad()) fail(IngestErrorCode::kUnreadableFile, fmt::format("{}: read error", source));
  if (format == InputFormat::kAuto) {
    const auto first = text.find_first_not_of(" \t\r\n");
    format = (first != std::string::npos && text[first] == '[') ? InputFormat::kJsonRecords
                                                                  : InputFormat::kCsv;
  }
  return format == InputFormat::kJsonRecords ? ingest_json(text, mapping, source)
                                             : ingest_csv(text, mapping, source);
}

AuditFrame ingest_path(const std::string& path, const ColumnMapping& mapping,
                       std::istream& stdin_stream) {
  if (path == "-") return ingest(stdin_stream, mapping, InputFormat::kAuto, "<stdin>");
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(IngestErrorCode::kUnreadableFile, fmt::format("cannot open '{}'", path));
  const InputFormat format =
      path.ends_with(".json") ? InputFormat::kJsonRecords : InputFormat::kAuto;
  return ingest(in, mapping, format, path);
}

void write_csv(const AuditFrame& frame, std::ostream& out) {
  out << (frame.has_y_true() ? "pred,corr,group,true\n" : "pred,corr,group\n");
  const auto pred = frame.y_predicted();
  const auto corr = frame.y_corrected();
  const auto group = frame.group();
  std::string line;
  for (std::size_t i = 0; i < frame.size(); ++i) {
    line.clear();
    line += static_cast<char>('0' + pred[i]);
    line += ',';
    line += static_cast<char>('0' + corr[i]);
    line += ',';
    line += static_cast<char>('0' + group[i]);
    if (frame.has_y_true()) {
      line += ',';
      line += static_cast<char>('0' + frame.y_true()[i]);
    }
    line += '\n';
    out << line;
  }
}

}  // namespace flipaudit
