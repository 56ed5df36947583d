// Copyright 2026 The satriage Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "satriage/corpus/records.hpp"

#include <algorithm>
#include <array>

#include "satriage/common/error.hpp"

namespace satriage::corpus {
namespace {

constexpr std::array<std::pair<Origin, std::string_view>, 4> kOriginNames{{
    {Origin::reported_fixed, "reported_fixed"},
    {Origin::dismissed, "dismissed"},
    {Origin::synthetic_fixed, "synthetic_fixed"},
    {Origin::open, "open"},
}};

std::string prefix(std::size_t line_number) {
  return line_number == 0 ? std::string{}
                          : "line " + std::to_string(line_number) + ": ";
}

const Json &require(const Json &object, const char *field,
                    std::size_t line_number) {
  auto it = object.find(field);
  if (it == object.end() || it->is_null())
    throw SchemaError(prefix(line_number) + "missing field " + field);
  return *it;
}

std::string require_string(const Json &object, const char *field,
                           std::size_t line_number) {
  const Json &value = require(object, field, line_number);
  if (!value.is_string())
    throw SchemaError(prefix(line_number) + "field " + field +
                      " must be a string");
  return value.get<std::string>();
}

} // namespace

std::string_view to_string(Origin origin) {
  for (const auto &[value, name] : kOriginNames)
    if (value == origin)
      return name;
  return "open";
}

Origin parse_origin(std::string_view text) {
  for (const auto &[value, name] : kOriginNames)
    if (name == text)
      return value;
  throw SchemaError("unknown origin " + std::string(text));
}

std::optional<int> label_for(Origin origin) {
  switch (origin) {
  case Origin::reported_fixed:
    return 1;
  case Origin::dismissed:
  case Origin::synthetic_fixed:
    return 0;
  case Origin::open:
    break;
  }
  return std::nullopt;
}

std::size_t count_lines(std::string_view text) {
  if (text.empty())
    return 0;
  std::size_t lines = static_cast<std::size_t>(
      std::count(text.begin(), text.end(), '\n'));
  if (text.back() != '\n')
    ++lines;
  return lines;
}

void validate(const WarningRecord &record) {
  if (record.label != label_for(record.origin))
    throw SchemaError("record " + record.id +
                      ": label does not match origin " +
                      std::string(to_string(record.origin)));
  const auto lines = count_lines(record.source);
  if (record.line < 1 || static_cast<std::size_t>(record.line) > lines)
    throw SchemaError("record " + record.id + ": line " +
                      std::to_string(record.line) + " outside source of " +
                      std::to_string(lines) + " lines");
}

std::string_view to_string(Split split) {
  return split == Split::train ? "train" : "val";
}

Split parse_split(std::string_view text) {
  if (text == "train")
    return Split::train;
  if (text == "val")
    return Split::val;
  throw SchemaError("unknown split " + std::string(text));
}

std::vector<const WarningRecord *> CweDataset::in_split(Split which) const {
  std::vector<const WarningRecord *> out;
  for (const auto &record : records) {
    auto it = split.find(record.id);
    if (it != split.end() && it->second == which)
      out.push_back(&record);
  }
  return out;
}

CountsRow dataset_stats(const CweDataset &dataset,
                        const std::vector<WarningRecord> &open_pool) {
  CountsRow row;
  row.cwe = dataset.cwe;
  for (const auto &record : dataset.records) {
    switch (record.origin) {
    case Origin::reported_fixed:
      ++row.n_true;
      break;
    case Origin::synthetic_fixed:
      ++row.n_fixed;
      break;
    case Origin::dismissed:
      ++row.n_fake;
      break;
    case Origin::open:
      break;
    }
  }
  row.total = row.n_true + row.n_fixed + row.n_fake;
  row.n_open = static_cast<std::size_t>(
      std::count_if(open_pool.begin(), open_pool.end(),
                    [&](const WarningRecord &r) { return r.cwe == dataset.cwe; }));
  return row;
}

Json to_json(const WarningRecord &record) {
  return Json{{"id", record.id},
              {"cwe", record.cwe},
              {"source", record.source},
              {"file_path", record.file_path},
              {"line", record.line},
              {"checker", record.checker},
              {"origin", to_string(record.origin)}};
}

WarningRecord record_from_json(const Json &object, std::size_t line_number) {
  WarningRecord record;
  record.id = require_string(object, "id", line_number);
  record.cwe = require_string(object, "cwe", line_number);
  record.source = require_string(object, "source", line_number);
  record.file_path = require_string(object, "file_path", line_number);
  const Json &line = require(object, "line", line_number);
  if (!line.is_number_integer())
    throw SchemaError(prefix(line_number) + "field line must be an integer");
  record.line = line.get<int>();
  record.checker = require_string(object, "checker", line_number);
  const auto origin = require_string(object, "origin", line_number);
  try {
    record.origin = parse_origin(origin);
  } catch (const SchemaError &e) {
    throw SchemaError(prefix(line_number) + e.what());
  }
  record.label = label_for(record.origin);
  if (record.id.empty())
    throw SchemaError(prefix(line_number) + "field id must be non-empty");
  try {
    validate(record);
  } catch (const SchemaError &e) {
    throw SchemaError(prefix(line_number) + e.what());
  }
  return record;
}

} // namespace satriage::corpus
