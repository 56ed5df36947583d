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

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "satriage/common/json_io.hpp"

namespace satriage::corpus {

/// Where a warning's label came from.
enum class Origin { reported_fixed, dismissed, synthetic_fixed, open };

std::string_view to_string(Origin origin);
/// Throws SchemaError for values outside the four known origins.
Origin parse_origin(std::string_view text);

/// Label implied by an origin: 1 for reported_fixed, 0 for the two
/// false-positive origins, none for open warnings.
std::optional<int> label_for(Origin origin);

/// One function-level snippet flagged by a static-analysis checker.
struct WarningRecord {
  std::string id;
  std::string cwe;
  std::string source;
  std::string file_path;
  int line = 1;
  std::string checker;
  Origin origin = Origin::open;
  std::optional<int> label;

  bool operator==(const WarningRecord &) const = default;
};

/// Checks the record invariants: label/origin agreement and line range.
void validate(const WarningRecord &record);

std::size_t count_lines(std::string_view text);

enum class Split { train, val };

std::string_view to_string(Split split);
Split parse_split(std::string_view text);

/// Labeled records for one CWE plus their train/validation assignment.
struct CweDataset {
  std::string cwe;
  std::vector<WarningRecord> records;
  std::map<std::string, Split> split;

  std::vector<const WarningRecord *> in_split(Split which) const;
  bool has_split() const { return !split.empty(); }
};

/// Per-origin record counts for one CWE.
struct CountsRow {
  std::string cwe;
  std::size_t n_true = 0;
  std::size_t n_fixed = 0;
  std::size_t n_fake = 0;
  std::size_t total = 0;
  std::size_t n_open = 0;
};

/// Counts labeled records by origin; open_pool entries of the same CWE are
/// reported as n_open.
CountsRow dataset_stats(const CweDataset &dataset,
                        const std::vector<WarningRecord> &open_pool = {});

/// Corpus-schema object for a record (no label field; it is derived).
Json to_json(const WarningRecord &record);
/// Parses a corpus-schema object. Error messages are prefixed with
/// "line N: " when line_number is non-zero.
WarningRecord record_from_json(const Json &object, std::size_t line_number = 0);

} // namespace satriage::corpus
