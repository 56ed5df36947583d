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

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "satriage/corpus/records.hpp"

namespace satriage::corpus {

/// Labeled datasets grouped by CWE plus the unlabeled open pool.
struct Corpus {
  std::map<std::string, CweDataset> datasets;
  std::vector<WarningRecord> open_pool;

  const WarningRecord *find_open(const std::string &id) const;
};

/// Reads a JSONL corpus file. Rejects malformed lines (with their line
/// number), unknown origins and duplicate ids.
Corpus ingest_warnings(const std::filesystem::path &path);

/// Same as ingest_warnings, over in-memory lines (used by tests and tools).
Corpus ingest_lines(const std::vector<std::string> &lines);

/// Persists labeled records with their split and the open pool as two
/// JSONL files inside `dir` (labeled.jsonl, open.jsonl).
void save_corpus(const Corpus &corpus, const std::filesystem::path &dir);
Corpus load_corpus(const std::filesystem::path &dir);

void write_jsonl(const std::vector<WarningRecord> &records,
                 const std::filesystem::path &path);

} // namespace satriage::corpus
