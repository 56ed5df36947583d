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

#include "satriage/corpus/ingest.hpp"

#include <set>
#include <sstream>

#include "satriage/common/error.hpp"

namespace satriage::corpus {
namespace {

class CorpusBuilder {
public:
  void add(const Json &object, std::size_t line_number) {
    WarningRecord record = record_from_json(object, line_number);
    if (!ids_.insert(record.id).second)
      throw SchemaError("line " + std::to_string(line_number) +
                        ": duplicate id " + record.id);
    std::optional<Split> split;
    if (auto it = object.find("split"); it != object.end()) {
      if (!it->is_string())
        throw SchemaError("line " + std::to_string(line_number) +
                          ": field split must be a string");
      split = parse_split(it->get<std::string>());
    }
    if (record.origin == Origin::open) {
      corpus_.open_pool.push_back(std::move(record));
      return;
    }
    auto &dataset = corpus_.datasets[record.cwe];
    dataset.cwe = record.cwe;
    if (split)
      dataset.split[record.id] = *split;
    dataset.records.push_back(std::move(record));
  }

  Corpus finish() && { return std::move(corpus_); }

private:
  Corpus corpus_;
  std::set<std::string> ids_;
};

} // namespace

const WarningRecord *Corpus::find_open(const std::string &id) const {
  for (const auto &record : open_pool)
    if (record.id == id)
      return &record;
  return nullptr;
}

Corpus ingest_warnings(const std::filesystem::path &path) {
  CorpusBuilder builder;
  for_each_jsonl(path, [&](std::size_t line_number, const Json &object) {
    builder.add(object, line_number);
  });
  return std::move(builder).finish();
}

Corpus ingest_lines(const std::vector<std::string> &lines) {
  CorpusBuilder builder;
  std::size_t number = 0;
  for (const auto &line : lines) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    Json object;
    try {
      object = Json::parse(line);
    } catch (const Json::parse_error &) {
      throw SchemaError("line " + std::to_string(number) + ": malformed JSON");
    }
    if (!object.is_object())
      throw SchemaError("line " + std::to_string(number) +
                        ": expected a JSON object");
    builder.add(object, number);
  }
  return std::move(builder).finish();
}

void write_jsonl(const std::vector<WarningRecord> &records,
                 const std::filesystem::path &path) {
  std::ostringstream out;
  for (const auto &record : records)
    out << canonical_dump(to_json(record)) << '\n';
  write_text_file_atomic(path, out.str());
}

void save_corpus(const Corpus &corpus, const std::filesystem::path &dir) {
  std::ostringstream labeled;
  for (const auto &[cwe, dataset] : corpus.datasets) {
    for (const auto &record : dataset.records) {
      Json object = to_json(record);
      if (auto it = dataset.split.find(record.id); it != dataset.split.end())
        object["split"] = to_string(it->second);
      labeled << canonical_dump(object) << '\n';
    }
  }
  write_text_file_atomic(dir / "labeled.jsonl", labeled.str());
  write_jsonl(corpus.open_pool, dir / "open.jsonl");
}

Corpus load_corpus(const std::filesystem::path &dir) {
  CorpusBuilder builder;
  for (const char *name : {"labeled.jsonl", "open.jsonl"}) {
    const auto path = dir / name;
    if (!std::filesystem::exists(path))
      throw Error("missing " + path.string() + " (run ingest first)");
    for_each_jsonl(path, [&](std::size_t line_number, const Json &object) {
      builder.add(object, line_number);
    });
  }
  return std::move(builder).finish();
}

} // namespace satriage::corpus
