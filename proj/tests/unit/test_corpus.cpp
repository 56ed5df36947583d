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

#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "satriage/common/error.hpp"
#include "satriage/corpus/ingest.hpp"
#include "satriage/corpus/split.hpp"
#include "satriage/corpus/synthetic.hpp"
#include "satriage/frontend/parser.hpp"

using namespace satriage;
using namespace satriage::corpus;

namespace {

std::string line_for(const std::string &id, const std::string &cwe, const std::string &origin,
                     int line = 1) {
  Json row = {{"id", id},          {"cwe", cwe},  {"source", "int f(void) { return 0; }"},
              {"file_path", "a.c"}, {"line", line}, {"checker", "chk"},
              {"origin", origin}};
  return row.dump();
}

CweDataset labeled_dataset(std::size_t positives, std::size_t negatives) {
  CweDataset d;
  d.cwe = "CWE-1";
  for (std::size_t i = 0; i < positives + negatives; ++i) {
    WarningRecord r;
    r.id = "w" + std::to_string(i);
    r.cwe = d.cwe;
    r.source = "int f(void) { return 0; }";
    r.origin = i < positives ? Origin::reported_fixed : Origin::dismissed;
    r.label = label_for(r.origin);
    d.records.push_back(r);
  }
  return d;
}

} // namespace

TEST(Origin, LabelsFollowOrigin) {
  EXPECT_EQ(label_for(Origin::reported_fixed), 1);
  EXPECT_EQ(label_for(Origin::dismissed), 0);
  EXPECT_EQ(label_for(Origin::synthetic_fixed), 0);
  EXPECT_FALSE(label_for(Origin::open).has_value());
  for (auto o : {Origin::reported_fixed, Origin::dismissed, Origin::synthetic_fixed, Origin::open})
    EXPECT_EQ(parse_origin(to_string(o)), o);
  EXPECT_THROW(parse_origin("fixed"), SchemaError);
}

TEST(Ingest, GroupsByCweAndOpenPool) {
  const auto corpus = ingest_lines({line_for("a", "CWE-476", "reported_fixed"),
                                    line_for("b", "CWE-476", "dismissed"), "",
                                    line_for("c", "CWE-457", "synthetic_fixed"),
                                    line_for("d", "CWE-476", "open")});
  ASSERT_EQ(corpus.datasets.size(), 2u);
  EXPECT_EQ(corpus.datasets.at("CWE-476").records.size(), 2u);
  EXPECT_EQ(corpus.datasets.at("CWE-476").records[0].label, 1);
  EXPECT_EQ(corpus.datasets.at("CWE-457").records[0].label, 0);
  ASSERT_EQ(corpus.open_pool.size(), 1u);
  EXPECT_NE(corpus.find_open("d"), nullptr);
  EXPECT_EQ(corpus.find_open("a"), nullptr);
}

TEST(Ingest, RejectsDuplicateIdsWithLineNumber) {
  try {
    ingest_lines({line_for("a", "CWE-476", "dismissed"), line_for("a", "CWE-476", "dismissed")});
    FAIL();
  } catch (const SchemaError &e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("duplicate id"), std::string::npos);
  }
}

TEST(Ingest, RejectsUnknownOriginAndMalformedLines) {
  EXPECT_THROW(ingest_lines({line_for("a", "CWE-476", "maybe")}), SchemaError);
  EXPECT_THROW(ingest_lines({"{not json"}), SchemaError);
  EXPECT_THROW(ingest_lines({R"({"id":"x"})"}), SchemaError);
  EXPECT_THROW(ingest_lines({line_for("a", "CWE-476", "dismissed", 9)}), SchemaError);
}

TEST(Ingest, RecordJsonRoundTrip) {
  WarningRecord r;
  r.id = "id-1";
  r.cwe = "CWE-125";
  r.source = "int g(int x) {\n  return x;\n}";
  r.file_path = "src/g.c";
  r.line = 2;
  r.checker = "alpha.core";
  r.origin = Origin::reported_fixed;
  r.label = 1;
  EXPECT_EQ(record_from_json(to_json(r)), r);
}

TEST(Stats, CountsByOrigin) {
  const auto corpus = ingest_lines(
      {line_for("a", "CWE-1", "reported_fixed"), line_for("b", "CWE-1", "reported_fixed"),
       line_for("c", "CWE-1", "synthetic_fixed"), line_for("d", "CWE-1", "dismissed"),
       line_for("e", "CWE-1", "open"), line_for("f", "CWE-2", "open")});
  const auto row = dataset_stats(corpus.datasets.at("CWE-1"), corpus.open_pool);
  EXPECT_EQ(row.n_true, 2u);
  EXPECT_EQ(row.n_fixed, 1u);
  EXPECT_EQ(row.n_fake, 1u);
  EXPECT_EQ(row.total, row.n_true + row.n_fixed + row.n_fake);
  EXPECT_EQ(row.n_open, 1u);
}

TEST(Split, TrainCountsFollowLargestRemainder) {
  EXPECT_EQ(stratified_train_counts({50, 50}, 0.8), (std::vector<std::size_t>{40, 40}));
  // 0.8*7 = 5.6 and 0.8*3 = 2.4; 8 seats overall, the extra goes to class 0.
  EXPECT_EQ(stratified_train_counts({7, 3}, 0.8), (std::vector<std::size_t>{6, 2}));
  // Equal fractional parts: positive class (index 1) first.
  EXPECT_EQ(stratified_train_counts({5, 5}, 0.5), (std::vector<std::size_t>{2, 3}));
}

TEST(Split, SizesAndStratificationHold) {
  for (std::size_t pos : {2u, 3u, 9u, 31u, 100u}) {
    for (std::size_t neg : {2u, 3u, 13u, 40u}) {
      const auto outcome = stratified_split(labeled_dataset(pos, neg), 0.8, pos * 100 + neg);
      const auto &d = outcome.dataset;
      const auto train = d.in_split(Split::train);
      const auto val = d.in_split(Split::val);
      EXPECT_EQ(train.size() + val.size(), pos + neg);
      EXPECT_EQ(train.size(), static_cast<std::size_t>(std::llround(0.8 * (pos + neg))));
      std::size_t train_pos = 0;
      std::size_t val_pos = 0;
      for (auto *r : train)
        train_pos += *r->label;
      for (auto *r : val)
        val_pos += *r->label;
      EXPECT_GE(train_pos, 1u);
      EXPECT_GE(train.size() - train_pos, 1u);
      if (val.size() >= 2) {
        EXPECT_GE(val_pos, 1u);
        EXPECT_GE(val.size() - val_pos, 1u);
      }
      EXPECT_LE(std::abs(static_cast<double>(train_pos) - 0.8 * pos), 1.0);
    }
  }
}

TEST(Split, DeterministicInSeed) {
  const auto a = stratified_split(labeled_dataset(20, 20), 0.8, 11).dataset.split;
  const auto b = stratified_split(labeled_dataset(20, 20), 0.8, 11).dataset.split;
  const auto c = stratified_split(labeled_dataset(20, 20), 0.8, 12).dataset.split;
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
}

TEST(Split, SingletonClassGoesToTrainWithWarning) {
  const auto outcome = stratified_split(labeled_dataset(1, 10), 0.8, 3);
  EXPECT_FALSE(outcome.warnings.empty());
  for (const auto *r : outcome.dataset.in_split(Split::val))
    EXPECT_EQ(*r->label, 0);
}

TEST(Split, RejectsBadInputs) {
  EXPECT_THROW(stratified_split(labeled_dataset(1, 0), 0.8, 1), Error);
  EXPECT_THROW(stratified_split(labeled_dataset(5, 5), 1.0, 1), Error);
}

TEST(Synthetic, DeterministicAndParsable) {
  SyntheticSpec spec = parse_synthetic_spec(
      Json::parse(R"({"CWE-476": {"pos": 5, "neg": 4, "open": 3}, "CWE-457": 3})"));
  EXPECT_EQ(spec.cwes.at("CWE-457").reported_fixed, 3u);
  EXPECT_EQ(spec.cwes.at("CWE-457").dismissed, 3u);
  const auto a = generate_synthetic_corpus(spec, 9);
  EXPECT_EQ(a, generate_synthetic_corpus(spec, 9));
  EXPECT_NE(a, generate_synthetic_corpus(spec, 10));

  const auto records = generate_synthetic_records(spec, 9);
  EXPECT_EQ(records.size(), 5u + 4u + 3u + 6u);
  std::set<std::string> ids;
  for (const auto &r : records) {
    EXPECT_NO_THROW(frontend::parse_function(r.source)) << r.source;
    EXPECT_NO_THROW(validate(r));
    ids.insert(r.id);
  }
  EXPECT_EQ(ids.size(), records.size());
}

TEST(Synthetic, RejectsUnknownTemplates) {
  SyntheticSpec spec;
  spec.cwes["CWE-9999"] = {1, 1, 0, 0};
  EXPECT_THROW(generate_synthetic_records(spec, 1), Error);
  EXPECT_THROW(parse_synthetic_spec(Json::parse(R"({"CWE-476": {"bogus": 1}})")), SchemaError);
}

TEST(Corpus, SaveLoadRoundTrip) {
  const auto dir = oracle::make_temp_dir("corpus");
  SyntheticSpec spec;
  spec.cwes["CWE-476"] = {6, 6, 2, 3};
  write_synthetic_corpus(spec, 2, dir / "in.jsonl");
  auto corpus = ingest_warnings(dir / "in.jsonl");
  auto &d = corpus.datasets.at("CWE-476");
  d = stratified_split(std::move(d), 0.8, 1).dataset;
  save_corpus(corpus, dir);
  const auto loaded = load_corpus(dir);
  EXPECT_EQ(loaded.datasets.at("CWE-476").records, d.records);
  EXPECT_EQ(loaded.datasets.at("CWE-476").split, d.split);
  EXPECT_EQ(loaded.open_pool, corpus.open_pool);
  std::filesystem::remove_all(dir);
}
