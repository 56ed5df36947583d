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

#include <algorithm>
#include <set>

#include "oracles.hpp"
#include "satriage/common/error.hpp"
#include "satriage/common/json_io.hpp"
#include "satriage/common/random.hpp"

using namespace satriage;

TEST(Rng, SameSeedSameStream) {
  Rng a(7);
  Rng b(7);
  for (int i = 0; i < 100; ++i)
    EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(Rng, DifferentSeedsDiverge) {
  Rng a(1);
  Rng b(2);
  int equal = 0;
  for (int i = 0; i < 32; ++i)
    equal += a.next_u64() == b.next_u64();
  EXPECT_LT(equal, 2);
}

TEST(Rng, UniformStaysInRange) {
  Rng rng(3);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const double v = rng.uniform(-2.0, 5.0);
    ASSERT_GE(v, -2.0);
    ASSERT_LT(v, 5.0);
  }
}

TEST(Rng, BelowCoversRange) {
  Rng rng(4);
  std::set<std::size_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const auto v = rng.below(7);
    ASSERT_LT(v, 7u);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 7u);
}

TEST(Rng, NormalMoments) {
  Rng rng(5);
  const int n = 50000;
  double sum = 0.0;
  double sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sq += z * z;
  }
  const double mean = sum / n;
  EXPECT_NEAR(mean, 0.0, 0.02);
  EXPECT_NEAR(sq / n - mean * mean, 1.0, 0.03);
}

TEST(Rng, SampleWithoutReplacementIsSortedAndDistinct) {
  Rng rng(6);
  const auto picks = rng.sample_without_replacement(50, 20);
  ASSERT_EQ(picks.size(), 20u);
  EXPECT_TRUE(std::is_sorted(picks.begin(), picks.end()));
  EXPECT_EQ(std::set<std::size_t>(picks.begin(), picks.end()).size(), 20u);
  EXPECT_LT(picks.back(), 50u);
  EXPECT_EQ(rng.sample_without_replacement(5, 5), (std::vector<std::size_t>{0, 1, 2, 3, 4}));
}

TEST(Rng, ShuffleIsPermutation) {
  Rng rng(8);
  std::vector<int> items{1, 2, 3, 4, 5, 6, 7, 8};
  auto copy = items;
  rng.shuffle(copy);
  std::sort(copy.begin(), copy.end());
  EXPECT_EQ(copy, items);
}

TEST(MixSeed, StreamsDiffer) {
  EXPECT_NE(mix_seed(42, 0), mix_seed(42, 1));
  EXPECT_EQ(mix_seed(42, 3), mix_seed(42, 3));
}

TEST(Json, CanonicalDumpSortsKeysAndRoundTripsDoubles) {
  Json value = {{"b", 0.1}, {"a", 1}, {"c", {{"z", true}, {"y", nullptr}}}};
  const auto text = canonical_dump(value);
  EXPECT_EQ(text, R"({"a":1,"b":0.1,"c":{"y":null,"z":true}})");
  const double third = 1.0 / 3.0;
  EXPECT_EQ(Json::parse(canonical_dump(Json(third))).get<double>(), third);
}

TEST(Json, AtomicWriteAndJsonl) {
  const auto dir = oracle::make_temp_dir("json");
  const auto path = dir / "rows.jsonl";
  write_text_file_atomic(path, "{\"a\":1}\n\n");
  append_line(path, "{\"a\":2}");
  std::vector<int> seen;
  for_each_jsonl(path, [&](std::size_t, const Json &row) { seen.push_back(row["a"]); });
  EXPECT_EQ(seen, (std::vector<int>{1, 2}));

  append_line(path, "[1,2]");
  try {
    for_each_jsonl(path, [](std::size_t, const Json &) {});
    FAIL() << "expected SchemaError";
  } catch (const SchemaError &e) {
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
  }
  std::filesystem::remove_all(dir);
}

TEST(Json, ReadMissingFileThrows) {
  EXPECT_THROW(read_text_file("/nonexistent/satriage/file"), Error);
}
