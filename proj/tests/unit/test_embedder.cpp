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
#include <cmath>

#include "oracles.hpp"
#include "satriage/common/error.hpp"
#include "satriage/common/json_io.hpp"
#include "satriage/embedder/model.hpp"
#include "satriage/embedder/model_io.hpp"
#include "satriage/embedder/pretrain.hpp"
#include "satriage/frontend/parser.hpp"

using namespace satriage;
using namespace satriage::embedder;

namespace {

const char *const kSources[] = {
    "int get_size(int *p) { if (p == NULL) return 0; return *p; }",
    "void set_flag(int *flag) { *flag = 1; }",
    "int get_count(struct list *l) { return l->count; }",
    "void clear_buffer(char *buf, int n) { for (int i = 0; i < n; i++) buf[i] = 0; }",
    "int get_size(int *q) { if (!q) return -1; return q[0]; }",
    "void set_flag(int *f) { f[0] = 1; return; }",
};

struct Fixture {
  frontend::Vocabulary vocab;
  std::vector<frontend::ContextBag> bags;
  std::vector<EncodedBag> encoded;
  std::vector<std::size_t> tags;
};

Fixture make_fixture() {
  Fixture f;
  for (const char *source : kSources)
    f.bags.push_back(frontend::extract_path_contexts(frontend::parse_function(source), {}, 0));
  f.vocab = frontend::build_vocab(f.bags, 1);
  for (const auto &bag : f.bags) {
    f.encoded.push_back(encode(f.vocab, bag));
    f.tags.push_back(f.vocab.tags.lookup(bag.function_name));
  }
  return f;
}

} // namespace

TEST(Params, ShapesAndDeterminism) {
  const auto f = make_fixture();
  const EmbedderDims dims{6, 7};
  const auto a = init_params(f.vocab, dims, 3);
  EXPECT_EQ(a.value_embeddings.rows(), static_cast<Eigen::Index>(f.vocab.tokens.size()));
  EXPECT_EQ(a.value_embeddings.cols(), 6);
  EXPECT_EQ(a.path_embeddings.rows(), static_cast<Eigen::Index>(f.vocab.paths.size()));
  EXPECT_EQ(a.combine.rows(), 7);
  EXPECT_EQ(a.combine.cols(), 18);
  EXPECT_EQ(a.attention.size(), 7);
  EXPECT_EQ(a.tag_weights.rows(), static_cast<Eigen::Index>(f.vocab.tags.size()));
  EXPECT_LE(a.combine.cwiseAbs().maxCoeff(), 0.05);
  EXPECT_TRUE(a == init_params(f.vocab, dims, 3));
  EXPECT_FALSE(a == init_params(f.vocab, dims, 4));
}

TEST(Params, EncodeFallsBackToUnknown) {
  const auto f = make_fixture();
  const auto other = frontend::extract_path_contexts(
      frontend::parse_function("int zz(int qq) { return qq * 77; }"), {}, 0);
  const auto encoded = encode(f.vocab, other);
  EXPECT_EQ(encoded.size(), other.contexts.size());
  EXPECT_TRUE(std::any_of(encoded.left.begin(), encoded.left.end(),
                          [](std::size_t id) { return id == frontend::Index::kUnk; }) ||
              std::any_of(encoded.right.begin(), encoded.right.end(),
                          [](std::size_t id) { return id == frontend::Index::kUnk; }));
}

TEST(Forward, AttentionIsADistribution) {
  const auto f = make_fixture();
  const auto params = init_params(f.vocab, {8, 16}, 1);
  for (const auto &bag : f.encoded) {
    const auto out = forward(params, bag);
    ASSERT_EQ(out.attention_weights.size(), static_cast<Eigen::Index>(bag.size()));
    EXPECT_NEAR(out.attention_weights.sum(), 1.0, 1e-6);
    EXPECT_GE(out.attention_weights.minCoeff(), 0.0);
    EXPECT_EQ(out.code_vector.size(), 16);
    EXPECT_NEAR(out.tag_distribution.sum(), 1.0, 1e-9);
    EXPECT_LE(out.code_vector.cwiseAbs().maxCoeff(), 1.0);
  }
  EXPECT_THROW(forward(params, EncodedBag{}), Error);
}

TEST(Gradient, MatchesFiniteDifferencesAcrossSeeds) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed)
    EXPECT_LT(oracle::embedder_gradient_error(seed), 1e-4) << "seed " << seed;
}

TEST(Gradient, WeightScalesLinearly) {
  const auto f = make_fixture();
  const auto params = init_params(f.vocab, {4, 5}, 2);
  auto g1 = zeros_like(params);
  auto g3 = zeros_like(params);
  const double loss = accumulate_gradient(params, f.encoded[0], f.tags[0], 1.0, g1);
  EXPECT_DOUBLE_EQ(accumulate_gradient(params, f.encoded[0], f.tags[0], 3.0, g3), loss);
  EXPECT_NEAR(loss, tag_loss(params, f.encoded[0], f.tags[0]), 1e-12);
  EXPECT_LT((g3.combine - 3.0 * g1.combine).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((g3.tag_weights - 3.0 * g1.tag_weights).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Pretrain, LossDecreasesAndTagsAreLearned) {
  const auto f = make_fixture();
  PretrainOptions options;
  options.epochs = 60;
  options.learning_rate = 0.1;
  options.batch_size = 2;
  options.seed = 5;
  const auto result = pretrain(init_params(f.vocab, {8, 12}, 5), f.encoded, f.tags, options);
  ASSERT_EQ(result.epoch_loss.size(), 60u);
  EXPECT_LT(result.epoch_loss.back(), result.epoch_loss.front());
  EXPECT_TRUE(result.params.all_finite());
  EXPECT_GE(tag_accuracy(result.params, f.encoded, f.tags), 0.5);
}

TEST(Pretrain, Deterministic) {
  const auto f = make_fixture();
  PretrainOptions options;
  options.epochs = 3;
  options.seed = 9;
  const auto a = pretrain(init_params(f.vocab, {4, 6}, 1), f.encoded, f.tags, options);
  const auto b = pretrain(init_params(f.vocab, {4, 6}, 1), f.encoded, f.tags, options);
  EXPECT_TRUE(a.params == b.params);
  EXPECT_EQ(a.epoch_loss, b.epoch_loss);
}

TEST(Pretrain, NeedsTwoTags) {
  const auto f = make_fixture();
  std::vector<std::size_t> same(f.tags.size(), f.tags[0]);
  EXPECT_THROW(pretrain(init_params(f.vocab, {4, 6}, 1), f.encoded, same, {}), TrainingError);
}

TEST(Pretrain, DivergenceIsReported) {
  const auto f = make_fixture();
  PretrainOptions options;
  options.epochs = 5;
  options.learning_rate = 1e300;
  try {
    pretrain(init_params(f.vocab, {4, 6}, 1), f.encoded, f.tags, options);
    FAIL() << "expected divergence";
  } catch (const TrainingError &e) {
    EXPECT_NE(std::string(e.what()).find("divergence at epoch"), std::string::npos);
  }
}

TEST(Model, EmbedAndExplain) {
  const auto f = make_fixture();
  EmbedderModel model;
  model.vocab = f.vocab;
  model.params = init_params(f.vocab, {4, 6}, 1);
  const auto e = embed_function(model, kSources[0]);
  EXPECT_EQ(e.vector.size(), 6u);
  EXPECT_FALSE(e.empty_bag);

  const auto empty = embed_function(model, "void noop(void) { }");
  EXPECT_TRUE(empty.empty_bag);
  EXPECT_TRUE(std::all_of(empty.vector.values.begin(), empty.vector.values.end(),
                          [](double v) { return v == 0.0; }));
  EXPECT_THROW(embed_function(model, "int broken( {"), ParseError);

  const auto detail = explain_function(model, kSources[3]);
  ASSERT_FALSE(detail.ranked.empty());
  EXPECT_TRUE(std::is_sorted(detail.ranked.begin(), detail.ranked.end(),
                             [](const auto &a, const auto &b) { return a.weight > b.weight; }));
  EXPECT_EQ(detail.embedding.vector, embed_function(model, kSources[3]).vector);
}

TEST(ModelIo, SaveLoadSaveIsByteIdentical) {
  const auto f = make_fixture();
  EmbedderModel model;
  model.vocab = f.vocab;
  model.params = init_params(f.vocab, {4, 6}, 8);
  model.caps.max_contexts = 77;
  model.extraction_seed = 13;
  const auto text = serialize(model);
  const auto loaded = deserialize_embedder(text);
  EXPECT_EQ(serialize(loaded), text);
  EXPECT_TRUE(loaded.params == model.params);
  EXPECT_EQ(loaded.caps.max_contexts, 77u);
  EXPECT_EQ(loaded.extraction_seed, 13u);
}

TEST(ModelIo, RejectsVersionMismatchAndBadShapes) {
  const auto f = make_fixture();
  EmbedderModel model;
  model.vocab = f.vocab;
  model.params = init_params(f.vocab, {4, 6}, 8);
  auto json = to_json(model);
  json["version"] = 99;
  EXPECT_THROW(embedder_from_json(json), SchemaError);
  EXPECT_THROW(matrix_from_json(Json{{"rows", 2}, {"cols", 2}, {"data", {1.0, 2.0}}}),
               SchemaError);
  const Matrix m = Matrix::Random(3, 2);
  EXPECT_EQ(matrix_from_json(matrix_to_json(m)), m);
}
