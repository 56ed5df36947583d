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

#include "satriage/embedder/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "satriage/common/error.hpp"
#include "satriage/frontend/parser.hpp"

namespace satriage::embedder {
namespace {

Vector softmax(const Vector &scores) {
  const double peak = scores.maxCoeff();
  Vector out = (scores.array() - peak).exp().matrix();
  out /= out.sum();
  return out;
}

// Columns are concat(value(left), path(path), value(right)).
Matrix gather_contexts(const EmbedderParams &params, const EncodedBag &bag) {
  const auto d = static_cast<Eigen::Index>(params.dims.d_emb);
  Matrix contexts(3 * d, static_cast<Eigen::Index>(bag.size()));
  for (std::size_t i = 0; i < bag.size(); ++i) {
    const auto col = static_cast<Eigen::Index>(i);
    contexts.col(col).segment(0, d) =
        params.value_embeddings.row(static_cast<Eigen::Index>(bag.left[i])).transpose();
    contexts.col(col).segment(d, d) =
        params.path_embeddings.row(static_cast<Eigen::Index>(bag.path[i])).transpose();
    contexts.col(col).segment(2 * d, d) =
        params.value_embeddings.row(static_cast<Eigen::Index>(bag.right[i])).transpose();
  }
  return contexts;
}

ForwardResult forward_with(const EmbedderParams &params, const Matrix &contexts) {
  ForwardResult out;
  out.combined = (params.combine * contexts).array().tanh().matrix();
  const Vector scores = out.combined.transpose() * params.attention;
  out.attention_weights = softmax(scores);
  out.code_vector = out.combined * out.attention_weights;
  out.tag_distribution = softmax(params.tag_weights * out.code_vector);
  return out;
}

} // namespace

ForwardResult forward(const EmbedderParams &params, const EncodedBag &bag) {
  if (bag.empty())
    throw Error("no contexts");
  return forward_with(params, gather_contexts(params, bag));
}

double tag_loss(const EmbedderParams &params, const EncodedBag &bag, std::size_t tag) {
  const ForwardResult result = forward(params, bag);
  return -std::log(result.tag_distribution(static_cast<Eigen::Index>(tag)));
}

double accumulate_gradient(const EmbedderParams &params, const EncodedBag &bag,
                           std::size_t tag, double weight, EmbedderParams &grad) {
  if (bag.empty())
    throw Error("no contexts");
  const Matrix contexts = gather_contexts(params, bag);
  const ForwardResult fwd = forward_with(params, contexts);
  const auto t = static_cast<Eigen::Index>(tag);
  const double loss = -std::log(fwd.tag_distribution(t));

  // Softmax cross-entropy head.
  Vector d_logits = fwd.tag_distribution;
  d_logits(t) -= 1.0;
  d_logits *= weight;
  grad.tag_weights.noalias() += d_logits * fwd.code_vector.transpose();
  const Vector d_code = params.tag_weights.transpose() * d_logits;

  // code_vector = H * alpha, alpha = softmax(H^T a).
  const Vector d_alpha = fwd.combined.transpose() * d_code;
  const double mean = fwd.attention_weights.dot(d_alpha);
  const Vector d_scores =
      (fwd.attention_weights.array() * (d_alpha.array() - mean)).matrix();
  grad.attention.noalias() += fwd.combined * d_scores;

  Matrix d_combined = d_code * fwd.attention_weights.transpose();
  d_combined.noalias() += params.attention * d_scores.transpose();
  const Matrix d_pre =
      (d_combined.array() * (1.0 - fwd.combined.array().square())).matrix();
  grad.combine.noalias() += d_pre * contexts.transpose();
  const Matrix d_contexts = params.combine.transpose() * d_pre;

  const auto d = static_cast<Eigen::Index>(params.dims.d_emb);
  for (std::size_t i = 0; i < bag.size(); ++i) {
    const auto col = static_cast<Eigen::Index>(i);
    grad.value_embeddings.row(static_cast<Eigen::Index>(bag.left[i])) +=
        d_contexts.col(col).segment(0, d).transpose();
    grad.path_embeddings.row(static_cast<Eigen::Index>(bag.path[i])) +=
        d_contexts.col(col).segment(d, d).transpose();
    grad.value_embeddings.row(static_cast<Eigen::Index>(bag.right[i])) +=
        d_contexts.col(col).segment(2 * d, d).transpose();
  }
  return loss;
}

namespace {

struct Prepared {
  frontend::ContextBag bag;
  EncodedBag encoded;
};

Prepared prepare(const EmbedderModel &model, std::string_view source) {
  const frontend::AstNode ast = frontend::parse_function(source);
  Prepared out;
  out.bag = frontend::extract_path_contexts(ast, model.caps, model.extraction_seed);
  out.encoded = encode(model.vocab, out.bag);
  return out;
}

} // namespace

Embedding embed_function(const EmbedderModel &model, std::string_view source) {
  const Prepared prepared = prepare(model, source);
  Embedding out;
  if (prepared.encoded.empty()) {
    out.vector.values.assign(model.params.dims.d_code, 0.0);
    out.empty_bag = true;
    return out;
  }
  const ForwardResult result = forward(model.params, prepared.encoded);
  out.vector.values.assign(result.code_vector.data(),
                           result.code_vector.data() + result.code_vector.size());
  return out;
}

EmbeddingDetail explain_function(const EmbedderModel &model, std::string_view source) {
  Prepared prepared = prepare(model, source);
  EmbeddingDetail out;
  if (prepared.encoded.empty()) {
    out.embedding.vector.values.assign(model.params.dims.d_code, 0.0);
    out.embedding.empty_bag = true;
    return out;
  }
  const ForwardResult result = forward(model.params, prepared.encoded);
  out.embedding.vector.values.assign(result.code_vector.data(),
                                     result.code_vector.data() + result.code_vector.size());
  out.ranked.reserve(prepared.bag.contexts.size());
  for (std::size_t i = 0; i < prepared.bag.contexts.size(); ++i)
    out.ranked.push_back({std::move(prepared.bag.contexts[i]),
                          result.attention_weights(static_cast<Eigen::Index>(i))});
  std::stable_sort(out.ranked.begin(), out.ranked.end(),
                   [](const AttendedContext &a, const AttendedContext &b) {
                     return a.weight > b.weight;
                   });
  return out;
}

} // namespace satriage::embedder
