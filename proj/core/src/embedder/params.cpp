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

#include "satriage/embedder/params.hpp"

#include "satriage/common/error.hpp"
#include "satriage/common/random.hpp"

namespace satriage::embedder {
namespace {

constexpr double kInitRange = 0.05;

Matrix uniform_matrix(Rng &rng, std::size_t rows, std::size_t cols) {
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  // Row-major fill so the draw order does not depend on Eigen's layout.
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      m(r, c) = rng.uniform(-kInitRange, kInitRange);
  return m;
}

bool same(const Matrix &a, const Matrix &b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
}

} // namespace

bool EmbedderParams::operator==(const EmbedderParams &other) const {
  return dims == other.dims && same(value_embeddings, other.value_embeddings) &&
         same(path_embeddings, other.path_embeddings) && same(combine, other.combine) &&
         same(attention, other.attention) && same(tag_weights, other.tag_weights);
}

bool EmbedderParams::all_finite() const {
  return value_embeddings.allFinite() && path_embeddings.allFinite() &&
         combine.allFinite() && attention.allFinite() && tag_weights.allFinite();
}

EmbedderParams init_params(const frontend::Vocabulary &vocab, EmbedderDims dims,
                           std::uint64_t seed) {
  if (dims.d_emb == 0 || dims.d_code == 0)
    throw Error("embedding dimensions must be positive");
  if (vocab.tokens.size() == 0 || vocab.paths.size() == 0 || vocab.tags.size() == 0)
    throw Error("vocabulary is empty");
  Rng rng(seed);
  EmbedderParams params;
  params.dims = dims;
  params.value_embeddings = uniform_matrix(rng, vocab.tokens.size(), dims.d_emb);
  params.path_embeddings = uniform_matrix(rng, vocab.paths.size(), dims.d_emb);
  params.combine = uniform_matrix(rng, dims.d_code, 3 * dims.d_emb);
  params.attention = uniform_matrix(rng, dims.d_code, 1);
  params.tag_weights = uniform_matrix(rng, vocab.tags.size(), dims.d_code);
  return params;
}

EmbedderParams zeros_like(const EmbedderParams &params) {
  EmbedderParams out;
  out.dims = params.dims;
  out.value_embeddings = Matrix::Zero(params.value_embeddings.rows(),
                                      params.value_embeddings.cols());
  out.path_embeddings = Matrix::Zero(params.path_embeddings.rows(),
                                     params.path_embeddings.cols());
  out.combine = Matrix::Zero(params.combine.rows(), params.combine.cols());
  out.attention = Vector::Zero(params.attention.size());
  out.tag_weights = Matrix::Zero(params.tag_weights.rows(), params.tag_weights.cols());
  return out;
}

EncodedBag encode(const frontend::Vocabulary &vocab, const frontend::ContextBag &bag) {
  EncodedBag out;
  out.left.reserve(bag.contexts.size());
  out.path.reserve(bag.contexts.size());
  out.right.reserve(bag.contexts.size());
  for (const auto &context : bag.contexts) {
    out.left.push_back(vocab.tokens.lookup(context.left));
    out.path.push_back(vocab.paths.lookup(context.path_string()));
    out.right.push_back(vocab.tokens.lookup(context.right));
  }
  return out;
}

} // namespace satriage::embedder
