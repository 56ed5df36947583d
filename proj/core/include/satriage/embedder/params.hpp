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
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "satriage/frontend/vocab.hpp"

namespace satriage::embedder {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct EmbedderDims {
  std::size_t d_emb = 128;
  std::size_t d_code = 384;

  bool operator==(const EmbedderDims &) const = default;
};

/// Trainable weights of the path-attention network.
struct EmbedderParams {
  EmbedderDims dims;
  Matrix value_embeddings; // |tokens| x d_emb
  Matrix path_embeddings;  // |paths| x d_emb
  Matrix combine;          // d_code x 3*d_emb
  Vector attention;        // d_code
  Matrix tag_weights;      // |tags| x d_code

  bool operator==(const EmbedderParams &other) const;
  bool all_finite() const;
};

/// Uniform draws in [-0.05, 0.05]; deterministic in `seed`.
EmbedderParams init_params(const frontend::Vocabulary &vocab, EmbedderDims dims,
                           std::uint64_t seed);

/// Same-shaped accumulator used for gradients.
EmbedderParams zeros_like(const EmbedderParams &params);

/// A context bag mapped through the vocabulary (UNK fallback).
struct EncodedBag {
  std::vector<std::size_t> left;
  std::vector<std::size_t> path;
  std::vector<std::size_t> right;

  std::size_t size() const { return path.size(); }
  bool empty() const { return path.empty(); }
};

EncodedBag encode(const frontend::Vocabulary &vocab, const frontend::ContextBag &bag);

} // namespace satriage::embedder
