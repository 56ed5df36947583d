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
#include <string_view>
#include <vector>

#include "satriage/embedder/params.hpp"
#include "satriage/frontend/paths.hpp"

namespace satriage::embedder {

/// Fixed-length function embedding.
struct CodeVector {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  bool operator==(const CodeVector &) const = default;
};

struct ForwardResult {
  Vector attention_weights; // one per context, sums to 1
  Vector code_vector;       // d_code
  Vector tag_distribution;  // |tags|
  Matrix combined;          // d_code x contexts, tanh(combine * c_i)
};

/// Attention forward pass. Throws Error("no contexts") on an empty bag.
ForwardResult forward(const EmbedderParams &params, const EncodedBag &bag);

/// Cross-entropy of the tag head for `tag` and its gradient, accumulated
/// into `grad` (scaled by `weight`). Returns the unscaled loss.
double accumulate_gradient(const EmbedderParams &params, const EncodedBag &bag,
                           std::size_t tag, double weight, EmbedderParams &grad);

/// Loss alone, for finite-difference checks.
double tag_loss(const EmbedderParams &params, const EncodedBag &bag, std::size_t tag);

/// Frozen embedder: vocabulary, extraction caps and trained weights.
struct EmbedderModel {
  frontend::Vocabulary vocab;
  EmbedderParams params;
  frontend::ExtractionCaps caps;
  std::uint64_t extraction_seed = 0;
};

struct Embedding {
  CodeVector vector;
  /// Set when the function produced no path contexts; vector is all zeros.
  bool empty_bag = false;
};

/// Parse, extract and run the forward pass. Parse errors propagate.
Embedding embed_function(const EmbedderModel &model, std::string_view source);

/// Attention detail for one function, used for highlighting.
struct AttendedContext {
  frontend::PathContext context;
  double weight = 0.0;
};

struct EmbeddingDetail {
  Embedding embedding;
  /// Contexts sorted by attention weight, descending (ties keep bag order).
  std::vector<AttendedContext> ranked;
};

EmbeddingDetail explain_function(const EmbedderModel &model, std::string_view source);

} // namespace satriage::embedder
