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

#include "satriage/embedder/model_io.hpp"

#include "satriage/common/error.hpp"

namespace satriage::embedder {
namespace {

const Json &field(const Json &object, const char *name) {
  auto it = object.find(name);
  if (it == object.end())
    throw SchemaError(std::string("embedder model: missing field ") + name);
  return *it;
}

} // namespace

Json matrix_to_json(const Matrix &m) {
  Json data = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      data.push_back(m(r, c));
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Matrix matrix_from_json(const Json &value) {
  if (!value.is_object())
    throw SchemaError("matrix must be an object");
  const auto rows = value.at("rows").get<Eigen::Index>();
  const auto cols = value.at("cols").get<Eigen::Index>();
  const Json &data = value.at("data");
  if (rows < 0 || cols < 0 || !data.is_array() ||
      data.size() != static_cast<std::size_t>(rows * cols))
    throw SchemaError("matrix shape does not match its data");
  Matrix m(rows, cols);
  std::size_t k = 0;
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c)
      m(r, c) = data[k++].get<double>();
  return m;
}

Json to_json(const EmbedderModel &model) {
  const auto &p = model.params;
  return Json{
      {"format", "satriage-embedder"},
      {"version", kEmbedderFormatVersion},
      {"dims", {{"d_emb", p.dims.d_emb}, {"d_code", p.dims.d_code}}},
      {"caps",
       {{"max_path_length", model.caps.max_path_length},
        {"max_path_width", model.caps.max_path_width},
        {"max_contexts", model.caps.max_contexts}}},
      {"extraction_seed", model.extraction_seed},
      {"vocab",
       {{"tokens", model.vocab.tokens.to_json()},
        {"paths", model.vocab.paths.to_json()},
        {"tags", model.vocab.tags.to_json()}}},
      {"params",
       {{"value_embeddings", matrix_to_json(p.value_embeddings)},
        {"path_embeddings", matrix_to_json(p.path_embeddings)},
        {"combine", matrix_to_json(p.combine)},
        {"attention", matrix_to_json(p.attention)},
        {"tag_weights", matrix_to_json(p.tag_weights)}}},
  };
}

EmbedderModel embedder_from_json(const Json &value) {
  if (!value.is_object() || value.value("format", "") != "satriage-embedder")
    throw SchemaError("not an embedder model file");
  const int version = field(value, "version").get<int>();
  if (version != kEmbedderFormatVersion)
    throw SchemaError("embedder model version mismatch: expected " +
                      std::to_string(kEmbedderFormatVersion) + ", found " +
                      std::to_string(version));
  try {
    EmbedderModel model;
    const Json &dims = field(value, "dims");
    model.params.dims.d_emb = dims.at("d_emb").get<std::size_t>();
    model.params.dims.d_code = dims.at("d_code").get<std::size_t>();
    const Json &caps = field(value, "caps");
    model.caps.max_path_length = caps.at("max_path_length").get<std::size_t>();
    model.caps.max_path_width = caps.at("max_path_width").get<std::size_t>();
    model.caps.max_contexts = caps.at("max_contexts").get<std::size_t>();
    model.extraction_seed = field(value, "extraction_seed").get<std::uint64_t>();
    const Json &vocab = field(value, "vocab");
    model.vocab.tokens = frontend::Index::from_json(vocab.at("tokens"));
    model.vocab.paths = frontend::Index::from_json(vocab.at("paths"));
    model.vocab.tags = frontend::Index::from_json(vocab.at("tags"));
    const Json &params = field(value, "params");
    auto &p = model.params;
    p.value_embeddings = matrix_from_json(params.at("value_embeddings"));
    p.path_embeddings = matrix_from_json(params.at("path_embeddings"));
    p.combine = matrix_from_json(params.at("combine"));
    const Matrix attention = matrix_from_json(params.at("attention"));
    p.attention = attention.reshaped();
    p.tag_weights = matrix_from_json(params.at("tag_weights"));

    const auto d_emb = static_cast<Eigen::Index>(p.dims.d_emb);
    const auto d_code = static_cast<Eigen::Index>(p.dims.d_code);
    if (p.value_embeddings.rows() != static_cast<Eigen::Index>(model.vocab.tokens.size()) ||
        p.value_embeddings.cols() != d_emb ||
        p.path_embeddings.rows() != static_cast<Eigen::Index>(model.vocab.paths.size()) ||
        p.path_embeddings.cols() != d_emb || p.combine.rows() != d_code ||
        p.combine.cols() != 3 * d_emb || p.attention.size() != d_code ||
        p.tag_weights.rows() != static_cast<Eigen::Index>(model.vocab.tags.size()) ||
        p.tag_weights.cols() != d_code)
      throw SchemaError("embedder model: matrix shapes disagree with dims/vocab");
    return model;
  } catch (const Json::exception &e) {
    throw SchemaError(std::string("embedder model: ") + e.what());
  }
}

std::string serialize(const EmbedderModel &model) { return canonical_dump(to_json(model)); }

EmbedderModel deserialize_embedder(const std::string &text) {
  Json value;
  try {
    value = Json::parse(text);
  } catch (const Json::parse_error &e) {
    throw SchemaError(std::string("embedder model: ") + e.what());
  }
  return embedder_from_json(value);
}

void save_embedder(const EmbedderModel &model, const std::filesystem::path &path) {
  write_text_file_atomic(path, serialize(model));
}

EmbedderModel load_embedder(const std::filesystem::path &path) {
  return deserialize_embedder(read_text_file(path));
}

} // namespace satriage::embedder
