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

#include <filesystem>
#include <string>

#include "satriage/common/json_io.hpp"
#include "satriage/embedder/model.hpp"

namespace satriage::embedder {

inline constexpr int kEmbedderFormatVersion = 1;

/// Shape-tagged row-major matrix: {"rows": r, "cols": c, "data": [...]}.
Json matrix_to_json(const Matrix &m);
Matrix matrix_from_json(const Json &value);

Json to_json(const EmbedderModel &model);
/// Throws SchemaError on a version mismatch or malformed content.
EmbedderModel embedder_from_json(const Json &value);

/// Canonical JSON: save -> load -> save is byte-identical.
std::string serialize(const EmbedderModel &model);
EmbedderModel deserialize_embedder(const std::string &text);

void save_embedder(const EmbedderModel &model, const std::filesystem::path &path);
EmbedderModel load_embedder(const std::filesystem::path &path);

} // namespace satriage::embedder
