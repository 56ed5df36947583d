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
#include <filesystem>
#include <map>
#include <string>

#include "satriage/ensemble/ensemble.hpp"

namespace satriage::ensemble {

inline constexpr int kRegistrySchemaVersion = 1;

/// Published ensembles keyed by CWE id.
struct Registry {
  std::map<std::string, EnsembleModel> models;

  const EnsembleModel *find(const std::string &cwe) const;
  /// Version the next model for `cwe` should carry.
  int next_version(const std::string &cwe) const;
};

/// ISO-8601 UTC, second resolution ("1970-01-01T00:00:00Z").
std::string utc_timestamp(std::int64_t epoch_seconds);

Json to_json(const EnsembleModel &model);
EnsembleModel ensemble_from_json(const Json &value);

Json to_json(const Registry &registry);
/// Throws SchemaError naming expected and found versions on a mismatch.
Registry registry_from_json(const Json &value);

std::string serialize(const Registry &registry);
Registry deserialize_registry(const std::string &text);

void save_registry(const Registry &registry, const std::filesystem::path &path);
Registry load_registry(const std::filesystem::path &path);

} // namespace satriage::ensemble
