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
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "satriage/common/json_io.hpp"
#include "satriage/frontend/paths.hpp"

namespace satriage::frontend {

/// Dense string -> id map where id 0 is reserved for unknown entries.
class Index {
public:
  static constexpr std::size_t kUnk = 0;
  static constexpr std::string_view kUnkName = "<unk>";

  Index();

  /// Returns the existing id or appends a new one.
  std::size_t add(const std::string &name);
  /// Returns kUnk for names not present.
  std::size_t lookup(std::string_view name) const;
  bool contains(std::string_view name) const;
  const std::string &name(std::size_t id) const { return names_.at(id); }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string> &names() const { return names_; }

  Json to_json() const;
  static Index from_json(const Json &names);

  bool operator==(const Index &other) const { return names_ == other.names_; }

private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> ids_;
};

struct Vocabulary {
  Index tokens;
  Index paths;
  /// Function names, the pretraining targets.
  Index tags;

  bool operator==(const Vocabulary &) const = default;
};

/// Counts terminals, path strings and function names across bags; entries
/// seen at least min_count times get ids in first-seen order.
Vocabulary build_vocab(const std::vector<ContextBag> &bags, std::size_t min_count);

} // namespace satriage::frontend
