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

#include "satriage/frontend/vocab.hpp"

#include "satriage/common/error.hpp"

namespace satriage::frontend {
namespace {

// Counts occurrences while remembering first-seen order.
class OrderedCounter {
public:
  void add(const std::string &name) {
    auto [it, inserted] = counts_.try_emplace(name, 0);
    if (inserted)
      order_.push_back(name);
    ++it->second;
  }

  void fill(Index &index, std::size_t min_count) const {
    for (const auto &name : order_)
      if (counts_.at(name) >= min_count && name != Index::kUnkName)
        index.add(name);
  }

private:
  std::unordered_map<std::string, std::size_t> counts_;
  std::vector<std::string> order_;
};

} // namespace

Index::Index() { add(std::string(kUnkName)); }

std::size_t Index::add(const std::string &name) {
  auto [it, inserted] = ids_.try_emplace(name, names_.size());
  if (inserted)
    names_.push_back(name);
  return it->second;
}

std::size_t Index::lookup(std::string_view name) const {
  auto it = ids_.find(std::string(name));
  return it == ids_.end() ? kUnk : it->second;
}

bool Index::contains(std::string_view name) const {
  return ids_.find(std::string(name)) != ids_.end();
}

Json Index::to_json() const { return Json(names_); }

Index Index::from_json(const Json &names) {
  if (!names.is_array() || names.empty() || names.front() != kUnkName)
    throw SchemaError("index must be an array starting with " +
                      std::string(kUnkName));
  Index index;
  for (std::size_t i = 1; i < names.size(); ++i) {
    const auto name = names[i].get<std::string>();
    if (index.add(name) != i)
      throw SchemaError("duplicate index entry " + name);
  }
  return index;
}

Vocabulary build_vocab(const std::vector<ContextBag> &bags, std::size_t min_count) {
  if (bags.empty())
    throw Error("no data");
  OrderedCounter tokens;
  OrderedCounter paths;
  OrderedCounter tags;
  for (const auto &bag : bags) {
    tags.add(bag.function_name);
    for (const auto &context : bag.contexts) {
      tokens.add(context.left);
      tokens.add(context.right);
      paths.add(context.path_string());
    }
  }
  Vocabulary vocab;
  tokens.fill(vocab.tokens, min_count);
  paths.fill(vocab.paths, min_count);
  tags.fill(vocab.tags, min_count);
  return vocab;
}

} // namespace satriage::frontend
