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

#include "satriage/ensemble/registry.hpp"

#include <chrono>
#include <cstdio>

#include "satriage/common/error.hpp"

namespace satriage::ensemble {

const EnsembleModel *Registry::find(const std::string &cwe) const {
  auto it = models.find(cwe);
  return it == models.end() ? nullptr : &it->second;
}

int Registry::next_version(const std::string &cwe) const {
  const auto *current = find(cwe);
  return current ? current->version + 1 : 1;
}

std::string utc_timestamp(std::int64_t epoch_seconds) {
  using namespace std::chrono;
  const sys_seconds tp{seconds{epoch_seconds}};
  const auto day = floor<days>(tp);
  const year_month_day ymd{day};
  const hh_mm_ss hms{tp - day};
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02ld:%02ld:%02ldZ", int(ymd.year()),
                unsigned(ymd.month()), unsigned(ymd.day()),
                static_cast<long>(hms.hours().count()),
                static_cast<long>(hms.minutes().count()),
                static_cast<long>(hms.seconds().count()));
  return buf;
}

Json to_json(const EnsembleModel &model) {
  Json members = Json::array();
  for (const auto &m : model.members)
    members.push_back(learners::to_json(m));
  return {{"cwe", model.cwe},
          {"members", std::move(members)},
          {"bootstrap_seeds", model.bootstrap_seeds},
          {"version", model.version},
          {"trained_at", model.trained_at},
          {"feedback_cursor", model.feedback_cursor}};
}

EnsembleModel ensemble_from_json(const Json &value) {
  EnsembleModel model;
  model.cwe = value.at("cwe").get<std::string>();
  const auto &members = value.at("members");
  if (!members.is_array() || members.size() != kMembers)
    throw SchemaError("ensemble for " + model.cwe + " must have exactly 3 members");
  for (std::size_t i = 0; i < kMembers; ++i)
    model.members[i] = learners::learner_from_json(members[i]);
  if (model.members[0].kind != learners::LearnerKind::gbt ||
      model.members[1].kind != learners::LearnerKind::forest ||
      model.members[2].kind != learners::LearnerKind::net)
    throw SchemaError("ensemble members must be ordered gbt, forest, net");
  model.bootstrap_seeds = value.at("bootstrap_seeds").get<std::array<std::uint64_t, kMembers>>();
  model.version = value.at("version").get<int>();
  model.trained_at = value.at("trained_at").get<std::string>();
  model.feedback_cursor = value.value("feedback_cursor", std::size_t{0});
  return model;
}

Json to_json(const Registry &registry) {
  Json models = Json::object();
  for (const auto &[cwe, model] : registry.models)
    models[cwe] = to_json(model);
  return {{"schema_version", kRegistrySchemaVersion}, {"models", std::move(models)}};
}

Registry registry_from_json(const Json &value) {
  try {
    if (!value.is_object())
      throw SchemaError("registry must be a JSON object");
    const auto found = value.at("schema_version");
    if (!found.is_number_integer() || found.get<int>() != kRegistrySchemaVersion)
      throw SchemaError("registry schema version mismatch: expected " +
                        std::to_string(kRegistrySchemaVersion) + ", found " + found.dump());
    Registry registry;
    for (const auto &[cwe, model] : value.at("models").items()) {
      auto parsed = ensemble_from_json(model);
      if (parsed.cwe != cwe)
        throw SchemaError("registry key " + cwe + " holds model for " + parsed.cwe);
      registry.models.emplace(cwe, std::move(parsed));
    }
    return registry;
  } catch (const nlohmann::json::exception &e) {
    throw SchemaError(std::string("malformed registry: ") + e.what());
  }
}

std::string serialize(const Registry &registry) { return canonical_dump(to_json(registry)); }

Registry deserialize_registry(const std::string &text) {
  Json value;
  try {
    value = Json::parse(text);
  } catch (const nlohmann::json::exception &e) {
    throw SchemaError(std::string("registry is not valid JSON: ") + e.what());
  }
  return registry_from_json(value);
}

void save_registry(const Registry &registry, const std::filesystem::path &path) {
  write_text_file_atomic(path, serialize(registry) + "\n");
}

Registry load_registry(const std::filesystem::path &path) {
  return deserialize_registry(read_text_file(path));
}

} // namespace satriage::ensemble
