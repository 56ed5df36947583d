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

#include "satriage/service/config.hpp"

#include <charconv>
#include <cstdlib>
#include <sstream>

#include "satriage/common/error.hpp"
#include "satriage/common/json_io.hpp"

namespace satriage::service {
namespace {

std::string trim(const std::string &s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos)
    return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

template <typename T> T parse_number(const std::string &key, const std::string &value) {
  T out{};
  const auto *end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc{} || ptr != end)
    throw Error("invalid value for " + key + ": " + value);
  return out;
}

bool parse_bool(const std::string &key, const std::string &value) {
  if (value == "true" || value == "1" || value == "yes")
    return true;
  if (value == "false" || value == "0" || value == "no")
    return false;
  throw Error("invalid value for " + key + ": " + value);
}

void set(ServiceConfig &config, const std::string &key, const std::string &value) {
  if (key == "host")
    config.host = value;
  else if (key == "port") {
    config.port = parse_number<int>(key, value);
    if (config.port < 0 || config.port > 65535)
      throw Error("port out of range: " + value);
  } else if (key == "data_dir")
    config.data_dir = value;
  else if (key == "static_dir")
    config.static_dir = value;
  else if (key == "seed")
    config.seed = parse_number<std::uint64_t>(key, value);
  else if (key == "retrain_threshold")
    config.retrain_threshold = parse_number<std::size_t>(key, value);
  else if (key == "auto_retrain")
    config.auto_retrain = parse_bool(key, value);
  else
    throw Error("unknown config key " + key);
}

} // namespace

ServiceConfig parse_config(const std::string &text, ServiceConfig base) {
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty())
      continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error("config line " + std::to_string(number) + ": expected key = value");
    try {
      set(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const Error &e) {
      throw Error("config line " + std::to_string(number) + ": " + e.what());
    }
  }
  return base;
}

ServiceConfig load_config(const std::filesystem::path &path, ServiceConfig base) {
  return parse_config(read_text_file(path), std::move(base));
}

ServiceConfig apply_env(ServiceConfig config, const std::map<std::string, std::string> *env) {
  static const std::pair<const char *, const char *> kVars[] = {
      {"SATRIAGE_HOST", "host"},
      {"SATRIAGE_PORT", "port"},
      {"SATRIAGE_DATA_DIR", "data_dir"},
      {"SATRIAGE_STATIC_DIR", "static_dir"},
      {"SATRIAGE_SEED", "seed"},
      {"SATRIAGE_RETRAIN_THRESHOLD", "retrain_threshold"},
      {"SATRIAGE_AUTO_RETRAIN", "auto_retrain"},
  };
  for (const auto &[var, key] : kVars) {
    std::string value;
    if (env) {
      auto it = env->find(var);
      if (it == env->end())
        continue;
      value = it->second;
    } else {
      const char *raw = std::getenv(var);
      if (!raw)
        continue;
      value = raw;
    }
    try {
      set(config, key, trim(value));
    } catch (const Error &e) {
      throw Error(std::string(var) + ": " + e.what());
    }
  }
  return config;
}

} // namespace satriage::service
