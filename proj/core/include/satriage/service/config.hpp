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

namespace satriage::service {

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::filesystem::path data_dir = "data";
  /// Empty disables static file serving.
  std::filesystem::path static_dir;
  std::uint64_t seed = 42;
  std::size_t retrain_threshold = 50;
  /// Retrain in the background as soon as a verdict crosses the threshold.
  bool auto_retrain = true;
};

/// Parses `key = value` lines; '#' starts a comment. Unknown keys and
/// malformed values raise Error naming the line.
ServiceConfig parse_config(const std::string &text, ServiceConfig base = {});
ServiceConfig load_config(const std::filesystem::path &path, ServiceConfig base = {});

/// Applies SATRIAGE_HOST, SATRIAGE_PORT, SATRIAGE_DATA_DIR,
/// SATRIAGE_STATIC_DIR, SATRIAGE_SEED, SATRIAGE_RETRAIN_THRESHOLD and
/// SATRIAGE_AUTO_RETRAIN from `env` (the process environment when null).
ServiceConfig apply_env(ServiceConfig config,
                        const std::map<std::string, std::string> *env = nullptr);

} // namespace satriage::service
