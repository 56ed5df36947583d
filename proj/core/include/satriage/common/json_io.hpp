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
#include <functional>
#include <string>
#include <string_view>

#include "json.hpp"

namespace satriage {

using Json = nlohmann::json;

std::string read_text_file(const std::filesystem::path &path);

/// Writes through a sibling temporary file and renames it into place, so
/// readers observe either the old or the new content.
void write_text_file_atomic(const std::filesystem::path &path,
                            std::string_view content);

void append_line(const std::filesystem::path &path, std::string_view line);

/// Calls `fn(line_number, object)` for every non-blank line. Lines that are
/// not JSON objects raise SchemaError naming the line.
void for_each_jsonl(const std::filesystem::path &path,
                    const std::function<void(std::size_t, const Json &)> &fn);

/// Canonical serialization: sorted keys, no whitespace, shortest
/// round-trip doubles.
std::string canonical_dump(const Json &value);

} // namespace satriage
