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
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "satriage/common/json_io.hpp"
#include "satriage/corpus/records.hpp"

namespace satriage::corpus {

/// Records to emit for one CWE, by origin.
struct TemplateCounts {
  std::size_t reported_fixed = 0;
  std::size_t dismissed = 0;
  std::size_t synthetic_fixed = 0;
  std::size_t open = 0;
};

struct SyntheticSpec {
  std::map<std::string, TemplateCounts> cwes;
};

/// CWE ids with a built-in template set.
std::vector<std::string> supported_templates();

/// Parses `{"CWE-476": {"pos": 100, "neg": 100, "open": 10}, ...}`.
/// Per-CWE keys are origin names or the aliases "pos" (reported_fixed) and
/// "neg" (dismissed). A bare integer value means that many "pos" and "neg".
SyntheticSpec parse_synthetic_spec(const Json &spec);

/// Label-1 snippets carry the planted defect (unchecked dereference after
/// allocation, read of an uninitialized local, leaked allocation or handle on
/// an exit path); label-0 and open snippets carry a guarded or fixed variant
/// (open ones are an even mix). Names, literals and filler statements are
/// drawn from `seed`; the output is a pure function of (spec, seed).
///
/// Throws Error("unknown template CWE-...") for unsupported CWEs.
std::vector<WarningRecord> generate_synthetic_records(const SyntheticSpec &spec,
                                                      std::uint64_t seed);

/// JSONL text of generate_synthetic_records.
std::string generate_synthetic_corpus(const SyntheticSpec &spec, std::uint64_t seed);

void write_synthetic_corpus(const SyntheticSpec &spec, std::uint64_t seed,
                            const std::filesystem::path &out);

} // namespace satriage::corpus
