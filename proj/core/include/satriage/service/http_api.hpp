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

#include <string>

#include "satriage/common/json_io.hpp"
#include "satriage/service/triage_service.hpp"

namespace httplib {
class Server;
}

namespace satriage::service {

Json to_json(const TriageItem &item);
Json to_json(const WarningDetail &detail);
Json to_json(const CweSummary &summary);
Json to_json(const VerdictAck &ack);
Json to_json(const CweMetrics &metrics);

inline constexpr std::size_t kDefaultPageSize = 50;

/// Installs the /api routes (and the static UI mount when the service
/// config names a directory). Errors are returned as {"error": message}.
void register_routes(httplib::Server &server, TriageService &service);

/// Serves until the server is stopped; returns false if binding failed.
bool serve(TriageService &service, const std::string &host, int port);

} // namespace satriage::service
