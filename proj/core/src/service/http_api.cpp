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

#include "satriage/service/http_api.hpp"

#include <charconv>

#include "httplib.h"

namespace satriage::service {
namespace {

void reply(httplib::Response &res, int status, const Json &body) {
  res.status = status;
  res.set_content(body.dump(), "application/json; charset=utf-8");
}

void fail(httplib::Response &res, int status, const std::string &message) {
  reply(res, status, Json{{"error", message}});
}

std::size_t parse_size(const httplib::Request &req, const char *name, std::size_t fallback) {
  if (!req.has_param(name))
    return fallback;
  const auto text = req.get_param_value(name);
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw BadRequestError(std::string("invalid ") + name + ": " + text);
  return value;
}

template <typename Fn> httplib::Server::Handler guarded(Fn fn) {
  return [fn](const httplib::Request &req, httplib::Response &res) {
    try {
      fn(req, res);
    } catch (const NotFoundError &) {
      fail(res, 404, "not found");
    } catch (const BadRequestError &e) {
      fail(res, 400, e.what());
    } catch (const ConflictError &e) {
      fail(res, 409, e.what());
    } catch (const nlohmann::json::exception &e) {
      fail(res, 400, std::string("malformed JSON body: ") + e.what());
    } catch (const std::exception &e) {
      fail(res, 500, e.what());
    }
  };
}

Json bands_json(const std::map<std::string, std::size_t> &bands) {
  Json out = Json::object();
  for (const auto &[band, count] : bands)
    out[band] = count;
  return out;
}

} // namespace

Json to_json(const TriageItem &item) {
  return {{"warning_id", item.warning_id},
          {"cwe", item.cwe},
          {"file_path", item.file_path},
          {"line", item.line},
          {"band", std::string(workflow::to_string(item.band))},
          {"score", item.score},
          {"member_probs", item.member_probs},
          {"final_label", item.final_label},
          {"verdict_status", item.verdict_status},
          {"disagreement", item.disagreement},
          {"model_version", item.model_version}};
}

Json to_json(const WarningDetail &detail) {
  Json out = to_json(detail.item);
  out["source"] = detail.source;
  out["checker"] = detail.checker;
  Json contexts = Json::array();
  for (const auto &c : detail.contexts)
    contexts.push_back({{"left", c.left},
                        {"path", c.path},
                        {"right", c.right},
                        {"left_pos", {{"line", c.left_line}, {"column", c.left_column}}},
                        {"right_pos", {{"line", c.right_line}, {"column", c.right_column}}},
                        {"weight", c.weight}});
  out["contexts"] = std::move(contexts);
  return out;
}

Json to_json(const CweSummary &s) {
  return {{"cwe", s.cwe},
          {"version", s.version},
          {"trained_at", s.trained_at},
          {"open", s.open},
          {"staged", s.staged},
          {"bands", bands_json(s.bands)},
          {"thresholds", workflow::to_json(s.thresholds)}};
}

Json to_json(const VerdictAck &ack) {
  return {{"warning_id", ack.warning_id},
          {"cwe", ack.cwe},
          {"staged", ack.staged},
          {"retrain_triggered", ack.retrain_triggered},
          {"duplicate", ack.duplicate}};
}

Json to_json(const CweMetrics &m) {
  return {{"cwe", m.report.cwe},
          {"version", m.version},
          {"metrics", evaluation::to_json(m.report)},
          {"bands", bands_json(m.bands)},
          {"thresholds", workflow::to_json(m.thresholds)}};
}

void register_routes(httplib::Server &server, TriageService &service) {
  server.Get("/api/cwes", guarded([&](const httplib::Request &, httplib::Response &res) {
               Json cwes = Json::array();
               for (const auto &s : service.list_cwes())
                 cwes.push_back(to_json(s));
               reply(res, 200, Json{{"cwes", std::move(cwes)}});
             }));

  server.Get("/api/warnings", guarded([&](const httplib::Request &req, httplib::Response &res) {
               std::optional<std::string> cwe;
               std::optional<workflow::Band> band;
               if (req.has_param("cwe") && !req.get_param_value("cwe").empty())
                 cwe = req.get_param_value("cwe");
               if (req.has_param("band") && !req.get_param_value("band").empty()) {
                 try {
                   band = workflow::parse_band(req.get_param_value("band"));
                 } catch (const Error &e) {
                   throw BadRequestError(e.what());
                 }
               }
               const auto offset = parse_size(req, "offset", 0);
               const auto limit = parse_size(req, "limit", kDefaultPageSize);
               const auto page = service.list_warnings(cwe, band, offset, limit);
               Json items = Json::array();
               for (const auto &item : page.items)
                 items.push_back(to_json(item));
               reply(res, 200,
                     Json{{"total", page.total},
                          {"offset", offset},
                          {"limit", limit},
                          {"items", std::move(items)}});
             }));

  server.Get(R"(/api/warnings/([^/]+))",
             guarded([&](const httplib::Request &req, httplib::Response &res) {
               reply(res, 200, to_json(service.get_warning(req.matches[1])));
             }));

  server.Post(R"(/api/warnings/([^/]+)/verdict)",
              guarded([&](const httplib::Request &req, httplib::Response &res) {
                const auto body = Json::parse(req.body);
                if (!body.is_object() || !body.contains("verdict") ||
                    !body["verdict"].is_string())
                  throw BadRequestError("body must contain a verdict string");
                const std::string user =
                    body.contains("user") && body["user"].is_string() ? body["user"] : "";
                const auto ack =
                    service.post_verdict(req.matches[1], body["verdict"].get<std::string>(), user);
                reply(res, 200, to_json(ack));
              }));

  server.Post(R"(/api/cwes/([^/]+)/retrain)",
              guarded([&](const httplib::Request &req, httplib::Response &res) {
                const std::string cwe = req.matches[1];
                const int version = service.retrain(cwe);
                reply(res, 200, Json{{"cwe", cwe}, {"version", version}});
              }));

  server.Get(R"(/api/cwes/([^/]+)/metrics)",
             guarded([&](const httplib::Request &req, httplib::Response &res) {
               reply(res, 200, to_json(service.metrics(req.matches[1])));
             }));

  if (!service.config().static_dir.empty())
    server.set_mount_point("/", service.config().static_dir.string());

  server.set_error_handler([](const httplib::Request &, httplib::Response &res) {
    if (res.body.empty())
      fail(res, res.status, res.status == 404 ? "not found" : "request failed");
  });
}

bool serve(TriageService &service, const std::string &host, int port) {
  httplib::Server server;
  register_routes(server, service);
  return server.listen(host, port);
}

} // namespace satriage::service
