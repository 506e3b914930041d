// SPDX-License-Identifier: Apache-2.0
#include "licensechain/service/http_api.hpp"

#include <httplib.h>

#include <json.hpp>
#include <thread>

#include "licensechain/error.hpp"
#include "licensechain/ledger/block.hpp"

namespace licensechain::service {

using nlohmann::ordered_json;

namespace {

ordered_json license_json(licensing::LicenseId id) {
  const auto& info = licensing::license_info(id);
  return {{"id", info.spdx},
          {"full_name", info.full_name},
          {"category", licensing::to_string(info.category)},
          {"info_url", info.info_url}};
}

ordered_json spdx_list(const licensing::LicenseSet& set) {
  ordered_json out = ordered_json::array();
  for (auto id : set.to_vector()) out.push_back(licensing::to_spdx(id));
  return out;
}

ordered_json summary_json(const registry::ProjectRecord& r) {
  return {{"project_id", r.project_id},     {"name", r.name},       {"description", r.description},
          {"license", licensing::to_spdx(r.license)}, {"uploader", r.uploader}, {"parents", r.parents}};
}

ordered_json entries_json(const std::vector<ConflictEntry>& entries) {
  ordered_json out = ordered_json::array();
  for (const auto& c : entries) {
    out.push_back({{"project_id", c.project_id},
                   {"license", licensing::to_spdx(c.origin_license)},
                   {"matched_hash_count", c.matched_hash_count}});
  }
  return out;
}

void send_json(httplib::Response& res, int status, const ordered_json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, Errc code, const std::string& message) {
  send_json(res, http_status(code), {{"error", to_string(code)}, {"message", message}});
}

std::string require_user(const httplib::Request& req) {
  auto user = req.get_header_value(kUserHeader);
  if (user.empty()) throw Error(Errc::auth, std::string("missing ") + kUserHeader + " header");
  return user;
}

std::string form_field(const httplib::Request& req, const std::string& key, bool required) {
  if (auto it = req.files.find(key); it != req.files.end()) return it->second.content;
  if (req.has_param(key)) return req.get_param_value(key);
  if (required) throw Error(Errc::validation, "missing form field '" + key + "'");
  return {};
}

}  // namespace

int http_status(Errc code) noexcept {
  switch (code) {
    case Errc::validation:
    case Errc::unsupported_language:
    case Errc::unsupported_license:
      return 400;
    case Errc::auth:
      return 401;
    case Errc::not_found:
      return 404;
    case Errc::conflict:
      return 409;
    case Errc::resource_limit:
      return 413;
    case Errc::scan:
      return 422;
    case Errc::consensus_rejected:
      return 503;
    case Errc::integrity:
    case Errc::matrix_validation:
    case Errc::config:
    case Errc::io:
      return 500;
  }
  return 500;
}

std::string verdict_json(const UploadVerdict& v) {
  ordered_json j;
  if (v.accepted()) {
    j["outcome"] = "accepted";
    j["project_id"] = v.project_id.value_or("");
    if (v.block_index) j["block_index"] = *v.block_index;
    j["matches"] = entries_json(v.matches);
    return j.dump();
  }
  j["outcome"] = "conflict";
  j["conflicts"] = entries_json(v.conflicts);
  j["suggestions"] = spdx_list(v.suggestions);
  j["matches"] = entries_json(v.matches);
  ordered_json explanations = ordered_json::array();
  for (const auto& e : v.explanations) {
    ordered_json rows = ordered_json::array();
    for (const auto& r : e.rows) rows.push_back({{"hash", r.hash.hex()}, {"file_path", r.file_path}});
    explanations.push_back({{"project_id", e.project_id}, {"rows", rows}});
  }
  j["explanations"] = explanations;
  return j.dump();
}

struct ApiServer::Impl {
  explicit Impl(Platform& p) : platform(p) { install(); }

  void install();

  Platform& platform;
  httplib::Server server;
  std::thread thread;
};

void ApiServer::Impl::install() {
  server.set_payload_max_length(600ull << 20);

  server.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
    try {
      std::rethrow_exception(ep);
    } catch (const Error& e) {
      send_error(res, e.code(), e.what());
    } catch (const std::exception& e) {
      send_json(res, 500, {{"error", "internal"}, {"message", e.what()}});
    } catch (...) {
      send_json(res, 500, {{"error", "internal"}, {"message", "unknown failure"}});
    }
  });

  server.Get("/api/projects", [this](const httplib::Request& req, httplib::Response& res) {
    ordered_json out = ordered_json::array();
    for (const auto& r : platform.registry().search_projects(req.get_param_value("query"))) {
      out.push_back(summary_json(r));
    }
    send_json(res, 200, out);
  });

  server.Get(R"(/api/projects/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
    const auto record = platform.registry().get_project(req.matches[1]);
    auto j = summary_json(record);
    j["license_info"] = license_json(record.license);
    j["language_mix"] = record.language_mix;
    j["chain_ref"] = record.chain_ref;
    j["archive_ref"] = record.archive_ref;
    if (auto reg = platform.ledger().project(record.project_id)) {
      j["function_count"] = reg->registration.function_hashes.size();
    }
    send_json(res, 200, j);
  });

  server.Post("/api/projects", [this](const httplib::Request& req, httplib::Response& res) {
    UploadRequest up;
    up.username = require_user(req);
    if (!req.is_multipart_form_data()) throw Error(Errc::validation, "expected multipart/form-data");
    up.archive = form_field(req, "archive", true);
    up.name = form_field(req, "name", true);
    up.description = form_field(req, "description", false);
    up.license = licensing::parse_license_id(form_field(req, "license", true));
    for (const char* key : {"parents[]", "parents"}) {
      auto [lo, hi] = req.files.equal_range(key);
      for (auto it = lo; it != hi; ++it) {
        if (!it->second.content.empty()) up.parents.push_back(it->second.content);
      }
    }
    const auto verdict = platform.upload(up);
    res.status = verdict.accepted() ? 201 : 409;
    res.set_content(verdict_json(verdict), "application/json");
  });

  server.Post(R"(/api/projects/([^/]+)/download)", [this](const httplib::Request& req, httplib::Response& res) {
    const auto result = platform.download(require_user(req), req.matches[1]);
    res.status = 200;
    res.set_header(kAgreementHeader, std::to_string(result.block_index));
    res.set_header("X-License", std::string(licensing::to_spdx(result.license)));
    res.set_header("Content-Disposition", "attachment; filename=\"" + std::string(req.matches[1]) + ".zip\"");
    res.set_content(result.archive, "application/zip");
  });

  server.Get("/api/licenses", [](const httplib::Request&, httplib::Response& res) {
    ordered_json out = ordered_json::array();
    for (auto id : licensing::all_licenses()) out.push_back(license_json(id));
    send_json(res, 200, out);
  });

  server.Get(R"(/api/licenses/(.+)/compatible)", [this](const httplib::Request& req, httplib::Response& res) {
    const auto origin = licensing::parse_license_id(req.matches[1].str());
    send_json(res, 200,
              {{"origin", licensing::to_spdx(origin)},
               {"compatible", spdx_list(platform.matrix().compatible_with(origin))}});
  });

  server.Get("/api/chain", [this](const httplib::Request&, httplib::Response& res) {
    ordered_json blocks = ordered_json::array();
    for (const auto& line : platform.chain().serialized()) blocks.push_back(ordered_json::parse(line));
    send_json(res, 200, {{"length", blocks.size()}, {"blocks", blocks}});
  });

  server.Get("/api/chain/verify", [this](const httplib::Request&, httplib::Response& res) {
    const auto lines = platform.chain().serialized();
    const auto report = ledger::verify_serialized(lines);
    ordered_json j{{"ok", report.ok}, {"blocks", lines.size()}};
    j["first_failure"] = report.first_failure ? ordered_json(*report.first_failure) : ordered_json(nullptr);
    if (report.first_failure) j["detail"] = report.blocks.at(*report.first_failure).detail;
    send_json(res, 200, j);
  });
}

ApiServer::ApiServer(Platform& platform) : impl_(std::make_unique<Impl>(platform)) {}

ApiServer::~ApiServer() { stop(); }

int ApiServer::bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = impl_->server.bind_to_any_port(host);
    if (bound < 0) throw Error(Errc::io, "cannot bind " + host);
    return bound;
  }
  if (!impl_->server.bind_to_port(host, port)) throw Error(Errc::io, "cannot bind " + host + ":" + std::to_string(port));
  return port;
}

void ApiServer::serve() { impl_->server.listen_after_bind(); }

void ApiServer::start() {
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

void ApiServer::stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace licensechain::service
