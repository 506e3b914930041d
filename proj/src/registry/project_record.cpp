// SPDX-License-Identifier: Apache-2.0
#include "licensechain/registry/project_record.hpp"

#include <json.hpp>

#include "licensechain/error.hpp"

namespace licensechain::registry {

std::string to_json_text(const ProjectRecord& record) {
  nlohmann::ordered_json j;
  j["project_id"] = record.project_id;
  j["name"] = record.name;
  j["description"] = record.description;
  j["uploader"] = record.uploader;
  j["license"] = std::string(licensing::to_spdx(record.license));
  j["parents"] = record.parents;
  j["language_mix"] = record.language_mix;
  j["chain_ref"] = record.chain_ref;
  j["archive_ref"] = record.archive_ref;
  return j.dump();
}

ProjectRecord record_from_json_text(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    ProjectRecord r;
    r.project_id = j.at("project_id").get<std::string>();
    r.name = j.at("name").get<std::string>();
    r.description = j.at("description").get<std::string>();
    r.uploader = j.at("uploader").get<std::string>();
    r.license = licensing::parse_license_id(j.at("license").get<std::string>());
    r.parents = j.at("parents").get<std::vector<std::string>>();
    r.language_mix = j.at("language_mix").get<std::map<std::string, std::size_t>>();
    r.chain_ref = j.at("chain_ref").get<std::uint64_t>();
    r.archive_ref = j.at("archive_ref").get<std::string>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::validation, std::string("malformed project record: ") + e.what());
  }
}

}  // namespace licensechain::registry
