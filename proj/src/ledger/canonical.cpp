// SPDX-License-Identifier: Apache-2.0
#include "licensechain/ledger/canonical.hpp"

#include <set>

#include <json.hpp>

#include "licensechain/error.hpp"

namespace licensechain::ledger {

namespace {

using nlohmann::json;
using namespace licensechain::contracts;

json tx_to_json(const ContractTx& tx) {
  json out = json::object();
  out["type"] = std::string(type_tag(tx));
  if (const auto* dl = std::get_if<DownloadAgreementTx>(&tx)) {
    out["downloader"] = dl->downloader.str();
    out["project_id"] = dl->project_id;
    out["license"] = std::string(licensing::to_spdx(dl->license));
    out["timestamp"] = dl->timestamp;
  } else if (const auto* reg = std::get_if<ProjectRegistrationTx>(&tx)) {
    out["uploader"] = reg->uploader.str();
    out["project_id"] = reg->project_id;
    out["parents"] = reg->parents;
    out["license"] = std::string(licensing::to_spdx(reg->license));
    json hashes = json::array();
    for (const auto& h : reg->function_hashes) hashes.push_back(h.hex());
    out["function_hashes"] = std::move(hashes);
  }
  return out;
}

[[noreturn]] void bad(const std::string& what) { throw Error(Errc::validation, what); }

void expect_keys(const json& obj, std::set<std::string> keys, std::string_view type) {
  if (obj.size() != keys.size()) bad("tx '" + std::string(type) + "' has unexpected fields");
  for (const auto& [key, _] : obj.items()) {
    if (!keys.count(key)) bad("tx '" + std::string(type) + "' has unknown field '" + key + "'");
  }
}

const std::string& str_field(const json& obj, const char* key) {
  const auto& v = obj.at(key);
  if (!v.is_string()) bad(std::string("field '") + key + "' must be a string");
  return v.get_ref<const std::string&>();
}

ContractTx tx_from_json(const json& obj) {
  if (!obj.is_object()) bad("tx must be an object");
  if (!obj.contains("type") || !obj["type"].is_string()) bad("tx has no 'type' tag");
  const std::string type = obj["type"].get<std::string>();

  if (type == "genesis") {
    expect_keys(obj, {"type"}, type);
    return GenesisTx{};
  }
  if (type == "download_agreement") {
    expect_keys(obj, {"type", "downloader", "project_id", "license", "timestamp"}, type);
    if (!obj["timestamp"].is_number_integer()) bad("field 'timestamp' must be an integer");
    return DownloadAgreementTx{
        .downloader = WalletAddress::parse(str_field(obj, "downloader")),
        .project_id = str_field(obj, "project_id"),
        .license = licensing::parse_license_id(str_field(obj, "license")),
        .timestamp = obj["timestamp"].get<std::int64_t>(),
    };
  }
  if (type == "project_registration") {
    expect_keys(obj, {"type", "uploader", "project_id", "parents", "license", "function_hashes"}, type);
    ProjectRegistrationTx reg{
        .uploader = WalletAddress::parse(str_field(obj, "uploader")),
        .project_id = str_field(obj, "project_id"),
        .parents = {},
        .license = licensing::parse_license_id(str_field(obj, "license")),
        .function_hashes = {},
    };
    if (!obj["parents"].is_array()) bad("field 'parents' must be an array");
    for (const auto& p : obj["parents"]) {
      if (!p.is_string()) bad("parent ids must be strings");
      reg.parents.push_back(p.get<std::string>());
    }
    if (!obj["function_hashes"].is_array()) bad("field 'function_hashes' must be an array");
    for (const auto& h : obj["function_hashes"]) {
      if (!h.is_string()) bad("function hashes must be strings");
      reg.function_hashes.push_back(codescan::FunctionHash::from_hex(h.get<std::string>()));
    }
    return reg;
  }
  bad("unknown tx type '" + type + "'");
}

template <typename Fn>
auto translating_json_errors(Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw Error(Errc::validation, std::string("malformed JSON: ") + e.what());
  } catch (const Error& e) {
    // License and address parse failures surface as schema violations here.
    if (e.code() == Errc::validation) throw;
    throw Error(Errc::validation, e.what());
  }
}

}  // namespace

std::string canonical_tx(const ContractTx& tx) {
  return translating_json_errors([&] { return tx_to_json(tx).dump(); });
}

std::string hashing_preimage(std::uint64_t index, std::int64_t timestamp,
                             const std::string& prev_hash, const ContractTx& tx) {
  std::string out;
  out.reserve(160);
  out += "{\"index\":";
  out += std::to_string(index);
  out += ",\"timestamp\":";
  out += std::to_string(timestamp);
  out += ",\"prev_hash\":\"";
  out += prev_hash;
  out += "\",\"tx\":";
  out += canonical_tx(tx);
  out += '}';
  return out;
}

std::string serialize_block(const Block& block) {
  std::string out = hashing_preimage(block.index, block.timestamp, block.prev_hash, block.tx);
  out.pop_back();
  out += ",\"block_hash\":\"";
  out += block.block_hash;
  out += "\"}";
  return out;
}

ContractTx parse_tx(std::string_view json_text) {
  return translating_json_errors([&] { return tx_from_json(json::parse(json_text)); });
}

Block parse_block(std::string_view line) {
  Block block = translating_json_errors([&] {
    const json doc = json::parse(line);
    if (!doc.is_object() || doc.size() != 5) bad("block must have exactly five fields");
    const auto& index = doc.at("index");
    const auto& timestamp = doc.at("timestamp");
    if (!index.is_number_unsigned()) bad("field 'index' must be a non-negative integer");
    if (!timestamp.is_number_integer()) bad("field 'timestamp' must be an integer");
    return Block{
        .index = index.get<std::uint64_t>(),
        .timestamp = timestamp.get<std::int64_t>(),
        .prev_hash = str_field(doc, "prev_hash"),
        .tx = tx_from_json(doc.at("tx")),
        .block_hash = str_field(doc, "block_hash"),
    };
  });
  if (serialize_block(block) != line) bad("block line is not in canonical form");
  return block;
}

}  // namespace licensechain::ledger
