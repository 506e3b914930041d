// SPDX-License-Identifier: Apache-2.0
#include "licensechain/contracts/transactions.hpp"

#include <algorithm>
#include <set>

#include "licensechain/crypto/hex.hpp"
#include "licensechain/error.hpp"

namespace licensechain::codescan {

FunctionHash FunctionHash::from_hex(std::string_view hex) {
  if (!crypto::is_lower_hex(hex, 64)) {
    throw Error(Errc::validation,
                "malformed function hash '" + std::string(hex) + "' (expected 64 lowercase hex)");
  }
  return FunctionHash(std::string(hex));
}

}  // namespace licensechain::codescan

namespace licensechain::contracts {

namespace {

struct TagVisitor {
  std::string_view operator()(const GenesisTx&) const { return "genesis"; }
  std::string_view operator()(const DownloadAgreementTx&) const { return "download_agreement"; }
  std::string_view operator()(const ProjectRegistrationTx&) const { return "project_registration"; }
};

void require_project_id(std::string_view id, std::string_view field) {
  if (!is_valid_project_id(id)) {
    throw Error(Errc::validation, "invalid " + std::string(field) + " '" + std::string(id) + "'");
  }
}

}  // namespace

std::string_view type_tag(const ContractTx& tx) noexcept { return std::visit(TagVisitor{}, tx); }

bool is_valid_project_id(std::string_view id) noexcept {
  if (id.empty() || id.size() > 128) return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '.' || c == '_' || c == '-';
  });
}

void validate_schema(const ContractTx& tx) {
  if (const auto* dl = std::get_if<DownloadAgreementTx>(&tx)) {
    require_project_id(dl->project_id, "project_id");
    if (dl->timestamp < 0) throw Error(Errc::validation, "negative agreement timestamp");
  } else if (const auto* reg = std::get_if<ProjectRegistrationTx>(&tx)) {
    require_project_id(reg->project_id, "project_id");
    std::set<std::string_view> seen;
    for (const auto& parent : reg->parents) {
      require_project_id(parent, "parent id");
      if (parent == reg->project_id) {
        throw Error(Errc::validation, "project '" + reg->project_id + "' lists itself as parent");
      }
      if (!seen.insert(parent).second) {
        throw Error(Errc::validation, "duplicate parent '" + parent + "'");
      }
    }
    for (std::size_t i = 1; i < reg->function_hashes.size(); ++i) {
      if (!(reg->function_hashes[i - 1] < reg->function_hashes[i])) {
        throw Error(Errc::validation, "function hashes must be sorted and unique");
      }
    }
  }
}

void normalize_hashes(std::vector<codescan::FunctionHash>& hashes) {
  std::sort(hashes.begin(), hashes.end());
  hashes.erase(std::unique(hashes.begin(), hashes.end()), hashes.end());
}

}  // namespace licensechain::contracts
