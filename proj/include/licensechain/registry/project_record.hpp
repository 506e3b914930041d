// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "licensechain/contracts/transactions.hpp"
#include "licensechain/licensing/license.hpp"

namespace licensechain::registry {

/// Off-chain metadata for a registered project.
struct ProjectRecord {
  contracts::ProjectId project_id;
  std::string name;
  std::string description;
  std::string uploader;  // username
  licensing::LicenseId license = licensing::LicenseId::mit;
  std::vector<contracts::ProjectId> parents;
  std::map<std::string, std::size_t> language_mix;  // "C" -> file count
  std::uint64_t chain_ref = 0;                       // block index of the registration
  std::string archive_ref;                           // archive store key

  friend bool operator==(const ProjectRecord&, const ProjectRecord&) = default;
};

/// Stable JSON text (fixed key order, no whitespace).
std::string to_json_text(const ProjectRecord& record);
/// Throws Error(validation) for malformed input.
ProjectRecord record_from_json_text(std::string_view text);

struct UserAccount {
  std::string username;
  contracts::WalletAddress wallet;
  std::int64_t created_at = 0;

  friend bool operator==(const UserAccount&, const UserAccount&) = default;
};

}  // namespace licensechain::registry
