// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "licensechain/codescan/function_hash.hpp"
#include "licensechain/contracts/wallet.hpp"
#include "licensechain/licensing/license.hpp"

namespace licensechain::contracts {

using ProjectId = std::string;

/// Payload of block 0.
struct GenesisTx {
  friend bool operator==(const GenesisTx&, const GenesisTx&) = default;
};

/// One accepted license at download time.
struct DownloadAgreementTx {
  WalletAddress downloader;
  ProjectId project_id;
  licensing::LicenseId license;
  std::int64_t timestamp = 0;

  friend bool operator==(const DownloadAgreementTx&, const DownloadAgreementTx&) = default;
};

/// Project metadata and its function fingerprints, registered at upload time.
struct ProjectRegistrationTx {
  WalletAddress uploader;
  ProjectId project_id;
  std::vector<ProjectId> parents;
  licensing::LicenseId license;
  std::vector<codescan::FunctionHash> function_hashes;  // sorted, unique

  friend bool operator==(const ProjectRegistrationTx&, const ProjectRegistrationTx&) = default;
};

using ContractTx = std::variant<GenesisTx, DownloadAgreementTx, ProjectRegistrationTx>;

/// "genesis", "download_agreement" or "project_registration".
std::string_view type_tag(const ContractTx& tx) noexcept;

/// Project ids: 1..128 chars of [A-Za-z0-9._-].
bool is_valid_project_id(std::string_view id) noexcept;

/// Schema checks that need no chain state. Throws Error(validation).
void validate_schema(const ContractTx& tx);

/// Sorts and removes duplicates in place.
void normalize_hashes(std::vector<codescan::FunctionHash>& hashes);

}  // namespace licensechain::contracts
