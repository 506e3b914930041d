// SPDX-License-Identifier: Apache-2.0
//
// The walkthrough scenario: bob publishes an LGPL-2.1 library, alice
// downloads it, modifies it and tries to publish the result under
// Apache-2.0 (rejected) and then under LGPL-2.1 (accepted).
#pragma once

#include <string>
#include <vector>

#include "licensechain/codescan/scanner.hpp"
#include "licensechain/registry/wallet_config.hpp"
#include "licensechain/service/platform.hpp"

namespace licensechain::service::demo {

inline constexpr const char* kAuthor = "bob";
inline constexpr const char* kDownloader = "alice";
inline constexpr const char* kOriginName = "libgeometry";

/// Wallet config text covering the demo users.
std::string wallets_json();
registry::WalletDirectory wallets();

std::vector<codescan::SourceFile> original_sources();
/// ZIP of original_sources().
std::string original_archive();
/// Alice's modified copy: keeps most functions of the original, edits one
/// and adds a file of her own.
std::string derivative_archive();

/// Uploads the original under LGPL-2.1 unless a project with that name is
/// already present. Returns its id.
contracts::ProjectId seed(Platform& platform);

struct ScenarioReport {
  contracts::ProjectId origin;
  std::uint64_t download_block = 0;
  UploadVerdict rejected;
  UploadVerdict accepted;
};

/// Runs the whole scenario in-process.
ScenarioReport run_scenario(Platform& platform);

}  // namespace licensechain::service::demo
