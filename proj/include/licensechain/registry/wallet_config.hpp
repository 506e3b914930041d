// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "licensechain/contracts/wallet.hpp"

namespace licensechain::registry {

/// Environment variable consulted when no --wallets path is given.
inline constexpr const char* kWalletsEnvVar = "LICENSECHAIN_WALLETS";

/// Administrator-maintained mapping from usernames to wallet addresses.
/// The file is a JSON object: { "alice": "0x...", "bob": "0x..." }.
class WalletDirectory {
 public:
  WalletDirectory() = default;

  /// Throws Error(config) naming the offending line for parse errors,
  /// duplicate usernames and malformed addresses; Error(io) if unreadable.
  static WalletDirectory load(const std::filesystem::path& path);
  static WalletDirectory parse(std::string_view text, std::string_view source = "<memory>");

  std::optional<contracts::WalletAddress> find(const std::string& username) const;
  std::optional<std::string> username_for(const contracts::WalletAddress& wallet) const;
  const std::map<std::string, contracts::WalletAddress>& entries() const noexcept { return entries_; }

 private:
  std::map<std::string, contracts::WalletAddress> entries_;
};

/// `load_wallet_config(path).entries()` in one call.
std::map<std::string, contracts::WalletAddress> load_wallet_config(const std::filesystem::path& path);

/// `flag` if set, else $LICENSECHAIN_WALLETS; Error(config) if neither.
std::filesystem::path resolve_wallet_config_path(const std::optional<std::filesystem::path>& flag);

}  // namespace licensechain::registry
