// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace licensechain::contracts {

/// "0x" followed by 40 hex digits, stored with a lowercase body. Addresses
/// are identifiers only; nothing is signed with them.
class WalletAddress {
 public:
  /// Throws Error(validation) unless `text` is 42 chars of the form 0x[0-9a-fA-F]{40}.
  static WalletAddress parse(std::string_view text);
  static bool is_valid(std::string_view text) noexcept;

  const std::string& str() const noexcept { return value_; }

  friend auto operator<=>(const WalletAddress&, const WalletAddress&) = default;

 private:
  explicit WalletAddress(std::string value) : value_(std::move(value)) {}
  std::string value_;
};

}  // namespace licensechain::contracts
