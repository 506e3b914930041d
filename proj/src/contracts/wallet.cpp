// SPDX-License-Identifier: Apache-2.0
#include "licensechain/contracts/wallet.hpp"

#include "licensechain/error.hpp"

namespace licensechain::contracts {

namespace {

bool is_hex(char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

}  // namespace

bool WalletAddress::is_valid(std::string_view text) noexcept {
  if (text.size() != 42 || text[0] != '0' || (text[1] != 'x' && text[1] != 'X')) return false;
  for (char c : text.substr(2)) {
    if (!is_hex(c)) return false;
  }
  return true;
}

WalletAddress WalletAddress::parse(std::string_view text) {
  if (!is_valid(text)) {
    throw Error(Errc::validation, "malformed wallet address '" + std::string(text) +
                                      "' (expected 0x followed by 40 hex digits)");
  }
  std::string value = "0x";
  for (char c : text.substr(2)) {
    value += (c >= 'A' && c <= 'F') ? static_cast<char>(c - 'A' + 'a') : c;
  }
  return WalletAddress(std::move(value));
}

}  // namespace licensechain::contracts
