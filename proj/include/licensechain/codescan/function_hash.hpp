// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace licensechain::codescan {

/// SHA-256 of one extracted function, as 64 lowercase hex characters.
class FunctionHash {
 public:
  /// Throws Error(validation) unless `hex` is exactly 64 lowercase hex chars.
  static FunctionHash from_hex(std::string_view hex);

  const std::string& hex() const noexcept { return value_; }

  friend auto operator<=>(const FunctionHash&, const FunctionHash&) = default;

 private:
  explicit FunctionHash(std::string value) : value_(std::move(value)) {}
  std::string value_;
};

}  // namespace licensechain::codescan
