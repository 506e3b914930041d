// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace licensechain {

enum class Errc {
  validation,
  not_found,
  conflict,
  integrity,
  consensus_rejected,
  unsupported_language,
  unsupported_license,
  matrix_validation,
  config,
  io,
  resource_limit,
  auth,
  scan,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the Errc kinds so that
/// callers (HTTP layer, CLI) can map it without string matching.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace licensechain
