// SPDX-License-Identifier: Apache-2.0
#include "licensechain/error.hpp"

namespace licensechain {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::validation: return "validation";
    case Errc::not_found: return "not_found";
    case Errc::conflict: return "conflict";
    case Errc::integrity: return "integrity";
    case Errc::consensus_rejected: return "consensus_rejected";
    case Errc::unsupported_language: return "unsupported_language";
    case Errc::unsupported_license: return "unsupported_license";
    case Errc::matrix_validation: return "matrix_validation";
    case Errc::config: return "config";
    case Errc::io: return "io";
    case Errc::resource_limit: return "resource_limit";
    case Errc::auth: return "auth";
    case Errc::scan: return "scan";
  }
  return "unknown";
}

}  // namespace licensechain
