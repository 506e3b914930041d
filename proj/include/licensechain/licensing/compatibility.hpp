// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <string_view>

#include "licensechain/licensing/license.hpp"

namespace licensechain::licensing {

/// Directed relicensing relation: allowed(origin) is the set of licenses a
/// derivative of origin-licensed code may declare. Immutable once loaded.
class CompatibilityMatrix {
 public:
  /// The matrix shipped in data/license_matrix.json.
  static const CompatibilityMatrix& shipped();

  /// Parses and validates matrix JSON. `source` names the input in errors.
  /// Throws Error(matrix_validation) on a missing or duplicate row, a row
  /// that omits its own origin, or an unknown license token.
  static CompatibilityMatrix parse(std::string_view json_text, std::string_view source = "<memory>");

  bool is_compatible(LicenseId origin, LicenseId declared) const {
    return allowed_[static_cast<std::size_t>(origin)].contains(declared);
  }

  const LicenseSet& compatible_with(LicenseId origin) const {
    return allowed_[static_cast<std::size_t>(origin)];
  }

 private:
  std::array<LicenseSet, kLicenseCount> allowed_{};
};

/// Reads and validates a matrix data file.
CompatibilityMatrix load_matrix(const std::filesystem::path& data_file);

}  // namespace licensechain::licensing
