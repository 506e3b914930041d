// SPDX-License-Identifier: Apache-2.0
#include "licensechain/licensing/license.hpp"

#include <string>

#include "licensechain/error.hpp"

namespace licensechain::licensing {

namespace {

using enum LicenseCategory;

constexpr std::array<LicenseInfo, kLicenseCount> kCatalog = {{
    {LicenseId::mit, "MIT", "MIT License", permissive, "https://spdx.org/licenses/MIT.html"},
    {LicenseId::bsd_2_clause, "BSD-2-Clause", "BSD 2-Clause \"Simplified\" License", permissive,
     "https://spdx.org/licenses/BSD-2-Clause.html"},
    {LicenseId::bsd_3_clause, "BSD-3-Clause", "BSD 3-Clause \"New\" or \"Revised\" License",
     permissive, "https://spdx.org/licenses/BSD-3-Clause.html"},
    {LicenseId::apache_2_0, "Apache-2.0", "Apache License 2.0", permissive,
     "https://spdx.org/licenses/Apache-2.0.html"},
    {LicenseId::gpl_2_0, "GPL-2.0", "GNU General Public License v2.0 only", strong_copyleft,
     "https://spdx.org/licenses/GPL-2.0-only.html"},
    {LicenseId::gpl_2_0_or_later, "GPL-2.0-or-later", "GNU General Public License v2.0 or later",
     strong_copyleft, "https://spdx.org/licenses/GPL-2.0-or-later.html"},
    {LicenseId::gpl_3_0, "GPL-3.0", "GNU General Public License v3.0 only", strong_copyleft,
     "https://spdx.org/licenses/GPL-3.0-only.html"},
    {LicenseId::gpl_3_0_or_later, "GPL-3.0-or-later", "GNU General Public License v3.0 or later",
     strong_copyleft, "https://spdx.org/licenses/GPL-3.0-or-later.html"},
    {LicenseId::lgpl_2_1, "LGPL-2.1", "GNU Lesser General Public License v2.1 only",
     weak_copyleft, "https://spdx.org/licenses/LGPL-2.1-only.html"},
    {LicenseId::lgpl_3_0, "LGPL-3.0", "GNU Lesser General Public License v3.0 only",
     weak_copyleft, "https://spdx.org/licenses/LGPL-3.0-only.html"},
    {LicenseId::mpl_1_1, "MPL-1.1", "Mozilla Public License 1.1", weak_copyleft,
     "https://spdx.org/licenses/MPL-1.1.html"},
    {LicenseId::mpl_2_0, "MPL-2.0", "Mozilla Public License 2.0", weak_copyleft,
     "https://spdx.org/licenses/MPL-2.0.html"},
    {LicenseId::agpl_1_0_or_later, "AGPL-1.0-or-later", "Affero General Public License v1.0 or later",
     strong_copyleft, "https://spdx.org/licenses/AGPL-1.0-or-later.html"},
    {LicenseId::agpl_3_0, "AGPL-3.0", "GNU Affero General Public License v3.0", strong_copyleft,
     "https://spdx.org/licenses/AGPL-3.0-only.html"},
}};

char lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (lower(a[i]) != lower(b[i])) return false;
  }
  return true;
}

}  // namespace

const std::array<LicenseInfo, kLicenseCount>& license_catalog() noexcept { return kCatalog; }

const LicenseInfo& license_info(LicenseId id) noexcept {
  return kCatalog[static_cast<std::size_t>(id)];
}

std::array<LicenseId, kLicenseCount> all_licenses() noexcept {
  std::array<LicenseId, kLicenseCount> ids{};
  for (std::size_t i = 0; i < kLicenseCount; ++i) ids[i] = kCatalog[i].id;
  return ids;
}

std::string_view to_spdx(LicenseId id) noexcept { return license_info(id).spdx; }

std::string_view to_string(LicenseCategory category) noexcept {
  switch (category) {
    case permissive: return "Permissive";
    case weak_copyleft: return "WeakCopyleft";
    case strong_copyleft: return "StrongCopyleft";
  }
  return "unknown";
}

LicenseId parse_license_id(std::string_view text) {
  for (const auto& info : kCatalog) {
    if (iequals(text, info.spdx)) return info.id;
  }
  std::string valid;
  for (const auto& info : kCatalog) {
    if (!valid.empty()) valid += ", ";
    valid += info.spdx;
  }
  throw Error(Errc::unsupported_license,
              "unsupported license '" + std::string(text) + "'; supported: " + valid);
}

std::vector<LicenseId> LicenseSet::to_vector() const {
  std::vector<LicenseId> out;
  for (std::size_t i = 0; i < kLicenseCount; ++i) {
    if (bits_.test(i)) out.push_back(static_cast<LicenseId>(i));
  }
  return out;
}

}  // namespace licensechain::licensing
