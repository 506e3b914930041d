// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <bitset>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string_view>
#include <vector>

namespace licensechain::licensing {

/// The closed set of licenses the platform accepts.
enum class LicenseId : std::uint8_t {
  mit,
  bsd_2_clause,
  bsd_3_clause,
  apache_2_0,
  gpl_2_0,
  gpl_2_0_or_later,
  gpl_3_0,
  gpl_3_0_or_later,
  lgpl_2_1,
  lgpl_3_0,
  mpl_1_1,
  mpl_2_0,
  agpl_1_0_or_later,
  agpl_3_0,
};

inline constexpr std::size_t kLicenseCount = 14;

enum class LicenseCategory { permissive, weak_copyleft, strong_copyleft };

struct LicenseInfo {
  LicenseId id;
  std::string_view spdx;
  std::string_view full_name;
  LicenseCategory category;
  std::string_view info_url;
};

/// Catalog order (also the order of LicenseId values).
const std::array<LicenseInfo, kLicenseCount>& license_catalog() noexcept;
const LicenseInfo& license_info(LicenseId id) noexcept;
std::array<LicenseId, kLicenseCount> all_licenses() noexcept;

/// Canonical SPDX abbreviation, e.g. "GPL-2.0-or-later".
std::string_view to_spdx(LicenseId id) noexcept;
std::string_view to_string(LicenseCategory category) noexcept;

/// Case-insensitive. Throws Error(unsupported_license) listing valid values.
LicenseId parse_license_id(std::string_view text);

/// Small value-type set over the 14 licenses; iterates in catalog order.
class LicenseSet {
 public:
  LicenseSet() = default;
  LicenseSet(std::initializer_list<LicenseId> ids) {
    for (auto id : ids) insert(id);
  }
  static LicenseSet all() {
    LicenseSet s;
    s.bits_.set();
    return s;
  }

  void insert(LicenseId id) { bits_.set(static_cast<std::size_t>(id)); }
  void erase(LicenseId id) { bits_.reset(static_cast<std::size_t>(id)); }
  bool contains(LicenseId id) const { return bits_.test(static_cast<std::size_t>(id)); }
  std::size_t size() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }

  LicenseSet& operator&=(const LicenseSet& other) {
    bits_ &= other.bits_;
    return *this;
  }
  friend LicenseSet operator&(LicenseSet a, const LicenseSet& b) { return a &= b; }
  friend bool operator==(const LicenseSet&, const LicenseSet&) = default;

  bool is_subset_of(const LicenseSet& other) const { return (bits_ & ~other.bits_).none(); }

  std::vector<LicenseId> to_vector() const;

 private:
  std::bitset<kLicenseCount> bits_;
};

}  // namespace licensechain::licensing
