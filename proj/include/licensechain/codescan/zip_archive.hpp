// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace licensechain::codescan {

struct ZipEntry {
  std::string path;  // forward slashes, relative
  std::string data;

  friend bool operator==(const ZipEntry&, const ZipEntry&) = default;
};

struct ZipLimits {
  std::size_t max_entries = 10'000;
  std::uint64_t max_entry_bytes = 10ull << 20;
  std::uint64_t max_total_bytes = 512ull << 20;
};

/// True if the bytes start with a local file header or are an empty archive.
bool looks_like_zip(std::span<const std::uint8_t> bytes) noexcept;

/// Reads stored and deflated entries (no ZIP64, no encryption). Directory
/// entries are dropped. Throws Error(scan) for malformed archives or unsafe
/// paths and Error(resource_limit) when a limit is exceeded.
std::vector<ZipEntry> read_zip(std::span<const std::uint8_t> bytes, const ZipLimits& limits = {});
std::vector<ZipEntry> read_zip(std::string_view bytes, const ZipLimits& limits = {});

/// Deflate-compressed archive with fixed timestamps, so equal input gives
/// byte-identical output.
std::string write_zip(const std::vector<ZipEntry>& entries);

}  // namespace licensechain::codescan
