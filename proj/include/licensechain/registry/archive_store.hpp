// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace licensechain::registry {

/// Content-addressed archive storage: each archive lives at
/// <root>/<sha256-hex>.zip and its key is that digest.
class ArchiveStore {
 public:
  explicit ArchiveStore(std::filesystem::path root);

  /// Stores `bytes` (idempotent) and returns the key.
  std::string put(std::string_view bytes);
  /// Throws Error(not_found) for an unknown key, Error(integrity) if the
  /// stored bytes no longer hash to the key.
  std::string get(const std::string& key) const;
  bool contains(const std::string& key) const;
  std::vector<std::string> keys() const;

  const std::filesystem::path& root() const noexcept { return root_; }

 private:
  std::filesystem::path path_for(const std::string& key) const;
  std::filesystem::path root_;
};

}  // namespace licensechain::registry
