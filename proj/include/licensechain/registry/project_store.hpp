// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <vector>

#include "licensechain/registry/project_record.hpp"

namespace licensechain::registry {

/// Persistent storage for project records and user accounts.
class ProjectStore {
 public:
  virtual ~ProjectStore() = default;

  /// Inserts or replaces the record with the same project_id.
  virtual void put(const ProjectRecord& record) = 0;
  virtual std::optional<ProjectRecord> find(const contracts::ProjectId& id) const = 0;
  /// All records, ordered by project_id.
  virtual std::vector<ProjectRecord> list() const = 0;

  /// Creates the account on first sight; returns the stored account.
  virtual UserAccount ensure_account(const std::string& username, const contracts::WalletAddress& wallet,
                                     std::int64_t now) = 0;
  virtual std::optional<UserAccount> account(const std::string& username) const = 0;
};

/// Single-file SQLite store. Reads never modify the database file.
std::unique_ptr<ProjectStore> open_sqlite_store(const std::filesystem::path& db_file);

}  // namespace licensechain::registry
