// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "licensechain/contracts/contract_ledger.hpp"
#include "licensechain/registry/archive_store.hpp"
#include "licensechain/registry/project_record.hpp"
#include "licensechain/registry/project_store.hpp"

namespace licensechain::registry {

struct AuditFinding {
  contracts::ProjectId project_id;
  std::string problem;
};

/// Off-chain project registry: metadata records plus archive storage,
/// rooted in one data directory (registry.sqlite and archives/).
class Registry {
 public:
  explicit Registry(const std::filesystem::path& data_dir);

  void put_project(const ProjectRecord& record);
  /// Throws Error(not_found).
  ProjectRecord get_project(const contracts::ProjectId& id) const;
  std::optional<ProjectRecord> find_project(const contracts::ProjectId& id) const;
  /// Case-insensitive substring match on name or description, sorted by
  /// name then id. An empty query lists everything.
  std::vector<ProjectRecord> search_projects(std::string_view query) const;
  std::vector<ProjectRecord> list_projects() const;

  ProjectStore& store() noexcept { return *store_; }
  const ProjectStore& store() const noexcept { return *store_; }
  ArchiveStore& archives() noexcept { return archives_; }
  const ArchiveStore& archives() const noexcept { return archives_; }

  /// Registrations on the chain with no record here get a placeholder
  /// record. Returns the ids that were recovered.
  std::vector<contracts::ProjectId> reconcile(const contracts::ContractLedger& ledger);

  /// Disagreements between records, archives and the chain.
  std::vector<AuditFinding> audit(const contracts::ContractLedger& ledger) const;

 private:
  std::unique_ptr<ProjectStore> store_;
  ArchiveStore archives_;
};

/// "proj-N" with N one past the largest numeric suffix already on the chain.
contracts::ProjectId next_project_id(const contracts::ContractLedger& ledger);

}  // namespace licensechain::registry
