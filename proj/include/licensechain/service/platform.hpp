// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "licensechain/codescan/scanner.hpp"
#include "licensechain/contracts/contract_ledger.hpp"
#include "licensechain/ledger/chain.hpp"
#include "licensechain/licensing/compatibility.hpp"
#include "licensechain/registry/registry.hpp"
#include "licensechain/registry/wallet_config.hpp"

namespace licensechain::service {

/// Which registrations an upload is matched against.
enum class MatchScope {
  all_projects,        // every committed registration (default)
  downloaded_by_user,  // only projects the uploader has an agreement for
};

struct PlatformConfig {
  std::filesystem::path data_dir;  // holds chain.log, registry.sqlite, archives/
  registry::WalletDirectory wallets;
  std::size_t node_count = 3;
  std::size_t threshold = 2;
  MatchScope scope = MatchScope::all_projects;
  ledger::Clock clock = ledger::system_clock();
  const licensing::CompatibilityMatrix* matrix = nullptr;  // shipped matrix if null
  codescan::ScanLimits limits{};
};

struct ConflictEntry {
  contracts::ProjectId project_id;
  licensing::LicenseId origin_license;
  std::size_t matched_hash_count = 0;

  friend bool operator==(const ConflictEntry&, const ConflictEntry&) = default;
};

struct ExplainRow {
  codescan::FunctionHash hash;
  std::string file_path;

  friend auto operator<=>(const ExplainRow&, const ExplainRow&) = default;
};

struct MatchExplanation {
  contracts::ProjectId project_id;
  std::vector<ExplainRow> rows;

  friend bool operator==(const MatchExplanation&, const MatchExplanation&) = default;
};

struct UploadVerdict {
  enum class Outcome { accepted, conflict };

  Outcome outcome = Outcome::accepted;
  std::optional<contracts::ProjectId> project_id;  // accepted only
  std::optional<std::uint64_t> block_index;        // accepted only
  std::vector<ConflictEntry> matches;              // every matched origin
  std::vector<ConflictEntry> conflicts;            // origins the declared license violates
  licensing::LicenseSet suggestions;               // licenses passing every matched origin
  std::vector<MatchExplanation> explanations;      // one per conflicting origin

  bool accepted() const noexcept { return outcome == Outcome::accepted; }
};

struct UploadRequest {
  std::string username;
  std::string archive;  // ZIP bytes
  std::string name;
  std::string description;
  licensing::LicenseId license = licensing::LicenseId::mit;
  std::vector<contracts::ProjectId> parents;
};

struct DownloadResult {
  std::string archive;
  std::uint64_t block_index = 0;
  licensing::LicenseId license = licensing::LicenseId::mit;
};

/// Shared hashes between an upload and one registered project, each with the
/// upload file that produced it. Sorted by (hash, file_path).
std::vector<ExplainRow> explain_match(const codescan::ProjectScan& upload,
                                      const contracts::ProjectRegistrationTx& matched);

/// Download and upload workflows over one data directory.
class Platform {
 public:
  explicit Platform(PlatformConfig config);

  /// Throws Error(auth) for an unknown user and Error(not_found) for an
  /// unknown project. The agreement is committed before the bytes are returned.
  DownloadResult download(const std::string& username, const contracts::ProjectId& project_id);

  /// Throws Error(auth), Error(not_found) for an unknown parent, Error(scan)
  /// or Error(resource_limit) for an unusable archive. A conflict verdict has
  /// no side effects.
  UploadVerdict upload(const UploadRequest& request);

  /// Verdict without committing anything.
  UploadVerdict evaluate(const std::string& username, const codescan::ProjectScan& scan,
                         licensing::LicenseId declared) const;

  registry::Registry& registry() noexcept { return *registry_; }
  const registry::Registry& registry() const noexcept { return *registry_; }
  const contracts::ContractLedger& ledger() const noexcept { return *ledger_; }
  contracts::ContractLedger& ledger() noexcept { return *ledger_; }
  const ledger::Chain& chain() const noexcept { return *chain_; }
  const licensing::CompatibilityMatrix& matrix() const noexcept { return *config_.matrix; }
  const registry::WalletDirectory& wallets() const noexcept { return config_.wallets; }
  const PlatformConfig& config() const noexcept { return config_; }

  /// Ids recovered by the startup reconciliation pass.
  const std::vector<contracts::ProjectId>& recovered() const noexcept { return recovered_; }

 private:
  contracts::WalletAddress wallet_of(const std::string& username) const;

  PlatformConfig config_;
  std::unique_ptr<ledger::Chain> chain_;
  std::unique_ptr<contracts::ContractLedger> ledger_;
  std::unique_ptr<registry::Registry> registry_;
  std::vector<contracts::ProjectId> recovered_;
  std::mutex commit_mutex_;
};

}  // namespace licensechain::service
