// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <vector>

#include "licensechain/contracts/transactions.hpp"
#include "licensechain/ledger/chain.hpp"
#include "licensechain/ledger/validator.hpp"

namespace licensechain::contracts {

struct HashMatch {
  ProjectId project_id;
  licensing::LicenseId license;

  friend bool operator==(const HashMatch&, const HashMatch&) = default;
};

struct RegisteredProject {
  ProjectRegistrationTx registration;
  std::uint64_t block_index = 0;

  friend bool operator==(const RegisteredProject&, const RegisteredProject&) = default;
};

/// Query indices over committed contract transactions. A pure function of
/// the block sequence: building from the same blocks gives equal views.
class ContractViews {
 public:
  static ContractViews build(std::span<const ledger::Block> blocks);

  /// Folds one committed block into the indices.
  void apply(const ledger::Block& block);

  std::optional<RegisteredProject> project(const ProjectId& id) const;
  /// Registrations in commit order.
  std::vector<RegisteredProject> projects() const;
  /// Registrations containing `hash`, in commit order.
  std::vector<HashMatch> query_function_hash(const codescan::FunctionHash& hash) const;
  /// Agreements signed by `wallet`, in commit order.
  std::vector<DownloadAgreementTx> agreements_for(const WalletAddress& wallet) const;

  friend bool operator==(const ContractViews&, const ContractViews&) = default;

 private:
  std::map<ProjectId, RegisteredProject> projects_;
  std::vector<ProjectId> registration_order_;
  std::map<std::string, std::vector<HashMatch>> by_hash_;
  std::map<std::string, std::vector<DownloadAgreementTx>> agreements_;
};

/// The DownloadAgreement and LicenseManager contracts: state-checked
/// transactions committed through the chain, plus views kept in step with
/// every commit. Writers are serialized; readers see committed state only.
class ContractLedger {
 public:
  /// Rebuilds the views from `chain`, which must outlive this object.
  explicit ContractLedger(ledger::Chain& chain, ledger::ValidatorPool pool = ledger::ValidatorPool{});

  /// Throws Error(not_found) for an unregistered project, Error(integrity)
  /// when `license` differs from the registered license. Returns the block index.
  std::uint64_t record_download_agreement(const WalletAddress& downloader, const ProjectId& project_id,
                                          licensing::LicenseId license, std::int64_t timestamp);

  /// Hashes are sorted and de-duplicated before commit. Throws
  /// Error(conflict) for a duplicate id, Error(not_found) for an unknown parent.
  std::uint64_t register_project(const WalletAddress& uploader, const ProjectId& project_id,
                                 std::vector<ProjectId> parents, licensing::LicenseId license,
                                 std::vector<codescan::FunctionHash> function_hashes,
                                 std::int64_t timestamp);

  std::vector<HashMatch> query_function_hash(const codescan::FunctionHash& hash) const;
  std::vector<DownloadAgreementTx> agreements_for(const WalletAddress& wallet) const;
  std::optional<RegisteredProject> project(const ProjectId& id) const;
  std::vector<RegisteredProject> projects() const;

  /// Copy of the current views.
  ContractViews views() const;

  const ledger::Chain& chain() const noexcept { return chain_; }
  ledger::ValidatorPool& validators() noexcept { return pool_; }

 private:
  ledger::Chain& chain_;
  ledger::ValidatorPool pool_;
  mutable std::shared_mutex mutex_;
  ContractViews views_;
};

}  // namespace licensechain::contracts
