// SPDX-License-Identifier: Apache-2.0
#include "licensechain/contracts/contract_ledger.hpp"

#include <mutex>

#include "licensechain/error.hpp"

namespace licensechain::contracts {

ContractViews ContractViews::build(std::span<const ledger::Block> blocks) {
  ContractViews views;
  for (const auto& block : blocks) views.apply(block);
  return views;
}

void ContractViews::apply(const ledger::Block& block) {
  if (const auto* reg = std::get_if<ProjectRegistrationTx>(&block.tx)) {
    projects_.insert_or_assign(reg->project_id, RegisteredProject{*reg, block.index});
    registration_order_.push_back(reg->project_id);
    for (const auto& hash : reg->function_hashes) {
      by_hash_[hash.hex()].push_back(HashMatch{reg->project_id, reg->license});
    }
  } else if (const auto* dl = std::get_if<DownloadAgreementTx>(&block.tx)) {
    agreements_[dl->downloader.str()].push_back(*dl);
  }
}

std::optional<RegisteredProject> ContractViews::project(const ProjectId& id) const {
  const auto it = projects_.find(id);
  if (it == projects_.end()) return std::nullopt;
  return it->second;
}

std::vector<RegisteredProject> ContractViews::projects() const {
  std::vector<RegisteredProject> out;
  out.reserve(registration_order_.size());
  for (const auto& id : registration_order_) out.push_back(projects_.at(id));
  return out;
}

std::vector<HashMatch> ContractViews::query_function_hash(const codescan::FunctionHash& hash) const {
  const auto it = by_hash_.find(hash.hex());
  return it == by_hash_.end() ? std::vector<HashMatch>{} : it->second;
}

std::vector<DownloadAgreementTx> ContractViews::agreements_for(const WalletAddress& wallet) const {
  const auto it = agreements_.find(wallet.str());
  return it == agreements_.end() ? std::vector<DownloadAgreementTx>{} : it->second;
}

ContractLedger::ContractLedger(ledger::Chain& chain, ledger::ValidatorPool pool)
    : chain_(chain), pool_(std::move(pool)) {
  const auto blocks = chain_.blocks();
  views_ = ContractViews::build(blocks);
}

std::uint64_t ContractLedger::record_download_agreement(const WalletAddress& downloader,
                                                        const ProjectId& project_id,
                                                        licensing::LicenseId license,
                                                        std::int64_t timestamp) {
  std::unique_lock lock(mutex_);
  const auto project = views_.project(project_id);
  if (!project) throw Error(Errc::not_found, "unknown project '" + project_id + "'");
  if (project->registration.license != license) {
    throw Error(Errc::integrity, "agreement license " + std::string(licensing::to_spdx(license)) +
                                     " does not match project license " +
                                     std::string(licensing::to_spdx(project->registration.license)));
  }
  const ledger::Block block = chain_.append(
      DownloadAgreementTx{downloader, project_id, license, timestamp}, pool_, timestamp);
  views_.apply(block);
  return block.index;
}

std::uint64_t ContractLedger::register_project(const WalletAddress& uploader, const ProjectId& project_id,
                                               std::vector<ProjectId> parents,
                                               licensing::LicenseId license,
                                               std::vector<codescan::FunctionHash> function_hashes,
                                               std::int64_t timestamp) {
  normalize_hashes(function_hashes);
  ProjectRegistrationTx tx{uploader, project_id, std::move(parents), license,
                           std::move(function_hashes)};
  validate_schema(tx);

  std::unique_lock lock(mutex_);
  if (views_.project(project_id)) {
    throw Error(Errc::conflict, "project '" + project_id + "' is already registered");
  }
  for (const auto& parent : tx.parents) {
    if (!views_.project(parent)) throw Error(Errc::not_found, "unknown parent project '" + parent + "'");
  }
  const ledger::Block block = chain_.append(tx, pool_, timestamp);
  views_.apply(block);
  return block.index;
}

std::vector<HashMatch> ContractLedger::query_function_hash(const codescan::FunctionHash& hash) const {
  std::shared_lock lock(mutex_);
  return views_.query_function_hash(hash);
}

std::vector<DownloadAgreementTx> ContractLedger::agreements_for(const WalletAddress& wallet) const {
  std::shared_lock lock(mutex_);
  return views_.agreements_for(wallet);
}

std::optional<RegisteredProject> ContractLedger::project(const ProjectId& id) const {
  std::shared_lock lock(mutex_);
  return views_.project(id);
}

std::vector<RegisteredProject> ContractLedger::projects() const {
  std::shared_lock lock(mutex_);
  return views_.projects();
}

ContractViews ContractLedger::views() const {
  std::shared_lock lock(mutex_);
  return views_;
}

}  // namespace licensechain::contracts
