// SPDX-License-Identifier: Apache-2.0
#include "licensechain/service/platform.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "licensechain/error.hpp"

namespace licensechain::service {

using contracts::ProjectId;
using licensing::LicenseId;

std::vector<ExplainRow> explain_match(const codescan::ProjectScan& upload,
                                      const contracts::ProjectRegistrationTx& matched) {
  std::vector<ExplainRow> rows;
  for (std::size_t i = 0; i < upload.spans.size(); ++i) {
    const auto& h = upload.span_hashes[i];
    if (std::binary_search(matched.function_hashes.begin(), matched.function_hashes.end(), h)) {
      rows.push_back({h, upload.spans[i].file_path});
    }
  }
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  return rows;
}

Platform::Platform(PlatformConfig config) : config_(std::move(config)) {
  if (!config_.matrix) config_.matrix = &licensing::CompatibilityMatrix::shipped();
  if (!config_.clock) config_.clock = ledger::system_clock();
  std::error_code ec;
  std::filesystem::create_directories(config_.data_dir, ec);
  if (ec) throw Error(Errc::io, "cannot create data directory '" + config_.data_dir.string() + "'");
  chain_ = std::make_unique<ledger::Chain>(config_.data_dir / "chain.log");
  ledger_ = std::make_unique<contracts::ContractLedger>(
      *chain_, ledger::ValidatorPool(config_.node_count, config_.threshold));
  registry_ = std::make_unique<registry::Registry>(config_.data_dir);
  recovered_ = registry_->reconcile(*ledger_);
}

contracts::WalletAddress Platform::wallet_of(const std::string& username) const {
  if (auto w = config_.wallets.find(username)) return *w;
  throw Error(Errc::auth, "unknown user '" + username + "'");
}

DownloadResult Platform::download(const std::string& username, const ProjectId& project_id) {
  const auto wallet = wallet_of(username);
  const auto record = registry_->get_project(project_id);
  const auto registered = ledger_->project(project_id);
  if (!registered) throw Error(Errc::not_found, "project '" + project_id + "' is not registered on the chain");

  DownloadResult result;
  result.archive = registry_->archives().get(record.archive_ref);
  result.license = registered->registration.license;

  std::lock_guard lock(commit_mutex_);
  const auto now = config_.clock();
  result.block_index = ledger_->record_download_agreement(wallet, project_id, result.license, now);
  registry_->store().ensure_account(username, wallet, now);
  return result;
}

UploadVerdict Platform::evaluate(const std::string& username, const codescan::ProjectScan& scan,
                                 LicenseId declared) const {
  std::set<ProjectId> allowed_origins;
  const bool scoped = config_.scope == MatchScope::downloaded_by_user;
  if (scoped) {
    for (const auto& a : ledger_->agreements_for(wallet_of(username))) allowed_origins.insert(a.project_id);
  }

  std::map<ProjectId, ConflictEntry> by_origin;
  for (const auto& h : scan.hashes) {
    for (const auto& m : ledger_->query_function_hash(h)) {
      if (scoped && !allowed_origins.contains(m.project_id)) continue;
      auto [it, inserted] = by_origin.try_emplace(m.project_id, ConflictEntry{m.project_id, m.license, 0});
      ++it->second.matched_hash_count;
    }
  }

  UploadVerdict verdict;
  verdict.suggestions = licensing::LicenseSet::all();
  for (const auto& [id, entry] : by_origin) {
    verdict.matches.push_back(entry);
    verdict.suggestions &= matrix().compatible_with(entry.origin_license);
    const bool ok = declared == entry.origin_license || matrix().is_compatible(entry.origin_license, declared);
    if (!ok) {
      verdict.conflicts.push_back(entry);
      if (auto reg = ledger_->project(id)) {
        verdict.explanations.push_back({id, explain_match(scan, reg->registration)});
      }
    }
  }
  verdict.outcome = verdict.conflicts.empty() ? UploadVerdict::Outcome::accepted : UploadVerdict::Outcome::conflict;
  if (verdict.accepted()) verdict.suggestions = {};
  return verdict;
}

UploadVerdict Platform::upload(const UploadRequest& request) {
  const auto wallet = wallet_of(request.username);
  if (request.name.empty()) throw Error(Errc::validation, "project name must not be empty");
  for (const auto& parent : request.parents) {
    if (!ledger_->project(parent)) throw Error(Errc::not_found, "unknown parent project '" + parent + "'");
  }
  std::set<ProjectId> seen;
  for (const auto& parent : request.parents) {
    if (!seen.insert(parent).second) throw Error(Errc::validation, "parent '" + parent + "' listed twice");
  }

  const auto scan = codescan::scan_archive(request.archive, codescan::Extractor::shipped(), config_.limits);

  std::lock_guard lock(commit_mutex_);
  auto verdict = evaluate(request.username, scan, request.license);
  if (!verdict.accepted()) return verdict;

  const ProjectId id = registry::next_project_id(*ledger_);
  const auto now = config_.clock();
  const std::string archive_ref = registry_->archives().put(request.archive);
  const auto block = ledger_->register_project(wallet, id, request.parents, request.license, scan.hashes, now);

  registry::ProjectRecord record;
  record.project_id = id;
  record.name = request.name;
  record.description = request.description;
  record.uploader = request.username;
  record.license = request.license;
  record.parents = request.parents;
  for (const auto& [lang, count] : scan.language_files) record.language_mix[std::string(codescan::to_string(lang))] = count;
  record.chain_ref = block;
  record.archive_ref = archive_ref;
  registry_->store().ensure_account(request.username, wallet, now);
  registry_->put_project(record);

  verdict.project_id = id;
  verdict.block_index = block;
  return verdict;
}

}  // namespace licensechain::service
