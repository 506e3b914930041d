// SPDX-License-Identifier: Apache-2.0
#include "licensechain/registry/registry.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "licensechain/error.hpp"

namespace licensechain::registry {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::filesystem::path prepared(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(Errc::io, "cannot create data directory '" + dir.string() + "': " + ec.message());
  return dir;
}

}  // namespace

Registry::Registry(const std::filesystem::path& data_dir)
    : store_(open_sqlite_store(prepared(data_dir) / "registry.sqlite")), archives_(data_dir / "archives") {}

void Registry::put_project(const ProjectRecord& record) { store_->put(record); }

ProjectRecord Registry::get_project(const contracts::ProjectId& id) const {
  if (auto r = store_->find(id)) return *r;
  throw Error(Errc::not_found, "unknown project '" + id + "'");
}

std::optional<ProjectRecord> Registry::find_project(const contracts::ProjectId& id) const {
  return store_->find(id);
}

std::vector<ProjectRecord> Registry::list_projects() const { return store_->list(); }

std::vector<ProjectRecord> Registry::search_projects(std::string_view query) const {
  const std::string needle = lower(query);
  std::vector<ProjectRecord> out;
  for (auto& r : store_->list()) {
    if (needle.empty() || lower(r.name).find(needle) != std::string::npos ||
        lower(r.description).find(needle) != std::string::npos) {
      out.push_back(std::move(r));
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const ProjectRecord& a, const ProjectRecord& b) {
    return std::tie(a.name, a.project_id) < std::tie(b.name, b.project_id);
  });
  return out;
}

std::vector<contracts::ProjectId> Registry::reconcile(const contracts::ContractLedger& ledger) {
  std::vector<contracts::ProjectId> recovered;
  for (const auto& p : ledger.projects()) {
    const auto& reg = p.registration;
    if (store_->find(reg.project_id)) continue;
    ProjectRecord r;
    r.project_id = reg.project_id;
    r.name = reg.project_id;
    r.description = "recovered from chain";
    r.uploader = reg.uploader.str();
    r.license = reg.license;
    r.parents = reg.parents;
    r.chain_ref = p.block_index;
    store_->put(r);
    recovered.push_back(reg.project_id);
  }
  return recovered;
}

std::vector<AuditFinding> Registry::audit(const contracts::ContractLedger& ledger) const {
  std::vector<AuditFinding> findings;
  const auto records = store_->list();
  for (const auto& r : records) {
    const auto on_chain = ledger.project(r.project_id);
    if (!on_chain) {
      findings.push_back({r.project_id, "record has no registration on the chain"});
      continue;
    }
    if (on_chain->registration.license != r.license) {
      findings.push_back({r.project_id, "license differs from the chain registration"});
    }
    if (on_chain->block_index != r.chain_ref) {
      findings.push_back({r.project_id, "chain reference points at the wrong block"});
    }
    if (r.archive_ref.empty()) {
      findings.push_back({r.project_id, "no archive stored"});
    } else if (!archives_.contains(r.archive_ref)) {
      findings.push_back({r.project_id, "archive missing from storage"});
    }
  }
  for (const auto& p : ledger.projects()) {
    if (!store_->find(p.registration.project_id)) {
      findings.push_back({p.registration.project_id, "registration has no registry record"});
    }
  }
  return findings;
}

contracts::ProjectId next_project_id(const contracts::ContractLedger& ledger) {
  std::uint64_t max = 0;
  for (const auto& p : ledger.projects()) {
    std::string_view id = p.registration.project_id;
    if (!id.starts_with("proj-")) continue;
    id.remove_prefix(5);
    std::uint64_t n = 0;
    auto [end, ec] = std::from_chars(id.data(), id.data() + id.size(), n);
    if (ec == std::errc() && end == id.data() + id.size()) max = std::max(max, n);
  }
  return "proj-" + std::to_string(max + 1);
}

}  // namespace licensechain::registry
