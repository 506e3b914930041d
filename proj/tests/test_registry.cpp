// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cstdlib>

#include "licensechain/crypto/sha256.hpp"
#include "licensechain/registry/registry.hpp"
#include "licensechain/registry/wallet_config.hpp"
#include "support/errc_check.hpp"
#include "support/test_support.hpp"

using namespace licensechain;
using namespace licensechain::registry;
using licensing::LicenseId;

namespace {

const auto kAlice = contracts::WalletAddress::parse("0x1111111111111111111111111111111111111111");

ProjectRecord record(const std::string& id, const std::string& name, const std::string& description = "") {
  ProjectRecord r;
  r.project_id = id;
  r.name = name;
  r.description = description;
  r.uploader = "alice";
  r.license = LicenseId::mpl_2_0;
  r.parents = {"proj-0"};
  r.language_mix = {{"C", 2}, {"Python", 1}};
  r.chain_ref = 7;
  r.archive_ref = std::string(64, 'a');
  return r;
}

std::string config_error(const std::string& text) {
  try {
    WalletDirectory::parse(text, "wallets.json");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::config);
    return e.what();
  }
  return {};
}

}  // namespace

TEST_SUITE("registry") {

TEST_CASE("record json round trip") {
  const auto r = record("proj-3", "Name \"quoted\"", "multi\nline");
  CHECK(record_from_json_text(to_json_text(r)) == r);
  CHECK_ERRC(record_from_json_text("{}"), Errc::validation);
}

TEST_CASE("records and accounts survive a restart") {
  lctest::TempDir dir;
  {
    Registry reg(dir.path());
    reg.put_project(record("proj-2", "beta"));
    reg.put_project(record("proj-1", "alpha"));
    reg.store().ensure_account("alice", kAlice, 100);
  }
  Registry reg(dir.path());
  CHECK(reg.get_project("proj-1") == record("proj-1", "alpha"));
  CHECK(reg.list_projects().size() == 2);
  CHECK(reg.list_projects()[0].project_id == "proj-1");
  const auto acct = reg.store().account("alice").value();
  CHECK(acct.wallet == kAlice);
  CHECK(acct.created_at == 100);
  CHECK(reg.store().ensure_account("alice", kAlice, 500).created_at == 100);
  CHECK_FALSE(reg.store().account("bob").has_value());
  CHECK_ERRC(reg.get_project("nope"), Errc::not_found);
}

TEST_CASE("reads leave the database bytes alone") {
  lctest::TempDir dir;
  Registry reg(dir.path());
  reg.put_project(record("proj-1", "alpha"));
  const auto before = lctest::snapshot_dir(dir.path());
  (void)reg.find_project("proj-1");
  (void)reg.search_projects("al");
  (void)reg.list_projects();
  (void)reg.store().account("alice");
  Registry second(dir.path());
  (void)second.list_projects();
  CHECK(lctest::snapshot_dir(dir.path()) == before);
}

TEST_CASE("search is case-insensitive over name and description") {
  lctest::TempDir dir;
  Registry reg(dir.path());
  reg.put_project(record("proj-1", "Zeta", "vector math"));
  reg.put_project(record("proj-2", "alpha", "strings"));
  reg.put_project(record("proj-3", "Gamma VECTOR", ""));
  std::vector<std::string> ids;
  for (const auto& r : reg.search_projects("vector")) ids.push_back(r.project_id);
  CHECK(ids == std::vector<std::string>{"proj-3", "proj-1"});
  CHECK(reg.search_projects("").size() == 3);
  CHECK(reg.search_projects("nothing").empty());
}

TEST_CASE("archive store is content addressed") {
  lctest::TempDir dir;
  ArchiveStore store(dir / "archives");
  const auto key = store.put("zip bytes");
  CHECK(key == crypto::sha256_hex("zip bytes"));
  CHECK(store.put("zip bytes") == key);
  CHECK(store.get(key) == "zip bytes");
  CHECK(store.contains(key));
  CHECK(store.keys() == std::vector<std::string>{key});
  CHECK_ERRC(store.get(std::string(64, 'b')), Errc::not_found);
  CHECK_ERRC(store.get("../../etc/passwd"), Errc::not_found);
  lctest::write_file(dir / ("archives/" + key + ".zip"), "tampered");
  CHECK_ERRC(store.get(key), Errc::integrity);
}

TEST_CASE("reconcile and audit against the chain") {
  lctest::TempDir dir;
  ledger::Chain chain;
  contracts::ContractLedger ledger(chain);
  ledger.register_project(kAlice, "proj-1", {}, LicenseId::mit, {}, 1);
  ledger.register_project(kAlice, "proj-7", {}, LicenseId::gpl_3_0, {}, 2);
  CHECK(next_project_id(ledger) == "proj-8");

  Registry reg(dir.path());
  auto r1 = record("proj-1", "one");
  r1.license = LicenseId::mit;
  r1.chain_ref = 1;
  r1.parents = {};
  r1.archive_ref = reg.archives().put("archive-1");
  reg.put_project(r1);
  CHECK(reg.audit(ledger).size() == 1);  // proj-7 has no record

  const auto recovered = reg.reconcile(ledger);
  CHECK(recovered == std::vector<std::string>{"proj-7"});
  const auto r7 = reg.get_project("proj-7");
  CHECK(r7.license == LicenseId::gpl_3_0);
  CHECK(r7.chain_ref == 2);
  CHECK(reg.reconcile(ledger).empty());

  const auto findings = reg.audit(ledger);
  REQUIRE(findings.size() == 1);
  CHECK(findings[0].project_id == "proj-7");  // recovered record has no archive

  auto stray = record("proj-99", "stray");
  reg.put_project(stray);
  bool flagged = false;
  for (const auto& f : reg.audit(ledger)) flagged |= f.project_id == "proj-99";
  CHECK(flagged);
}

TEST_CASE("next id on an empty chain") {
  ledger::Chain chain;
  contracts::ContractLedger ledger(chain);
  CHECK(next_project_id(ledger) == "proj-1");
}

TEST_CASE("wallet config") {
  const auto dir = WalletDirectory::parse(R"({"alice": "0x1111111111111111111111111111111111111111",
"bob": "0x2222222222222222222222222222222222222222"})");
  CHECK(dir.find("alice") == kAlice);
  CHECK_FALSE(dir.find("mallory").has_value());
  CHECK(dir.username_for(kAlice) == "alice");
  CHECK(dir.entries().size() == 2);

  CHECK(config_error("{\n\"a\": \"0x1111111111111111111111111111111111111111\",\n\"a\": \"0x2222222222222222222222222222222222222222\"\n}")
            .find("wallets.json:3: duplicate username 'a'") != std::string::npos);
  CHECK(config_error("{\n\n\"b\": \"0x12\"\n}").find("wallets.json:3: malformed wallet address") != std::string::npos);
  CHECK(config_error("{\n\"c\": 5\n}").find("wallets.json:2:") != std::string::npos);
  CHECK(config_error("{\n\"d\": \"0x1111111111111111111111111111111111111111\",\n").find("wallets.json:") !=
        std::string::npos);
  CHECK_FALSE(config_error("[]").empty());
}

TEST_CASE("wallet config path resolution") {
  ::unsetenv(kWalletsEnvVar);
  CHECK_ERRC(resolve_wallet_config_path(std::nullopt), Errc::config);
  ::setenv(kWalletsEnvVar, "/tmp/from-env.json", 1);
  CHECK(resolve_wallet_config_path(std::nullopt) == "/tmp/from-env.json");
  CHECK(resolve_wallet_config_path(std::filesystem::path("/x.json")) == "/x.json");
  ::unsetenv(kWalletsEnvVar);

  lctest::TempDir dir;
  lctest::write_file(dir / "w.json", R"({"alice": "0x1111111111111111111111111111111111111111"})");
  CHECK(load_wallet_config(dir / "w.json").at("alice") == kAlice);
  CHECK_ERRC(load_wallet_config(dir / "missing.json"), Errc::io);
}

}
