// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <json.hpp>

#include "licensechain/contracts/contract_ledger.hpp"
#include "licensechain/ledger/canonical.hpp"
#include "support/errc_check.hpp"
#include "support/generators.hpp"
#include "support/test_support.hpp"

using namespace licensechain;
using namespace licensechain::contracts;
using licensing::LicenseId;

namespace {

const WalletAddress kAlice = WalletAddress::parse("0x1111111111111111111111111111111111111111");
const WalletAddress kBob = WalletAddress::parse("0x2222222222222222222222222222222222222222");

codescan::FunctionHash h(int n) { return codescan::FunctionHash::from_hex(crypto::sha256_hex(std::to_string(n))); }

// Oracle: registrations containing `hash`, read straight from the persisted lines.
std::vector<std::pair<std::string, std::string>> scan_lines_for(const std::vector<std::string>& lines,
                                                                const std::string& hash) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& line : lines) {
    const auto j = nlohmann::json::parse(line);
    const auto& tx = j["tx"];
    if (tx["type"] != "project_registration") continue;
    for (const auto& x : tx["function_hashes"]) {
      if (x == hash) out.emplace_back(tx["project_id"], tx["license"]);
    }
  }
  return out;
}

}  // namespace

TEST_SUITE("contracts") {

TEST_CASE("wallet addresses") {
  CHECK(WalletAddress::is_valid("0xABCDEF0123456789abcdef0123456789ABCDEF01"));
  CHECK(WalletAddress::parse("0xABCDEF0123456789abcdef0123456789ABCDEF01").str() ==
        "0xabcdef0123456789abcdef0123456789abcdef01");
  CHECK_FALSE(WalletAddress::is_valid("0x123"));
  CHECK_FALSE(WalletAddress::is_valid("1x1111111111111111111111111111111111111111"));
  CHECK_FALSE(WalletAddress::is_valid("0x111111111111111111111111111111111111111g"));
  CHECK_ERRC(WalletAddress::parse(""), Errc::validation);
}

TEST_CASE("function hash text form") {
  CHECK(codescan::FunctionHash::from_hex(std::string(64, 'a')).hex() == std::string(64, 'a'));
  CHECK_ERRC(codescan::FunctionHash::from_hex(std::string(64, 'A')), Errc::validation);
  CHECK_ERRC(codescan::FunctionHash::from_hex(std::string(63, 'a')), Errc::validation);
}

TEST_CASE("schema checks") {
  ProjectRegistrationTx reg{kAlice, "p1", {"p1"}, LicenseId::mit, {}};
  CHECK_ERRC(validate_schema(reg), Errc::validation);
  reg.parents = {"p0", "p0"};
  CHECK_ERRC(validate_schema(reg), Errc::validation);
  reg.parents = {};
  reg.function_hashes = {h(2), h(1)};
  if (reg.function_hashes[0] < reg.function_hashes[1]) std::swap(reg.function_hashes[0], reg.function_hashes[1]);
  CHECK_ERRC(validate_schema(reg), Errc::validation);
  normalize_hashes(reg.function_hashes);
  CHECK_NOTHROW(validate_schema(reg));
  CHECK_ERRC(validate_schema(DownloadAgreementTx{kAlice, "p1", LicenseId::mit, -5}), Errc::validation);
  CHECK(is_valid_project_id("proj-1.a_b"));
  CHECK_FALSE(is_valid_project_id(""));
  CHECK_FALSE(is_valid_project_id(std::string(129, 'a')));
  CHECK_FALSE(is_valid_project_id("a/b"));
}

TEST_CASE("registration and agreement round trip") {
  ledger::Chain chain;
  ContractLedger ledger(chain);
  const auto idx = ledger.register_project(kBob, "proj-1", {}, LicenseId::lgpl_2_1, {h(3), h(1), h(2), h(1)}, 50);
  CHECK(idx == 1);
  const auto reg = ledger.project("proj-1").value();
  CHECK(reg.block_index == 1);
  CHECK(reg.registration.function_hashes.size() == 3);
  CHECK(std::is_sorted(reg.registration.function_hashes.begin(), reg.registration.function_hashes.end()));

  const auto a1 = ledger.record_download_agreement(kAlice, "proj-1", LicenseId::lgpl_2_1, 60);
  const auto a2 = ledger.record_download_agreement(kAlice, "proj-1", LicenseId::lgpl_2_1, 61);
  CHECK(a1 != a2);
  const auto agreements = ledger.agreements_for(kAlice);
  REQUIRE(agreements.size() == 2);
  CHECK(agreements[0] == DownloadAgreementTx{kAlice, "proj-1", LicenseId::lgpl_2_1, 60});
  CHECK(agreements[1].timestamp == 61);
  CHECK(ledger.agreements_for(kBob).empty());

  const auto committed = ledger::parse_block(chain.serialized()[a1]);
  CHECK(std::get<DownloadAgreementTx>(committed.tx) == agreements[0]);
}

TEST_CASE("state-checked errors leave the chain alone") {
  ledger::Chain chain;
  ContractLedger ledger(chain);
  ledger.register_project(kBob, "proj-1", {}, LicenseId::mit, {h(1)}, 1);
  CHECK_ERRC(ledger.register_project(kBob, "proj-1", {}, LicenseId::mit, {}, 2), Errc::conflict);
  CHECK_ERRC(ledger.register_project(kBob, "proj-2", {"ghost"}, LicenseId::mit, {}, 2), Errc::not_found);
  CHECK_ERRC(ledger.record_download_agreement(kAlice, "ghost", LicenseId::mit, 2), Errc::not_found);
  CHECK_ERRC(ledger.record_download_agreement(kAlice, "proj-1", LicenseId::gpl_3_0, 2), Errc::integrity);
  CHECK(chain.size() == 2);
  CHECK_NOTHROW(ledger.register_project(kAlice, "proj-2", {"proj-1"}, LicenseId::gpl_3_0, {h(1)}, 3));
}

TEST_CASE("hash queries agree with a scan of the persisted lines") {
  std::mt19937_64 rng(21);
  ledger::Chain chain;
  ContractLedger ledger(chain);
  std::vector<codescan::FunctionHash> pool;
  for (int i = 0; i < 30; ++i) pool.push_back(h(i));
  for (int p = 0; p < 25; ++p) {
    std::vector<codescan::FunctionHash> mine;
    for (int k = 0; k < 4; ++k) mine.push_back(pool[rng() % pool.size()]);
    ledger.register_project(lctest::random_wallet(rng), "proj-" + std::to_string(p), {}, lctest::random_license(rng),
                            mine, p);
  }
  const auto lines = chain.serialized();
  for (const auto& hash : pool) {
    std::vector<std::pair<std::string, std::string>> got;
    for (const auto& m : ledger.query_function_hash(hash)) got.emplace_back(m.project_id, licensing::to_spdx(m.license));
    CHECK(got == scan_lines_for(lines, hash.hex()));
  }
}

TEST_CASE("views are a pure function of the log") {
  std::mt19937_64 rng(8);
  lctest::TempDir dir;
  const auto file = dir / "chain.log";
  ContractViews live;
  {
    ledger::Chain chain(file);
    ContractLedger ledger(chain);
    std::vector<std::string> ids;
    for (int i = 0; i < 40; ++i) {
      if (ids.empty() || rng() % 3 != 0) {
        const std::string id = "proj-" + std::to_string(i);
        std::vector<ProjectId> parents;
        if (!ids.empty() && rng() % 2) parents.push_back(ids[rng() % ids.size()]);
        ledger.register_project(lctest::random_wallet(rng), id, parents, lctest::random_license(rng),
                                {lctest::random_hash(rng), h(static_cast<int>(rng() % 5))}, i);
        ids.push_back(id);
      } else {
        const auto& id = ids[rng() % ids.size()];
        ledger.record_download_agreement(kAlice, id, ledger.project(id)->registration.license, i);
      }
    }
    live = ledger.views();
    CHECK(live == ContractViews::build(chain.blocks()));
  }
  ledger::Chain reopened(file);
  ContractLedger rebuilt(reopened);
  CHECK(rebuilt.views() == live);
}

}
