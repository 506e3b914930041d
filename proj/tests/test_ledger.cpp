// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <atomic>
#include <thread>

#include "licensechain/ledger/block.hpp"
#include "licensechain/ledger/canonical.hpp"
#include "licensechain/ledger/chain.hpp"
#include "support/errc_check.hpp"
#include "support/generators.hpp"
#include "support/test_support.hpp"

using namespace licensechain;
using namespace licensechain::ledger;

namespace {

const contracts::WalletAddress kAlice =
    contracts::WalletAddress::parse("0x1111111111111111111111111111111111111111");

contracts::ContractTx agreement(const std::string& id, std::int64_t ts = 100) {
  return contracts::DownloadAgreementTx{kAlice, id, licensing::LicenseId::lgpl_2_1, ts};
}

}  // namespace

TEST_SUITE("ledger") {

TEST_CASE("genesis line and hash") {
  const std::string zeros(64, '0');
  const std::string preimage =
      R"({"index":0,"timestamp":0,"prev_hash":")" + zeros + R"(","tx":{"type":"genesis"}})";
  const std::string expected_hash = lctest::external_sha256(preimage);
  const Block g = make_genesis();
  CHECK(g.block_hash == expected_hash);
  CHECK(serialize_block(g) ==
        R"({"index":0,"timestamp":0,"prev_hash":")" + zeros + R"(","tx":{"type":"genesis"},"block_hash":")" +
            expected_hash + R"("})");
}

TEST_CASE("block hash covers the canonical preimage") {
  Chain chain;
  const Block b = chain.append(agreement("proj-1", 5), ValidatorPool{}, 42);
  const std::string line = serialize_block(b);
  const std::string preimage = line.substr(0, line.find(",\"block_hash\"")) + "}";
  CHECK(b.block_hash == lctest::external_sha256(preimage));
  // tx keys are sorted
  CHECK(line.find(R"("tx":{"downloader":"0x1111111111111111111111111111111111111111","license":"LGPL-2.1","project_id":"proj-1","timestamp":5,"type":"download_agreement"})") !=
        std::string::npos);
  CHECK(parse_block(line) == b);
}

TEST_CASE("parse rejects non-canonical lines") {
  Chain chain;
  const std::string line = serialize_block(chain.append(agreement("x"), ValidatorPool{}, 1));
  CHECK_ERRC(parse_block(line + " "), Errc::validation);
  CHECK_ERRC(parse_block(" " + line), Errc::validation);
  std::string spaced = line;
  spaced.insert(spaced.find(':') + 1, " ");
  CHECK_ERRC(parse_block(spaced), Errc::validation);
  CHECK_ERRC(parse_block("{}"), Errc::validation);
  CHECK_ERRC(parse_block("not json"), Errc::validation);
}

TEST_CASE("append links blocks and verifies") {
  Chain chain;
  const Block a = chain.append(agreement("a"), ValidatorPool{}, 10);
  const Block b = chain.append(agreement("b"), ValidatorPool{}, 11);
  CHECK(a.index == 1);
  CHECK(b.index == 2);
  CHECK(a.prev_hash == make_genesis().block_hash);
  CHECK(b.prev_hash == a.block_hash);
  const auto blocks = chain.blocks();
  const auto report = verify_chain(blocks);
  CHECK(report.ok);
  CHECK_FALSE(report.first_failure.has_value());
  CHECK(verify_serialized(chain.serialized()).ok);
}

TEST_CASE("append rejects genesis payloads, bad schema and negative timestamps") {
  Chain chain;
  CHECK_ERRC(chain.append(contracts::GenesisTx{}, ValidatorPool{}, 1), Errc::validation);
  CHECK_ERRC(chain.append(agreement("a"), ValidatorPool{}, -1), Errc::validation);
  CHECK_ERRC(chain.append(agreement("bad id!"), ValidatorPool{}, 1), Errc::validation);
  CHECK(chain.size() == 1);
}

TEST_CASE("field tampering is caught at the tampered block") {
  std::mt19937_64 rng(5);
  auto chain = lctest::random_chain(rng, 12);
  auto blocks = chain->blocks();
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    auto copy = blocks;
    copy[i].timestamp += 1;
    const auto report = verify_chain(copy);
    CHECK_FALSE(report.ok);
    CHECK(report.first_failure == i);
  }
  auto copy = blocks;
  copy[4].block_hash = copy[3].block_hash;
  CHECK(verify_chain(copy).first_failure == 4);
  CHECK_FALSE(verify_chain(std::span<const Block>{}).ok);
}

TEST_CASE("single-byte mutations are always detected at their line") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 150; ++trial) {
    auto chain = lctest::random_chain(rng, rng() % 20);
    auto lines = chain->serialized();
    REQUIRE(verify_serialized(lines).ok);
    const std::size_t li = rng() % lines.size();
    const std::size_t bi = rng() % lines[li].size();
    const char old = lines[li][bi];
    char now = old;
    while (now == old) now = static_cast<char>(rng() & 0xff);
    lines[li][bi] = now;
    const auto report = verify_serialized(lines);
    CHECK_FALSE(report.ok);
    CHECK(report.first_failure == li);
  }
}

TEST_CASE("consensus threshold") {
  Chain chain;
  ValidatorPool pool(3, 2);
  pool.inject_fault(0, ValidatorFault::reject_all);
  CHECK_NOTHROW(chain.append(agreement("a"), pool, 1));
  pool.inject_fault(1, ValidatorFault::corrupt_prev_hash);
  CHECK_ERRC(chain.append(agreement("b"), pool, 2), Errc::consensus_rejected);
  CHECK(chain.size() == 2);
  pool.inject_fault(0, ValidatorFault::none);
  CHECK_NOTHROW(chain.append(agreement("b"), pool, 2));
  CHECK_ERRC(ValidatorPool(3, 0), Errc::validation);
  CHECK_ERRC(ValidatorPool(2, 3), Errc::validation);
}

TEST_CASE("validators judge linkage independently") {
  Chain chain;
  const Block tip = chain.tip();
  Block forged{.index = 1, .timestamp = 3, .prev_hash = std::string(64, 'f'), .tx = agreement("x"), .block_hash = {}};
  forged.block_hash = compute_block_hash(forged.index, forged.timestamp, forged.prev_hash, forged.tx);
  CHECK(ValidatorPool{}.approvals(tip, forged) == 0);
}

TEST_CASE("file-backed chain persists and reloads") {
  lctest::TempDir dir;
  const auto file = dir / "chain.log";
  {
    Chain chain(file);
    CHECK(chain.size() == 1);
    chain.append(agreement("a"), ValidatorPool{}, 10);
    chain.append(agreement("b"), ValidatorPool{}, 11);
  }
  const std::string bytes = lctest::read_file(file);
  CHECK(std::count(bytes.begin(), bytes.end(), '\n') == 3);
  Chain reloaded(file);
  CHECK(reloaded.size() == 3);
  std::string joined;
  for (const auto& line : reloaded.serialized()) joined += line + "\n";
  CHECK(joined == bytes);
}

TEST_CASE("a rejected append leaves the file untouched") {
  lctest::TempDir dir;
  const auto file = dir / "chain.log";
  Chain chain(file);
  chain.append(agreement("a"), ValidatorPool{}, 10);
  const std::string before = lctest::read_file(file);
  ValidatorPool pool;
  pool.inject_fault(0, ValidatorFault::reject_all);
  pool.inject_fault(1, ValidatorFault::reject_all);
  CHECK_ERRC(chain.append(agreement("b"), pool, 11), Errc::consensus_rejected);
  CHECK(lctest::read_file(file) == before);
}

TEST_CASE("torn final line is dropped, corruption refuses to load") {
  lctest::TempDir dir;
  const auto file = dir / "chain.log";
  { Chain chain(file); chain.append(agreement("a"), ValidatorPool{}, 10); }
  const std::string good = lctest::read_file(file);
  lctest::write_file(file, good + "{\"index\":2,\"timest");
  {
    Chain chain(file);
    CHECK(chain.size() == 2);
  }
  CHECK(lctest::read_file(file) == good);

  std::string bad = good;
  bad[bad.size() - 5] = bad[bad.size() - 5] == 'a' ? 'b' : 'a';
  lctest::write_file(file, bad);
  CHECK_ERRC(Chain{file}, Errc::integrity);
}

TEST_CASE("readers see a verified prefix during appends") {
  Chain chain;
  std::atomic<bool> done{false};
  std::atomic<int> bad{0};
  std::thread reader([&] {
    while (!done) {
      const auto lines = chain.serialized();
      if (!verify_serialized(lines).ok) ++bad;
    }
  });
  for (int i = 0; i < 200; ++i) chain.append(agreement("p" + std::to_string(i)), ValidatorPool{}, i);
  done = true;
  reader.join();
  CHECK(bad == 0);
  CHECK(chain.size() == 201);
}

}
