// SPDX-License-Identifier: Apache-2.0
#include "licensechain/ledger/block.hpp"

#include "licensechain/crypto/hex.hpp"
#include "licensechain/crypto/sha256.hpp"
#include "licensechain/error.hpp"
#include "licensechain/ledger/canonical.hpp"

namespace licensechain::ledger {

std::string compute_block_hash(std::uint64_t index, std::int64_t timestamp,
                               const std::string& prev_hash, const contracts::ContractTx& tx) {
  if (!crypto::is_lower_hex(prev_hash, 64)) {
    throw Error(Errc::validation, "prev_hash must be 64 lowercase hex characters");
  }
  return crypto::sha256_hex(hashing_preimage(index, timestamp, prev_hash, tx));
}

Block make_genesis() {
  Block genesis{.index = 0, .timestamp = 0, .prev_hash = kZeroHash, .tx = contracts::GenesisTx{},
                .block_hash = {}};
  genesis.block_hash = compute_block_hash(0, 0, kZeroHash, genesis.tx);
  return genesis;
}

namespace {

// Linkage relative to the predecessor (nullptr for position 0).
std::string linkage_problem(std::uint64_t position, const Block& block, const Block* prev) {
  const bool is_genesis_tx = std::holds_alternative<contracts::GenesisTx>(block.tx);
  if (prev == nullptr) {
    if (position != 0 || block.index != 0) return "genesis must have index 0";
    if (block.prev_hash != kZeroHash) return "genesis prev_hash must be all zeros";
    if (!is_genesis_tx) return "block 0 must carry the genesis payload";
    if (block.timestamp != 0) return "genesis timestamp must be 0";
    return {};
  }
  if (block.index != prev->index + 1 || block.index != position) return "index does not follow predecessor";
  if (block.prev_hash != prev->block_hash) return "prev_hash does not match predecessor block_hash";
  if (is_genesis_tx) return "genesis payload after block 0";
  return {};
}

std::string hash_problem(const Block& block) {
  try {
    contracts::validate_schema(block.tx);
    if (block.block_hash != compute_block_hash(block.index, block.timestamp, block.prev_hash, block.tx)) {
      return "block_hash does not match contents";
    }
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

void finish(VerificationReport& report) {
  report.ok = !report.blocks.empty();
  for (const auto& check : report.blocks) {
    if (!check.linkage_ok || !check.hash_ok) {
      report.ok = false;
      if (!report.first_failure) report.first_failure = check.position;
    }
  }
  if (report.blocks.empty()) report.first_failure = 0;
}

}  // namespace

VerificationReport verify_chain(std::span<const Block> blocks) {
  VerificationReport report;
  report.blocks.reserve(blocks.size());
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    BlockCheck check{.position = i};
    const std::string link = linkage_problem(i, blocks[i], i == 0 ? nullptr : &blocks[i - 1]);
    const std::string hash = hash_problem(blocks[i]);
    check.linkage_ok = link.empty();
    check.hash_ok = hash.empty();
    check.detail = link.empty() ? hash : (hash.empty() ? link : link + "; " + hash);
    report.blocks.push_back(std::move(check));
  }
  finish(report);
  return report;
}

VerificationReport verify_serialized(std::span<const std::string> lines) {
  VerificationReport report;
  report.blocks.reserve(lines.size());
  std::optional<Block> prev;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    BlockCheck check{.position = i};
    std::optional<Block> block;
    try {
      block = parse_block(lines[i]);
    } catch (const Error& e) {
      check.detail = std::string("unparseable block: ") + e.what();
    }
    if (block) {
      std::string link;
      if (i > 0 && !prev) {
        link = "predecessor unreadable";
      } else {
        link = linkage_problem(i, *block, prev ? &*prev : nullptr);
      }
      const std::string hash = hash_problem(*block);
      check.linkage_ok = link.empty();
      check.hash_ok = hash.empty();
      check.detail = link.empty() ? hash : (hash.empty() ? link : link + "; " + hash);
    }
    prev = std::move(block);
    report.blocks.push_back(std::move(check));
  }
  finish(report);
  return report;
}

}  // namespace licensechain::ledger
