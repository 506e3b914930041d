// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "licensechain/contracts/transactions.hpp"

namespace licensechain::ledger {

inline const std::string kZeroHash(64, '0');

struct Block {
  std::uint64_t index = 0;
  std::int64_t timestamp = 0;
  std::string prev_hash;
  contracts::ContractTx tx;
  std::string block_hash;

  friend bool operator==(const Block&, const Block&) = default;
};

/// Block 0: timestamp 0, all-zero prev_hash, genesis payload.
Block make_genesis();

/// SHA-256 over the canonical serialization of (index, timestamp, prev_hash, tx),
/// lowercase hex. Throws Error(validation) if prev_hash is not 64 lowercase hex.
std::string compute_block_hash(std::uint64_t index, std::int64_t timestamp,
                               const std::string& prev_hash, const contracts::ContractTx& tx);

struct BlockCheck {
  std::uint64_t position = 0;
  bool linkage_ok = false;
  bool hash_ok = false;
  std::string detail;  // empty when both flags hold
};

struct VerificationReport {
  std::vector<BlockCheck> blocks;
  bool ok = false;
  std::optional<std::uint64_t> first_failure;
};

/// Checks genesis conventions, index/prev_hash linkage and every block_hash.
VerificationReport verify_chain(std::span<const Block> blocks);

/// Same checks over persisted lines. A line that does not parse, or is not in
/// canonical form, fails both flags at its position.
VerificationReport verify_serialized(std::span<const std::string> lines);

}  // namespace licensechain::ledger
