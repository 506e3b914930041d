// SPDX-License-Identifier: Apache-2.0
//
// Canonical block encoding. One block per line:
//
//   {"index":N,"timestamp":T,"prev_hash":"<64 hex>","tx":{...},"block_hash":"<64 hex>"}
//
// Top-level fields appear in exactly that order; the tx object has its keys
// sorted and no whitespace anywhere. The block hash is SHA-256 over the same
// line with the ,"block_hash":... member removed (the hashing preimage).
#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "licensechain/contracts/transactions.hpp"
#include "licensechain/ledger/block.hpp"

namespace licensechain::ledger {

std::string canonical_tx(const contracts::ContractTx& tx);

std::string hashing_preimage(std::uint64_t index, std::int64_t timestamp,
                             const std::string& prev_hash, const contracts::ContractTx& tx);

std::string serialize_block(const Block& block);

/// Parses one line. Rejects anything that does not re-serialize to exactly
/// the same bytes. Throws Error(validation).
Block parse_block(std::string_view line);

/// Strict decoder for a tx object in canonical JSON text.
contracts::ContractTx parse_tx(std::string_view json_text);

}  // namespace licensechain::ledger
