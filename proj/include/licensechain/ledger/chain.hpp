// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "licensechain/ledger/block.hpp"
#include "licensechain/ledger/validator.hpp"

namespace licensechain::ledger {

/// Source of block timestamps (UTC seconds). Injected so tests are repeatable.
using Clock = std::function<std::int64_t()>;
Clock system_clock();

/// Append-only hash chain, optionally backed by a line-per-block file.
///
/// Single writer: appends are serialized internally. Readers may run
/// concurrently with an append and always observe a committed prefix.
class Chain {
 public:
  /// In-memory chain holding only the genesis block.
  Chain();

  /// Opens `file`, creating it with the genesis block if absent or empty.
  /// An existing file is fully verified; corruption throws Error(integrity).
  /// A final line without its terminating newline (torn write) is dropped.
  explicit Chain(const std::filesystem::path& file);

  Chain(const Chain&) = delete;
  Chain& operator=(const Chain&) = delete;

  std::size_t size() const;
  Block at(std::size_t index) const;
  Block tip() const;
  std::vector<Block> blocks() const;
  std::vector<std::string> serialized() const;
  const std::optional<std::filesystem::path>& file() const noexcept { return file_; }

  /// Builds the successor block for `tx`, collects validator approvals and
  /// commits when they reach the pool threshold. On any error the chain
  /// (memory and file) is left unchanged.
  ///
  /// Throws Error(validation) for a schema-invalid or genesis tx,
  /// Error(consensus_rejected) below threshold, Error(io) if persisting fails.
  Block append(const contracts::ContractTx& tx, const ValidatorPool& pool, std::int64_t timestamp);

 private:
  void persist(const std::string& line);

  std::optional<std::filesystem::path> file_;
  mutable std::shared_mutex blocks_mutex_;
  std::mutex writer_mutex_;
  std::vector<Block> blocks_;
};

}  // namespace licensechain::ledger
