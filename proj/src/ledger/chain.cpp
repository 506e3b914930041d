// SPDX-License-Identifier: Apache-2.0
#include "licensechain/ledger/chain.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <fstream>
#include <sstream>

#include "licensechain/error.hpp"
#include "licensechain/ledger/canonical.hpp"

namespace licensechain::ledger {

namespace fs = std::filesystem;

Clock system_clock() {
  return [] {
    return std::chrono::duration_cast<std::chrono::seconds>(
               std::chrono::system_clock::now().time_since_epoch())
        .count();
  };
}

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot read chain file '" + path.string() + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_all(int fd, const std::string& data, const fs::path& path) {
  std::size_t done = 0;
  while (done < data.size()) {
    const ssize_t n = ::write(fd, data.data() + done, data.size() - done);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw Error(Errc::io, "write to '" + path.string() + "' failed: " + std::strerror(errno));
    }
    done += static_cast<std::size_t>(n);
  }
}

}  // namespace

Chain::Chain() { blocks_.push_back(make_genesis()); }

Chain::Chain(const fs::path& file) : file_(file) {
  std::vector<std::string> lines;
  if (fs::exists(file)) {
    const std::string content = read_file(file);
    std::size_t start = 0;
    while (start < content.size()) {
      const std::size_t nl = content.find('\n', start);
      if (nl == std::string::npos) {
        // Torn final write: the block never committed.
        fs::resize_file(file, start);
        break;
      }
      lines.push_back(content.substr(start, nl - start));
      start = nl + 1;
    }
  }

  if (lines.empty()) {
    const Block genesis = make_genesis();
    persist(serialize_block(genesis));
    blocks_.push_back(genesis);
    return;
  }

  const VerificationReport report = verify_serialized(lines);
  if (!report.ok) {
    const auto pos = *report.first_failure;
    throw Error(Errc::integrity, "chain file '" + file.string() + "' fails verification at block " +
                                     std::to_string(pos) + ": " + report.blocks[pos].detail);
  }
  blocks_.reserve(lines.size());
  for (const auto& line : lines) blocks_.push_back(parse_block(line));
}

std::size_t Chain::size() const {
  std::shared_lock lock(blocks_mutex_);
  return blocks_.size();
}

Block Chain::at(std::size_t index) const {
  std::shared_lock lock(blocks_mutex_);
  if (index >= blocks_.size()) {
    throw Error(Errc::not_found, "no block at index " + std::to_string(index));
  }
  return blocks_[index];
}

Block Chain::tip() const {
  std::shared_lock lock(blocks_mutex_);
  return blocks_.back();
}

std::vector<Block> Chain::blocks() const {
  std::shared_lock lock(blocks_mutex_);
  return blocks_;
}

std::vector<std::string> Chain::serialized() const {
  std::shared_lock lock(blocks_mutex_);
  std::vector<std::string> out;
  out.reserve(blocks_.size());
  for (const auto& b : blocks_) out.push_back(serialize_block(b));
  return out;
}

Block Chain::append(const contracts::ContractTx& tx, const ValidatorPool& pool, std::int64_t timestamp) {
  std::lock_guard writer(writer_mutex_);

  if (std::holds_alternative<contracts::GenesisTx>(tx)) {
    throw Error(Errc::validation, "the genesis payload cannot be appended");
  }
  contracts::validate_schema(tx);
  if (timestamp < 0) throw Error(Errc::validation, "negative block timestamp");

  const Block prev = tip();
  Block candidate{.index = prev.index + 1,
                  .timestamp = timestamp,
                  .prev_hash = prev.block_hash,
                  .tx = tx,
                  .block_hash = {}};
  candidate.block_hash =
      compute_block_hash(candidate.index, candidate.timestamp, candidate.prev_hash, candidate.tx);

  const std::size_t approvals = pool.approvals(prev, candidate);
  if (approvals < pool.threshold()) {
    throw Error(Errc::consensus_rejected,
                "block " + std::to_string(candidate.index) + " approved by " +
                    std::to_string(approvals) + " of " + std::to_string(pool.node_count()) +
                    " validators; threshold is " + std::to_string(pool.threshold()));
  }

  persist(serialize_block(candidate));
  std::unique_lock lock(blocks_mutex_);
  blocks_.push_back(candidate);
  return candidate;
}

void Chain::persist(const std::string& line) {
  if (!file_) return;
  const int fd = ::open(file_->c_str(), O_WRONLY | O_APPEND | O_CREAT | O_CLOEXEC, 0644);
  if (fd < 0) {
    throw Error(Errc::io, "cannot open chain file '" + file_->string() + "': " + std::strerror(errno));
  }
  const auto size_before = fs::file_size(*file_);
  try {
    write_all(fd, line + "\n", *file_);
    if (::fsync(fd) != 0) throw Error(Errc::io, "fsync of chain file failed");
  } catch (...) {
    ::close(fd);
    std::error_code ec;
    fs::resize_file(*file_, size_before, ec);
    throw;
  }
  ::close(fd);
}

}  // namespace licensechain::ledger
