// SPDX-License-Identifier: Apache-2.0
#include "licensechain/ledger/validator.hpp"

#include "licensechain/error.hpp"

namespace licensechain::ledger {

ValidatorPool::ValidatorPool(std::size_t node_count, std::size_t threshold)
    : faults_(node_count, ValidatorFault::none), threshold_(threshold) {
  if (node_count < 1) throw Error(Errc::validation, "validator pool needs at least one node");
  if (threshold < 1 || threshold > node_count) {
    throw Error(Errc::validation, "approval threshold must lie in [1, node_count]");
  }
}

void ValidatorPool::inject_fault(std::size_t node, ValidatorFault fault) {
  if (node >= faults_.size()) throw Error(Errc::validation, "no such validator");
  faults_[node] = fault;
}

bool ValidatorPool::approves(std::size_t node, const Block& tip, const Block& candidate) const {
  const ValidatorFault fault = faults_.at(node);
  if (fault == ValidatorFault::reject_all) return false;

  Block view = candidate;
  if (fault == ValidatorFault::corrupt_prev_hash && !view.prev_hash.empty()) {
    view.prev_hash[0] = view.prev_hash[0] == '0' ? '1' : '0';
  }

  if (std::holds_alternative<contracts::GenesisTx>(view.tx)) return false;
  if (view.index != tip.index + 1) return false;
  if (view.prev_hash != tip.block_hash) return false;
  try {
    contracts::validate_schema(view.tx);
    return view.block_hash == compute_block_hash(view.index, view.timestamp, view.prev_hash, view.tx);
  } catch (const Error&) {
    return false;
  }
}

std::size_t ValidatorPool::approvals(const Block& tip, const Block& candidate) const {
  std::size_t count = 0;
  for (std::size_t node = 0; node < faults_.size(); ++node) {
    if (approves(node, tip, candidate)) ++count;
  }
  return count;
}

}  // namespace licensechain::ledger
