// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

#include "licensechain/ledger/block.hpp"

namespace licensechain::ledger {

/// Test hooks for individual validators.
enum class ValidatorFault {
  none,
  corrupt_prev_hash,  // alters its copy of the candidate's prev_hash before checking
  reject_all,         // votes no unconditionally
};

/// In-process stand-in for the validating nodes. Each validator re-derives
/// linkage and the block hash of a candidate on its own; a candidate is
/// committed once `threshold` of `node_count` validators approve it.
class ValidatorPool {
 public:
  /// Throws Error(validation) unless 1 <= threshold <= node_count.
  explicit ValidatorPool(std::size_t node_count = 3, std::size_t threshold = 2);

  std::size_t node_count() const noexcept { return faults_.size(); }
  std::size_t threshold() const noexcept { return threshold_; }

  void inject_fault(std::size_t node, ValidatorFault fault);

  bool approves(std::size_t node, const Block& tip, const Block& candidate) const;
  std::size_t approvals(const Block& tip, const Block& candidate) const;

 private:
  std::vector<ValidatorFault> faults_;
  std::size_t threshold_;
};

}  // namespace licensechain::ledger
