// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <random>

#include "licensechain/contracts/transactions.hpp"
#include "licensechain/crypto/sha256.hpp"
#include "licensechain/ledger/chain.hpp"
#include "licensechain/licensing/license.hpp"

namespace lctest {

inline licensechain::contracts::WalletAddress random_wallet(std::mt19937_64& rng) {
  static const char* digits = "0123456789abcdef";
  std::string s = "0x";
  for (int i = 0; i < 40; ++i) s.push_back(digits[rng() % 16]);
  return licensechain::contracts::WalletAddress::parse(s);
}

inline licensechain::licensing::LicenseId random_license(std::mt19937_64& rng) {
  return static_cast<licensechain::licensing::LicenseId>(rng() % licensechain::licensing::kLicenseCount);
}

inline licensechain::codescan::FunctionHash random_hash(std::mt19937_64& rng) {
  return licensechain::codescan::FunctionHash::from_hex(
      licensechain::crypto::sha256_hex(std::to_string(rng())));
}

/// A schema-valid download agreement or registration.
inline licensechain::contracts::ContractTx random_tx(std::mt19937_64& rng, std::size_t serial) {
  using namespace licensechain::contracts;
  const std::string id = "p" + std::to_string(serial);
  if (rng() % 2 == 0) {
    return DownloadAgreementTx{random_wallet(rng), id, random_license(rng),
                               static_cast<std::int64_t>(rng() % 2'000'000'000)};
  }
  ProjectRegistrationTx reg{random_wallet(rng), id, {}, random_license(rng), {}};
  const std::size_t parents = rng() % 3;
  for (std::size_t i = 0; i < parents && serial > 0; ++i) {
    std::string parent = "p" + std::to_string(rng() % serial);
    if (std::find(reg.parents.begin(), reg.parents.end(), parent) == reg.parents.end()) reg.parents.push_back(parent);
  }
  const std::size_t hashes = rng() % 6;
  for (std::size_t i = 0; i < hashes; ++i) reg.function_hashes.push_back(random_hash(rng));
  normalize_hashes(reg.function_hashes);
  return reg;
}

/// In-memory chain with `extra` random blocks after genesis.
inline std::unique_ptr<licensechain::ledger::Chain> random_chain(std::mt19937_64& rng, std::size_t extra) {
  auto chain = std::make_unique<licensechain::ledger::Chain>();
  const licensechain::ledger::ValidatorPool pool;
  for (std::size_t i = 0; i < extra; ++i) {
    chain->append(random_tx(rng, i), pool, static_cast<std::int64_t>(rng() % 2'000'000'000));
  }
  return chain;
}

}  // namespace lctest
