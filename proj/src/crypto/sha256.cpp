// SPDX-License-Identifier: Apache-2.0
#include "licensechain/crypto/sha256.hpp"

#include <algorithm>
#include <cassert>
#include <cstring>
#include <stdexcept>

#include "licensechain/crypto/hex.hpp"
#include "sha256_kernels.hpp"

namespace licensechain::crypto {

namespace {

using detail::kLanes;

Digest digest_from_state(const std::uint32_t* state) {
  Digest out{};
  for (int i = 0; i < 8; ++i) {
    out[4 * i] = static_cast<std::uint8_t>(state[i] >> 24);
    out[4 * i + 1] = static_cast<std::uint8_t>(state[i] >> 16);
    out[4 * i + 2] = static_cast<std::uint8_t>(state[i] >> 8);
    out[4 * i + 3] = static_cast<std::uint8_t>(state[i]);
  }
  return out;
}

// Writes the final padded block(s) for a message of `total_len` bytes whose
// last `rem` (< 64) bytes are `rem_data`. Returns 1 or 2.
std::size_t pad_tail(const std::uint8_t* rem_data, std::size_t rem, std::uint64_t total_len,
                     std::uint8_t* tail /* 128 bytes */) {
  std::memset(tail, 0, 128);
  if (rem > 0) std::memcpy(tail, rem_data, rem);
  tail[rem] = 0x80;
  const std::size_t blocks = rem < 56 ? 1 : 2;
  const std::uint64_t bits = total_len * 8;
  std::uint8_t* len_at = tail + blocks * 64 - 8;
  for (int i = 0; i < 8; ++i) len_at[i] = static_cast<std::uint8_t>(bits >> (56 - 8 * i));
  return blocks;
}

using CompressFn = void (*)(std::uint32_t*, const std::uint8_t*, std::size_t);

CompressFn single_kernel(Sha256Kernel kernel) {
  switch (kernel) {
    case Sha256Kernel::scalar: return &detail::compress_scalar;
    case Sha256Kernel::shani:
      if (!detail::cpu_has_shani()) throw std::invalid_argument("SHA-NI kernel not available");
      return &detail::compress_shani;
    case Sha256Kernel::avx2_x8: break;
  }
  throw std::invalid_argument("not a single-message SHA-256 kernel");
}

void many_single(std::span<const std::string_view> messages, std::span<Digest> out,
                 Sha256Kernel kernel) {
  for (std::size_t i = 0; i < messages.size(); ++i) out[i] = sha256(messages[i], kernel);
}

struct Lane {
  static constexpr std::size_t kIdle = static_cast<std::size_t>(-1);
  std::size_t message = kIdle;
  const std::uint8_t* data = nullptr;
  std::size_t full_blocks = 0;
  std::size_t total_blocks = 0;
  std::size_t next_block = 0;
  std::uint8_t tail[128];

  const std::uint8_t* block() const {
    return next_block < full_blocks ? data + 64 * next_block
                                    : tail + 64 * (next_block - full_blocks);
  }
};

void many_x8(std::span<const std::string_view> messages, std::span<Digest> out) {
  alignas(32) std::uint32_t states[kLanes][8];
  Lane lanes[kLanes];
  static constexpr std::uint8_t kZeroBlock[64] = {};
  std::size_t next_message = 0;

  auto load = [&](std::size_t l) {
    Lane& lane = lanes[l];
    if (next_message >= messages.size()) {
      lane.message = Lane::kIdle;
      return;
    }
    const std::string_view msg = messages[next_message];
    lane.message = next_message++;
    lane.data = reinterpret_cast<const std::uint8_t*>(msg.data());
    lane.full_blocks = msg.size() / 64;
    const std::size_t rem = msg.size() % 64;
    lane.total_blocks =
        lane.full_blocks + pad_tail(lane.data + 64 * lane.full_blocks, rem, msg.size(), lane.tail);
    lane.next_block = 0;
    std::copy(detail::kInitialState.begin(), detail::kInitialState.end(), states[l]);
  };

  for (std::size_t l = 0; l < kLanes; ++l) load(l);

  const std::uint8_t* blocks[kLanes];
  for (;;) {
    bool any = false;
    for (std::size_t l = 0; l < kLanes; ++l) {
      const bool active = lanes[l].message != Lane::kIdle;
      any |= active;
      blocks[l] = active ? lanes[l].block() : kZeroBlock;
    }
    if (!any) break;
    detail::compress_x8_avx2(states, blocks);
    for (std::size_t l = 0; l < kLanes; ++l) {
      Lane& lane = lanes[l];
      if (lane.message == Lane::kIdle) continue;
      if (++lane.next_block == lane.total_blocks) {
        out[lane.message] = digest_from_state(states[l]);
        load(l);
      }
    }
  }
}

}  // namespace

Sha256::Sha256() : Sha256(active_kernel()) {}

Sha256::Sha256(Sha256Kernel kernel) : compress_(single_kernel(kernel)) {
  std::copy(detail::kInitialState.begin(), detail::kInitialState.end(), state_.begin());
}

Sha256& Sha256::update(std::span<const std::uint8_t> data) {
  total_ += data.size();
  const std::uint8_t* p = data.data();
  std::size_t len = data.size();
  if (buffered_ > 0) {
    const std::size_t take = std::min(len, 64 - buffered_);
    std::memcpy(buffer_.data() + buffered_, p, take);
    buffered_ += take;
    p += take;
    len -= take;
    if (buffered_ < 64) return *this;
    compress_(state_.data(), buffer_.data(), 1);
    buffered_ = 0;
  }
  if (len >= 64) {
    compress_(state_.data(), p, len / 64);
    p += 64 * (len / 64);
    len %= 64;
  }
  if (len > 0) {
    std::memcpy(buffer_.data(), p, len);
    buffered_ = len;
  }
  return *this;
}

Sha256& Sha256::update(std::string_view data) {
  return update(std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(data.data()),
                                              data.size()));
}

Digest Sha256::finish() {
  std::uint8_t tail[128];
  const std::size_t blocks = pad_tail(buffer_.data(), buffered_, total_, tail);
  compress_(state_.data(), tail, blocks);
  return digest_from_state(state_.data());
}

Digest sha256(std::string_view data) { return Sha256().update(data).finish(); }

Digest sha256(std::string_view data, Sha256Kernel kernel) {
  return Sha256(kernel).update(data).finish();
}

std::string sha256_hex(std::string_view data) { return to_hex(sha256(data)); }

void sha256_many(std::span<const std::string_view> messages, std::span<Digest> out) {
  sha256_many(messages, out, active_batch_kernel());
}

void sha256_many(std::span<const std::string_view> messages, std::span<Digest> out,
                 Sha256Kernel kernel) {
  if (messages.size() != out.size()) {
    throw std::invalid_argument("sha256_many: output size does not match input size");
  }
  if (kernel == Sha256Kernel::avx2_x8) {
    if (!detail::cpu_has_avx2()) throw std::invalid_argument("AVX2 kernel not available");
    many_x8(messages, out);
  } else {
    many_single(messages, out, kernel);
  }
}

}  // namespace licensechain::crypto
