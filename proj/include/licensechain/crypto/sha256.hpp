// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace licensechain::crypto {

using Digest = std::array<std::uint8_t, 32>;

/// SHA-256 compression back ends. `scalar` is the reference and always
/// available; the others are chosen at runtime when the CPU supports them.
///   shani   - x86 SHA extensions, one message at a time
///   avx2_x8 - eight independent messages per pass (batch hashing only)
enum class Sha256Kernel { scalar, shani, avx2_x8 };

std::string_view to_string(Sha256Kernel kernel) noexcept;

/// Kernels runnable on this machine, scalar first.
std::vector<Sha256Kernel> available_kernels();

/// Kernel used for single messages. Honors LICENSECHAIN_SHA256_KERNEL
/// (scalar|shani) when the requested kernel is available.
Sha256Kernel active_kernel();

/// Kernel used by sha256_many. Honors LICENSECHAIN_SHA256_KERNEL.
Sha256Kernel active_batch_kernel();

/// Incremental FIPS 180-4 SHA-256.
class Sha256 {
 public:
  Sha256();
  /// `kernel` must be a single-message kernel (scalar or shani).
  explicit Sha256(Sha256Kernel kernel);

  Sha256& update(std::span<const std::uint8_t> data);
  Sha256& update(std::string_view data);
  Digest finish();

 private:
  using CompressFn = void (*)(std::uint32_t*, const std::uint8_t*, std::size_t);

  CompressFn compress_;
  std::array<std::uint32_t, 8> state_;
  std::array<std::uint8_t, 64> buffer_{};
  std::size_t buffered_ = 0;
  std::uint64_t total_ = 0;
};

Digest sha256(std::string_view data);
Digest sha256(std::string_view data, Sha256Kernel kernel);
std::string sha256_hex(std::string_view data);

/// Hashes every message; out[i] receives the digest of messages[i].
/// out.size() must equal messages.size().
void sha256_many(std::span<const std::string_view> messages, std::span<Digest> out);
void sha256_many(std::span<const std::string_view> messages, std::span<Digest> out,
                 Sha256Kernel kernel);

}  // namespace licensechain::crypto
