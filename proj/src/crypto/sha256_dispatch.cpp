// SPDX-License-Identifier: Apache-2.0
#include <cstdlib>
#include <string_view>

#include "licensechain/crypto/sha256.hpp"
#include "sha256_kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <cpuid.h>
#define LICENSECHAIN_X86 1
#endif

namespace licensechain::crypto {

namespace detail {

bool cpu_has_shani() noexcept {
#if defined(LICENSECHAIN_X86)
  unsigned eax = 0, ebx = 0, ecx = 0, edx = 0;
  if (!__get_cpuid(1, &eax, &ebx, &ecx, &edx)) return false;
  const bool ssse3 = (ecx >> 9) & 1u;
  const bool sse41 = (ecx >> 19) & 1u;
  if (!__get_cpuid_count(7, 0, &eax, &ebx, &ecx, &edx)) return false;
  const bool sha = (ebx >> 29) & 1u;
  return ssse3 && sse41 && sha;
#else
  return false;
#endif
}

bool cpu_has_avx2() noexcept {
#if defined(LICENSECHAIN_X86)
  // __builtin_cpu_supports also accounts for OS-enabled YMM state.
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

}  // namespace detail

std::string_view to_string(Sha256Kernel kernel) noexcept {
  switch (kernel) {
    case Sha256Kernel::scalar: return "scalar";
    case Sha256Kernel::shani: return "shani";
    case Sha256Kernel::avx2_x8: return "avx2_x8";
  }
  return "unknown";
}

std::vector<Sha256Kernel> available_kernels() {
  std::vector<Sha256Kernel> kernels{Sha256Kernel::scalar};
  if (detail::cpu_has_shani()) kernels.push_back(Sha256Kernel::shani);
  if (detail::cpu_has_avx2()) kernels.push_back(Sha256Kernel::avx2_x8);
  return kernels;
}

namespace {

bool available(Sha256Kernel kernel) {
  switch (kernel) {
    case Sha256Kernel::scalar: return true;
    case Sha256Kernel::shani: return detail::cpu_has_shani();
    case Sha256Kernel::avx2_x8: return detail::cpu_has_avx2();
  }
  return false;
}

const char* requested_kernel() { return std::getenv("LICENSECHAIN_SHA256_KERNEL"); }

Sha256Kernel pick_single() {
  if (const char* req = requested_kernel()) {
    const std::string_view name{req};
    if (name == "scalar") return Sha256Kernel::scalar;
    if (name == "shani" && available(Sha256Kernel::shani)) return Sha256Kernel::shani;
  }
  return available(Sha256Kernel::shani) ? Sha256Kernel::shani : Sha256Kernel::scalar;
}

Sha256Kernel pick_batch() {
  if (const char* req = requested_kernel()) {
    const std::string_view name{req};
    for (auto k : {Sha256Kernel::scalar, Sha256Kernel::shani, Sha256Kernel::avx2_x8}) {
      if (name == to_string(k) && available(k)) return k;
    }
  }
  // SHA-NI on one message outruns eight lanes of AVX2 arithmetic.
  if (available(Sha256Kernel::shani)) return Sha256Kernel::shani;
  if (available(Sha256Kernel::avx2_x8)) return Sha256Kernel::avx2_x8;
  return Sha256Kernel::scalar;
}

}  // namespace

Sha256Kernel active_kernel() {
  static const Sha256Kernel kernel = pick_single();
  return kernel;
}

Sha256Kernel active_batch_kernel() {
  static const Sha256Kernel kernel = pick_batch();
  return kernel;
}

}  // namespace licensechain::crypto
