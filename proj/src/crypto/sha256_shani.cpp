// SPDX-License-Identifier: Apache-2.0
// SHA-256 compression using the x86 SHA extensions (SHA-NI).
// Built with -msha -msse4.1 -mssse3; only called after cpu_has_shani().

#include "sha256_kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define LICENSECHAIN_HAVE_SHANI 1
#endif

namespace licensechain::crypto::detail {

#if defined(LICENSECHAIN_HAVE_SHANI)

void compress_shani(std::uint32_t* state, const std::uint8_t* blocks, std::size_t nblocks) {
  const __m128i byte_swap = _mm_set_epi64x(0x0c0d0e0f08090a0bULL, 0x0405060700010203ULL);

  // The SHA instructions want the state split as ABEF / CDGH.
  __m128i tmp = _mm_loadu_si128(reinterpret_cast<const __m128i*>(state));
  __m128i cdgh = _mm_loadu_si128(reinterpret_cast<const __m128i*>(state + 4));
  tmp = _mm_shuffle_epi32(tmp, 0xB1);
  cdgh = _mm_shuffle_epi32(cdgh, 0x1B);
  __m128i abef = _mm_alignr_epi8(tmp, cdgh, 8);
  cdgh = _mm_blend_epi16(cdgh, tmp, 0xF0);

  for (; nblocks > 0; --nblocks, blocks += 64) {
    const __m128i abef_save = abef;
    const __m128i cdgh_save = cdgh;

    // msg[i % 4] holds schedule words 4i..4i+3.
    __m128i msg[4];
    for (int group = 0; group < 16; ++group) {
      __m128i& w = msg[group & 3];
      if (group < 4) {
        w = _mm_shuffle_epi8(
            _mm_loadu_si128(reinterpret_cast<const __m128i*>(blocks + 16 * group)), byte_swap);
      } else {
        const __m128i& prev1 = msg[(group - 1) & 3];
        const __m128i& prev2 = msg[(group - 2) & 3];
        const __m128i& prev3 = msg[(group - 3) & 3];
        w = _mm_sha256msg1_epu32(w, prev3);
        w = _mm_add_epi32(w, _mm_alignr_epi8(prev1, prev2, 4));
        w = _mm_sha256msg2_epu32(w, prev1);
      }
      __m128i k = _mm_add_epi32(
          w, _mm_loadu_si128(reinterpret_cast<const __m128i*>(&kRoundConstants[4 * group])));
      cdgh = _mm_sha256rnds2_epu32(cdgh, abef, k);
      k = _mm_shuffle_epi32(k, 0x0E);
      abef = _mm_sha256rnds2_epu32(abef, cdgh, k);
    }

    abef = _mm_add_epi32(abef, abef_save);
    cdgh = _mm_add_epi32(cdgh, cdgh_save);
  }

  tmp = _mm_shuffle_epi32(abef, 0x1B);
  cdgh = _mm_shuffle_epi32(cdgh, 0xB1);
  abef = _mm_blend_epi16(tmp, cdgh, 0xF0);
  cdgh = _mm_alignr_epi8(cdgh, tmp, 8);
  _mm_storeu_si128(reinterpret_cast<__m128i*>(state), abef);
  _mm_storeu_si128(reinterpret_cast<__m128i*>(state + 4), cdgh);
}

#else

void compress_shani(std::uint32_t* state, const std::uint8_t* blocks, std::size_t nblocks) {
  compress_scalar(state, blocks, nblocks);
}

#endif

}  // namespace licensechain::crypto::detail
