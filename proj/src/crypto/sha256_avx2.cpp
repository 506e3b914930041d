// SPDX-License-Identifier: Apache-2.0
// Eight-lane SHA-256 compression: lane i of every __m256i belongs to message i.
// Built with -mavx2; only called after cpu_has_avx2().

#include "sha256_kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define LICENSECHAIN_HAVE_AVX2 1
#endif

namespace licensechain::crypto::detail {

#if defined(LICENSECHAIN_HAVE_AVX2)

namespace {

inline __m256i rotr(__m256i x, int n) {
  return _mm256_or_si256(_mm256_srli_epi32(x, n), _mm256_slli_epi32(x, 32 - n));
}

inline std::uint32_t load_be32(const std::uint8_t* p) {
  return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) |
         (std::uint32_t{p[2]} << 8) | std::uint32_t{p[3]};
}

inline __m256i gather_word(const std::uint8_t* const* blocks, int t) {
  const int off = 4 * t;
  return _mm256_setr_epi32(
      static_cast<int>(load_be32(blocks[0] + off)), static_cast<int>(load_be32(blocks[1] + off)),
      static_cast<int>(load_be32(blocks[2] + off)), static_cast<int>(load_be32(blocks[3] + off)),
      static_cast<int>(load_be32(blocks[4] + off)), static_cast<int>(load_be32(blocks[5] + off)),
      static_cast<int>(load_be32(blocks[6] + off)), static_cast<int>(load_be32(blocks[7] + off)));
}

inline __m256i gather_state(const std::uint32_t (*states)[8], int word) {
  return _mm256_setr_epi32(
      static_cast<int>(states[0][word]), static_cast<int>(states[1][word]),
      static_cast<int>(states[2][word]), static_cast<int>(states[3][word]),
      static_cast<int>(states[4][word]), static_cast<int>(states[5][word]),
      static_cast<int>(states[6][word]), static_cast<int>(states[7][word]));
}

inline void scatter_state(std::uint32_t (*states)[8], int word, __m256i v) {
  alignas(32) std::uint32_t lanes[8];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
  for (int lane = 0; lane < 8; ++lane) states[lane][word] = lanes[lane];
}

}  // namespace

void compress_x8_avx2(std::uint32_t (*states)[8], const std::uint8_t* const* blocks) {
  __m256i w[64];
  for (int t = 0; t < 16; ++t) w[t] = gather_word(blocks, t);
  for (int t = 16; t < 64; ++t) {
    const __m256i x15 = w[t - 15];
    const __m256i x2 = w[t - 2];
    const __m256i s0 =
        _mm256_xor_si256(_mm256_xor_si256(rotr(x15, 7), rotr(x15, 18)), _mm256_srli_epi32(x15, 3));
    const __m256i s1 =
        _mm256_xor_si256(_mm256_xor_si256(rotr(x2, 17), rotr(x2, 19)), _mm256_srli_epi32(x2, 10));
    w[t] = _mm256_add_epi32(_mm256_add_epi32(w[t - 16], s0), _mm256_add_epi32(w[t - 7], s1));
  }

  __m256i v[8];
  for (int i = 0; i < 8; ++i) v[i] = gather_state(states, i);
  __m256i a = v[0], b = v[1], c = v[2], d = v[3], e = v[4], f = v[5], g = v[6], h = v[7];

  for (int t = 0; t < 64; ++t) {
    const __m256i s1 = _mm256_xor_si256(_mm256_xor_si256(rotr(e, 6), rotr(e, 11)), rotr(e, 25));
    const __m256i ch = _mm256_xor_si256(_mm256_and_si256(e, f), _mm256_andnot_si256(e, g));
    const __m256i k = _mm256_set1_epi32(static_cast<int>(kRoundConstants[t]));
    const __m256i t1 = _mm256_add_epi32(_mm256_add_epi32(_mm256_add_epi32(h, s1), ch),
                                        _mm256_add_epi32(k, w[t]));
    const __m256i s0 = _mm256_xor_si256(_mm256_xor_si256(rotr(a, 2), rotr(a, 13)), rotr(a, 22));
    const __m256i maj = _mm256_xor_si256(
        _mm256_xor_si256(_mm256_and_si256(a, b), _mm256_and_si256(a, c)), _mm256_and_si256(b, c));
    const __m256i t2 = _mm256_add_epi32(s0, maj);
    h = g;
    g = f;
    f = e;
    e = _mm256_add_epi32(d, t1);
    d = c;
    c = b;
    b = a;
    a = _mm256_add_epi32(t1, t2);
  }

  const __m256i out[8] = {a, b, c, d, e, f, g, h};
  for (int i = 0; i < 8; ++i) scatter_state(states, i, _mm256_add_epi32(v[i], out[i]));
}

#else

void compress_x8_avx2(std::uint32_t (*states)[8], const std::uint8_t* const* blocks) {
  for (std::size_t lane = 0; lane < kLanes; ++lane) compress_scalar(states[lane], blocks[lane], 1);
}

#endif

}  // namespace licensechain::crypto::detail
