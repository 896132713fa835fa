// NEON variants for aarch64. Kept deliberately plain: baseline NEON only,
// with the carry-less multiply routed to PMULL when the toolchain enables
// the crypto extension and to the scalar fallback otherwise.

#include "fanoforge/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

#include <bit>

namespace fanoforge::kernels {
namespace {

inline std::uint64_t hadd_u64(uint64x2_t v) {
  return vgetq_lane_u64(v, 0) + vgetq_lane_u64(v, 1);
}

inline uint64x2_t popcount_block(uint8x16_t bytes) {
  return vpaddlq_u32(vpaddlq_u16(vpaddlq_u8(vcntq_u8(bytes))));
}

std::uint64_t popcount_neon(const std::uint64_t* a, std::size_t nwords) {
  uint64x2_t acc = vdupq_n_u64(0);
  std::size_t i = 0;
  for (; i + 2 <= nwords; i += 2) {
    const uint8x16_t v = vreinterpretq_u8_u64(vld1q_u64(a + i));
    acc = vaddq_u64(acc, popcount_block(v));
  }
  std::uint64_t total = hadd_u64(acc);
  for (; i < nwords; ++i) total += std::uint64_t(std::popcount(a[i]));
  return total;
}

std::uint64_t and_popcount_neon(const std::uint64_t* a, const std::uint64_t* b,
                                std::size_t nwords) {
  uint64x2_t acc = vdupq_n_u64(0);
  std::size_t i = 0;
  for (; i + 2 <= nwords; i += 2) {
    const uint64x2_t v = vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i));
    acc = vaddq_u64(acc, popcount_block(vreinterpretq_u8_u64(v)));
  }
  std::uint64_t total = hadd_u64(acc);
  for (; i < nwords; ++i) total += std::uint64_t(std::popcount(a[i] & b[i]));
  return total;
}

std::int64_t and_first_neon(const std::uint64_t* a, const std::uint64_t* b,
                            std::size_t nwords) {
  std::size_t i = 0;
  for (; i + 2 <= nwords; i += 2) {
    const uint64x2_t v = vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i));
    if (vmaxvq_u32(vreinterpretq_u32_u64(v)) != 0) {
      for (std::size_t j = i; j < i + 2; ++j) {
        const std::uint64_t w = a[j] & b[j];
        if (w != 0) return std::int64_t(j) * 64 + std::countr_zero(w);
      }
    }
  }
  for (; i < nwords; ++i) {
    const std::uint64_t w = a[i] & b[i];
    if (w != 0) return std::int64_t(i) * 64 + std::countr_zero(w);
  }
  return -1;
}

std::int64_t mismatch_xor_u16_neon(const std::uint16_t* a, const std::uint16_t* b,
                                   std::uint16_t key, std::size_t n) {
  const uint16x8_t vkey = vdupq_n_u16(key);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const uint16x8_t x = veorq_u16(vld1q_u16(a + i), vld1q_u16(b + i));
    const uint16x8_t eq = vceqq_u16(x, vkey);
    if (vminvq_u16(eq) != 0xffff) {
      for (std::size_t j = i; j < i + 8; ++j) {
        if (std::uint16_t(a[j] ^ b[j]) != key) return std::int64_t(j);
      }
    }
  }
  for (; i < n; ++i) {
    if (std::uint16_t(a[i] ^ b[i]) != key) return std::int64_t(i);
  }
  return -1;
}

#if defined(__ARM_FEATURE_CRYPTO)
Clmul128 clmul64_pmull(std::uint64_t a, std::uint64_t b) {
  const poly128_t r = vmull_p64(poly64_t(a), poly64_t(b));
  return {std::uint64_t(r), std::uint64_t(r >> 64)};
}
#endif

}  // namespace

const Kernels* neon() {
  static const Kernels k = {
      "neon",
      popcount_neon,
      and_popcount_neon,
      and_first_neon,
      mismatch_xor_u16_neon,
#if defined(__ARM_FEATURE_CRYPTO)
      clmul64_pmull,
#else
      scalar().clmul64,
#endif
  };
  return &k;
}

}  // namespace fanoforge::kernels

#else

namespace fanoforge::kernels {
const Kernels* neon() { return nullptr; }
}  // namespace fanoforge::kernels

#endif
