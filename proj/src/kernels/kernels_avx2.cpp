// AVX2 + PCLMUL variants. This translation unit is compiled with
// -mavx2 -mpclmul on x86-64 only; runtime CPU checks gate the dispatch.

#include "fanoforge/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <bit>

namespace fanoforge::kernels {
namespace {

// per-byte popcount via nibble lookup
inline __m256i popcount_epi8(__m256i v) {
  const __m256i lut =
      _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                       0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, low);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low);
  return _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
}

inline std::uint64_t hsum_epi64(__m256i v) {
  return std::uint64_t(_mm256_extract_epi64(v, 0)) + std::uint64_t(_mm256_extract_epi64(v, 1)) +
         std::uint64_t(_mm256_extract_epi64(v, 2)) + std::uint64_t(_mm256_extract_epi64(v, 3));
}

std::uint64_t popcount_avx2(const std::uint64_t* a, std::size_t nwords) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= nwords; i += 4) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(popcount_epi8(v), _mm256_setzero_si256()));
  }
  std::uint64_t total = hsum_epi64(acc);
  for (; i < nwords; ++i) total += std::uint64_t(std::popcount(a[i]));
  return total;
}

std::uint64_t and_popcount_avx2(const std::uint64_t* a, const std::uint64_t* b,
                                std::size_t nwords) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= nwords; i += 4) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    const __m256i v = _mm256_and_si256(va, vb);
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(popcount_epi8(v), _mm256_setzero_si256()));
  }
  std::uint64_t total = hsum_epi64(acc);
  for (; i < nwords; ++i) total += std::uint64_t(std::popcount(a[i] & b[i]));
  return total;
}

std::int64_t and_first_avx2(const std::uint64_t* a, const std::uint64_t* b,
                            std::size_t nwords) {
  std::size_t i = 0;
  for (; i + 4 <= nwords; i += 4) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    const __m256i v = _mm256_and_si256(va, vb);
    if (!_mm256_testz_si256(v, v)) {
      for (std::size_t j = i; j < i + 4; ++j) {
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

std::int64_t mismatch_xor_u16_avx2(const std::uint16_t* a, const std::uint16_t* b,
                                   std::uint16_t key, std::size_t n) {
  const __m256i vkey = _mm256_set1_epi16(short(key));
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    const __m256i x = _mm256_xor_si256(va, vb);
    const __m256i eq = _mm256_cmpeq_epi16(x, vkey);
    const std::uint32_t mask = std::uint32_t(_mm256_movemask_epi8(eq));
    if (mask != 0xffffffffu) {
      // two mask bits per u16 lane; the first zero bit locates the mismatch
      return std::int64_t(i) + std::countr_zero(~mask) / 2;
    }
  }
  for (; i < n; ++i) {
    if (std::uint16_t(a[i] ^ b[i]) != key) return std::int64_t(i);
  }
  return -1;
}

Clmul128 clmul64_pclmul(std::uint64_t a, std::uint64_t b) {
  const __m128i va = _mm_set_epi64x(0, std::int64_t(a));
  const __m128i vb = _mm_set_epi64x(0, std::int64_t(b));
  const __m128i r = _mm_clmulepi64_si128(va, vb, 0x00);
  return {std::uint64_t(_mm_cvtsi128_si64(r)), std::uint64_t(_mm_extract_epi64(r, 1))};
}

}  // namespace

const Kernels* avx2() {
  static const Kernels* inst = []() -> const Kernels* {
    if (!__builtin_cpu_supports("avx2")) return nullptr;
    static const Kernels k = {
        "avx2",
        popcount_avx2,
        and_popcount_avx2,
        and_first_avx2,
        mismatch_xor_u16_avx2,
        __builtin_cpu_supports("pclmul") ? clmul64_pclmul : scalar().clmul64,
    };
    return &k;
  }();
  return inst;
}

}  // namespace fanoforge::kernels

#else

namespace fanoforge::kernels {
const Kernels* avx2() { return nullptr; }
}  // namespace fanoforge::kernels

#endif
