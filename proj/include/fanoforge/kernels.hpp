#pragma once

#include <cstddef>
#include <cstdint>

// Data-parallel primitives behind the verification and census inner loops.
// Each entry point has a scalar reference implementation plus SIMD variants
// (AVX2 on x86-64, NEON on aarch64) selected once at startup. Variants are
// interchangeable; the equivalence suite pins them all to the scalar results.
namespace fanoforge::kernels {

// 128-bit carry-less product, low and high words.
struct Clmul128 {
  std::uint64_t lo;
  std::uint64_t hi;
};

struct Kernels {
  const char* name;

  // population count over a word array
  std::uint64_t (*popcount)(const std::uint64_t* a, std::size_t nwords);

  // population count of (a & b)
  std::uint64_t (*and_popcount)(const std::uint64_t* a, const std::uint64_t* b,
                                std::size_t nwords);

  // bit index of the first set bit of (a & b), or -1 when the intersection is empty
  std::int64_t (*and_first)(const std::uint64_t* a, const std::uint64_t* b,
                            std::size_t nwords);

  // first index i with (a[i] ^ b[i]) != key, or -1 when every entry matches
  std::int64_t (*mismatch_xor_u16)(const std::uint16_t* a, const std::uint16_t* b,
                                   std::uint16_t key, std::size_t n);

  // carry-less product of two 64-bit polynomials over GF(2)
  Clmul128 (*clmul64)(std::uint64_t a, std::uint64_t b);
};

const Kernels& scalar();

// nullptr when the CPU (or this build's target architecture) lacks the ISA
const Kernels* avx2();
const Kernels* neon();

// Best available variant, chosen once; FANOFORGE_KERNELS=scalar|avx2|neon
// forces a specific one (ignored when that variant is unavailable).
const Kernels& active();

}  // namespace fanoforge::kernels
