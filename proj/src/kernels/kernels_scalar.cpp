#include "fanoforge/kernels.hpp"

#include <bit>

namespace fanoforge::kernels {
namespace {

std::uint64_t popcount_scalar(const std::uint64_t* a, std::size_t nwords) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < nwords; ++i) total += std::uint64_t(std::popcount(a[i]));
  return total;
}

std::uint64_t and_popcount_scalar(const std::uint64_t* a, const std::uint64_t* b,
                                  std::size_t nwords) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < nwords; ++i) total += std::uint64_t(std::popcount(a[i] & b[i]));
  return total;
}

std::int64_t and_first_scalar(const std::uint64_t* a, const std::uint64_t* b,
                              std::size_t nwords) {
  for (std::size_t i = 0; i < nwords; ++i) {
    const std::uint64_t w = a[i] & b[i];
    if (w != 0) return std::int64_t(i) * 64 + std::countr_zero(w);
  }
  return -1;
}

std::int64_t mismatch_xor_u16_scalar(const std::uint16_t* a, const std::uint16_t* b,
                                     std::uint16_t key, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (std::uint16_t(a[i] ^ b[i]) != key) return std::int64_t(i);
  }
  return -1;
}

Clmul128 clmul64_scalar(std::uint64_t a, std::uint64_t b) {
  std::uint64_t lo = 0, hi = 0;
  while (b != 0) {
    const int s = std::countr_zero(b);
    lo ^= a << s;
    if (s != 0) hi ^= a >> (64 - s);
    b &= b - 1;
  }
  return {lo, hi};
}

}  // namespace

const Kernels& scalar() {
  static constexpr Kernels k = {
      "scalar",         popcount_scalar,         and_popcount_scalar,
      and_first_scalar, mismatch_xor_u16_scalar, clmul64_scalar,
  };
  return k;
}

}  // namespace fanoforge::kernels
