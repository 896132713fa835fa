#include "fanoforge/gf2poly.hpp"

#include <bit>

#include "fanoforge/errors.hpp"
#include "fanoforge/kernels.hpp"

namespace fanoforge::gf2 {

int poly_degree(std::uint64_t p) {
  if (p == 0) return -1;
  return 63 - std::countl_zero(p);
}

std::uint64_t poly_mul(std::uint64_t a, std::uint64_t b) {
  return kernels::active().clmul64(a, b).lo;
}

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t m) {
  if (m == 0) throw InternalError("poly_mod: zero modulus");
  const int dm = poly_degree(m);
  int da = poly_degree(a);
  while (da >= dm) {
    a ^= m << (da - dm);
    da = poly_degree(a);
  }
  return a;
}

bool poly_is_irreducible(std::uint64_t m) {
  const int d = poly_degree(m);
  if (d < 1) return false;
  const std::uint64_t limit = std::uint64_t(1) << (unsigned(d) / 2 + 1);
  for (std::uint64_t q = 2; q < limit; ++q) {
    if (poly_mod(m, q) == 0) return false;
  }
  return true;
}

std::uint32_t default_modulus(unsigned k) {
  if (k < 1 || k > kMaxDim) throw InputError("default_modulus: k out of range");
  // odd candidates only: x never divides an irreducible of degree >= 1
  // except x itself, and x+1 is the intended k=1 pick
  for (std::uint32_t c = (std::uint32_t(1) << k) | 1; c < (std::uint32_t(1) << (k + 1)); c += 2) {
    if (poly_is_irreducible(c)) return c;
  }
  throw InternalError("default_modulus: no irreducible found");
}

std::uint32_t gf_mul(std::uint32_t a, std::uint32_t b, unsigned, std::uint32_t modulus) {
  return std::uint32_t(poly_mod(poly_mul(a, b), modulus));
}

std::uint32_t gf_trace(std::uint32_t a, unsigned k, std::uint32_t modulus) {
  std::uint32_t acc = a;
  std::uint32_t t = a;
  for (unsigned i = 1; i < k; ++i) {
    t = gf_mul(t, t, k, modulus);
    acc ^= t;
  }
  if (acc > 1) throw InternalError("gf_trace: value outside GF(2); modulus is not irreducible");
  return acc;
}

}  // namespace fanoforge::gf2
