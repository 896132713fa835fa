#pragma once

#include <cstdint>

namespace fanoforge::gf2 {

// Table-backed algebras stay desk-sized; k beyond this is refused as input.
inline constexpr unsigned kMaxDim = 12;

// Polynomials over GF(2) as bitmasks, bit i = coefficient of x^i.

// degree of p, -1 for the zero polynomial
int poly_degree(std::uint64_t p);

// product in GF(2)[x], no reduction; inputs must fit the 64-bit result
std::uint64_t poly_mul(std::uint64_t a, std::uint64_t b);

// remainder of a modulo m (m != 0)
std::uint64_t poly_mod(std::uint64_t a, std::uint64_t m);

// trial division by every polynomial of degree 1..deg(m)/2
bool poly_is_irreducible(std::uint64_t m);

// numerically least irreducible polynomial of degree k with nonzero
// constant term; for every k this is also the numerically least irreducible
// of degree k except k=1, where it picks x+1 over x
std::uint32_t default_modulus(unsigned k);

// product in GF(2^k) under a degree-k irreducible modulus (not validated here;
// field construction validates once)
std::uint32_t gf_mul(std::uint32_t a, std::uint32_t b, unsigned k, std::uint32_t modulus);

// absolute trace a + a^2 + a^4 + ... + a^(2^(k-1)), always 0 or 1
std::uint32_t gf_trace(std::uint32_t a, unsigned k, std::uint32_t modulus);

}  // namespace fanoforge::gf2
