#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "fanoforge/errors.hpp"
#include "fanoforge/gf2poly.hpp"
#include "fanoforge/presemifield.hpp"

using namespace fanoforge;
using algebra::Presemifield;

namespace {

// shift-and-add product mod m, independent of the clmul path
std::uint32_t slow_mulmod(std::uint32_t a, std::uint32_t b, std::uint32_t m, unsigned k) {
  std::uint32_t r = 0;
  while (b != 0) {
    if (b & 1) r ^= a;
    b >>= 1;
    a <<= 1;
    if ((a >> k) & 1) a ^= m;
  }
  return r;
}

// m of degree k with odd constant term is irreducible iff multiplication
// mod m has no zero divisors; used as the oracle for default_modulus
bool zero_divisor_free(std::uint32_t m, unsigned k) {
  const std::uint32_t n = std::uint32_t(1) << k;
  for (std::uint32_t a = 1; a < n; ++a) {
    for (std::uint32_t b = 1; b < n; ++b) {
      if (slow_mulmod(a, b, m, k) == 0) return false;
    }
  }
  return true;
}

Presemifield gf4() { return algebra::field_presemifield(2); }

}  // namespace

// ---------------------------------------------------------------------------
// polynomials over GF(2)
// ---------------------------------------------------------------------------

TEST_CASE("poly_degree") {
  CHECK(gf2::poly_degree(0) == -1);
  CHECK(gf2::poly_degree(1) == 0);
  CHECK(gf2::poly_degree(2) == 1);
  CHECK(gf2::poly_degree(0xb) == 3);
  CHECK(gf2::poly_degree(std::uint64_t(1) << 63) == 63);
}

TEST_CASE("poly_mul and poly_mod on hand-checked products") {
  CHECK(gf2::poly_mul(3, 3) == 5);     // (x+1)^2 = x^2+1
  CHECK(gf2::poly_mul(2, 3) == 6);     // x(x+1)
  CHECK(gf2::poly_mul(0, 7) == 0);
  CHECK(gf2::poly_mod(4, 7) == 3);     // x^2 = x+1 mod x^2+x+1
  CHECK(gf2::poly_mod(5, 7) == 2);     // x^2+1 = x
  CHECK(gf2::poly_mod(7, 7) == 0);
  CHECK(gf2::poly_mod(3, 7) == 3);     // already reduced
}

TEST_CASE("poly_is_irreducible against small known factorizations") {
  CHECK(gf2::poly_is_irreducible(2));      // x
  CHECK(gf2::poly_is_irreducible(3));      // x+1
  CHECK(gf2::poly_is_irreducible(7));      // x^2+x+1
  CHECK(!gf2::poly_is_irreducible(5));     // (x+1)^2
  CHECK(!gf2::poly_is_irreducible(6));     // x(x+1)
  CHECK(gf2::poly_is_irreducible(0xb));    // x^3+x+1
  CHECK(gf2::poly_is_irreducible(0xd));    // x^3+x^2+1
  CHECK(!gf2::poly_is_irreducible(0x9));   // x^3+1 = (x+1)(x^2+x+1)
  CHECK(gf2::poly_is_irreducible(0x13));   // x^4+x+1
  CHECK(!gf2::poly_is_irreducible(0x11));  // x^4+1 = (x+1)^4
  CHECK(!gf2::poly_is_irreducible(0x15));  // x^4+x^2+1 = (x^2+x+1)^2
}

TEST_CASE("default moduli are the pinned least irreducibles") {
  CHECK(gf2::default_modulus(1) == 0x3);
  CHECK(gf2::default_modulus(2) == 0x7);
  CHECK(gf2::default_modulus(3) == 0xb);
  CHECK(gf2::default_modulus(4) == 0x13);
  CHECK(gf2::default_modulus(5) == 0x25);
  CHECK(gf2::default_modulus(6) == 0x43);
  CHECK(gf2::default_modulus(7) == 0x83);
}

TEST_CASE("default modulus matches the zero-divisor leastness oracle") {
  for (unsigned k = 1; k <= 8; ++k) {
    std::uint32_t least = 0;
    for (std::uint32_t m = (std::uint32_t(1) << k) | 1; m < (std::uint32_t(1) << (k + 1));
         m += 2) {
      if (zero_divisor_free(m, k)) {
        least = m;
        break;
      }
    }
    INFO("k = ", k);
    CHECK(least != 0);
    CHECK(gf2::default_modulus(k) == least);
  }
}

TEST_CASE("gf_mul agrees with the shift-and-add oracle") {
  for (unsigned k = 1; k <= 5; ++k) {
    const std::uint32_t m = gf2::default_modulus(k);
    const std::uint32_t n = std::uint32_t(1) << k;
    for (std::uint32_t a = 0; a < n; ++a) {
      for (std::uint32_t b = 0; b < n; ++b) {
        CHECK(gf2::gf_mul(a, b, k, m) == slow_mulmod(a, b, m, k));
      }
    }
  }
}

TEST_CASE("gf_trace values and linearity") {
  // GF(4): squaring fixes the subfield, trace kills it
  CHECK(gf2::gf_trace(0, 2, 7) == 0);
  CHECK(gf2::gf_trace(1, 2, 7) == 0);
  CHECK(gf2::gf_trace(2, 2, 7) == 1);
  CHECK(gf2::gf_trace(3, 2, 7) == 1);
  // odd extension degree keeps tr(1) = 1
  CHECK(gf2::gf_trace(1, 3, 0xb) == 1);
  for (unsigned k = 2; k <= 6; ++k) {
    const std::uint32_t m = gf2::default_modulus(k);
    const std::uint32_t n = std::uint32_t(1) << k;
    std::uint32_t ones = 0;
    for (std::uint32_t a = 0; a < n; ++a) {
      const std::uint32_t ta = gf2::gf_trace(a, k, m);
      CHECK(ta <= 1);
      ones += ta;
      for (std::uint32_t b = 0; b < n; ++b) {
        CHECK(gf2::gf_trace(a ^ b, k, m) == (ta ^ gf2::gf_trace(b, k, m)));
      }
    }
    // the trace form is balanced: half the elements map to 1
    CHECK(ones == n / 2);
  }
}

// ---------------------------------------------------------------------------
// presemifield constructors
// ---------------------------------------------------------------------------

TEST_CASE("field presemifield carries verified flags and the field product") {
  const Presemifield psf = algebra::field_presemifield(3);
  CHECK(psf.k == 3);
  CHECK(psf.n == 8);
  CHECK(psf.source == "field");
  CHECK(psf.modulus == 0xb);
  CHECK(psf.verified_distributive);
  CHECK(psf.verified_no_zero_divisors);
  CHECK(psf.verified_commutative);
  for (std::uint32_t a = 0; a < 8; ++a) {
    CHECK(psf.mul(a, 1) == a);
    CHECK(psf.mul(1, a) == a);
    for (std::uint32_t b = 0; b < 8; ++b) {
      CHECK(psf.mul(a, b) == gf2::gf_mul(a, b, 3, 0xb));
    }
  }
}

TEST_CASE("field presemifield rejects bad dimensions and moduli") {
  CHECK_THROWS_AS(algebra::field_presemifield(0), InputError);
  CHECK_THROWS_AS(algebra::field_presemifield(gf2::kMaxDim + 1), InputError);
  CHECK_THROWS_AS(algebra::field_presemifield(3, 0x7), InputError);   // degree 2, not 3
  CHECK_THROWS_AS(algebra::field_presemifield(3, 0x9), InputError);   // reducible
  CHECK_THROWS_AS(algebra::field_presemifield(4, 0x15), InputError);  // reducible
  CHECK_NOTHROW(algebra::field_presemifield(3, 0xd));                 // the other irreducible
}

TEST_CASE("knuth presemifield matches its defining formula") {
  const Presemifield psf = algebra::knuth_binary_presemifield(3);
  CHECK(psf.k == 3);
  CHECK(psf.n == 8);
  CHECK(psf.source == "knuth");
  CHECK(psf.verified_distributive);
  CHECK(psf.verified_no_zero_divisors);
  CHECK(psf.verified_commutative);
  for (std::uint32_t a = 0; a < 8; ++a) {
    for (std::uint32_t b = 0; b < 8; ++b) {
      const std::uint32_t s = (gf2::gf_trace(b, 3, 0xb) ? a : 0) ^ (gf2::gf_trace(a, 3, 0xb) ? b : 0);
      const std::uint32_t want = gf2::gf_mul(a, b, 3, 0xb) ^ gf2::gf_mul(s, s, 3, 0xb);
      CHECK(psf.mul(a, b) == want);
    }
  }
  // spot values: tr(1)=1, tr(2)=0 in GF(8), so 1*2 = 2 + 2^2 = 6
  CHECK(psf.mul(1, 2) == 6);
  CHECK(psf.mul(2, 1) == 6);
  CHECK(psf.mul(1, 1) == 1);
}

TEST_CASE("knuth product differs from the plain field product") {
  const Presemifield knuth = algebra::knuth_binary_presemifield(3);
  const Presemifield field = algebra::field_presemifield(3);
  CHECK(knuth.table != field.table);
}

TEST_CASE("knuth presemifield requires odd k >= 3") {
  CHECK_THROWS_AS(algebra::knuth_binary_presemifield(1), InputError);
  CHECK_THROWS_AS(algebra::knuth_binary_presemifield(2), InputError);
  CHECK_THROWS_AS(algebra::knuth_binary_presemifield(4), InputError);
  CHECK_NOTHROW(algebra::knuth_binary_presemifield(5));
}

// ---------------------------------------------------------------------------
// axiom verification
// ---------------------------------------------------------------------------

TEST_CASE("exhaustive and decomposed verification agree on real algebras") {
  for (const unsigned k : {2u, 3u, 5u, 7u}) {
    Presemifield psf = (k % 2 == 1 && k >= 3) ? algebra::knuth_binary_presemifield(k)
                                              : algebra::field_presemifield(k);
    const algebra::AxiomReport rep = algebra::verify_axioms(psf);
    INFO("k = ", k, " source = ", psf.source);
    CHECK(rep.distributive.ok);
    CHECK(rep.no_zero_divisors.ok);
    CHECK(rep.commutative.ok);
    CHECK(rep.all());
    CHECK(rep.failure_text().empty());
  }
  // n = 128 takes the decomposed path; same table through both is checked by
  // construction above since n = 4, 8 run the triple loop
}

TEST_CASE("the all-zero table yields a zero-divisor witness at (1, 1)") {
  Presemifield psf;
  psf.k = 2;
  psf.n = 4;
  psf.table.assign(16, 0);
  psf.source = "table";
  const algebra::AxiomReport rep = algebra::verify_axioms(psf);
  CHECK(rep.distributive.ok);
  CHECK(rep.commutative.ok);
  CHECK(!rep.no_zero_divisors.ok);
  CHECK(rep.no_zero_divisors.witness.kind == algebra::AxiomWitness::Kind::zero_divisor);
  CHECK(rep.no_zero_divisors.witness.a == 1);
  CHECK(rep.no_zero_divisors.witness.b == 1);
  CHECK(rep.failure_text().find("zero-divisor a=1 b=1") != std::string::npos);
}

TEST_CASE("a commutativity defect is witnessed with the offending pair") {
  // a*b = a b^2 over GF(4): bilinear and zero-divisor-free but not commutative
  Presemifield psf;
  psf.k = 2;
  psf.n = 4;
  psf.source = "table";
  psf.table.resize(16);
  for (std::uint32_t a = 0; a < 4; ++a) {
    for (std::uint32_t b = 0; b < 4; ++b) {
      psf.table[a * 4 + b] = std::uint16_t(gf2::gf_mul(a, gf2::gf_mul(b, b, 2, 7), 2, 7));
    }
  }
  const algebra::AxiomReport rep = algebra::verify_axioms(psf);
  CHECK(rep.distributive.ok);
  CHECK(rep.no_zero_divisors.ok);
  CHECK(!rep.commutative.ok);
  const auto& w = rep.commutative.witness;
  CHECK(w.kind == algebra::AxiomWitness::Kind::commutativity);
  CHECK(psf.mul(w.a, w.b) != psf.mul(w.b, w.a));
}

TEST_CASE("every single-entry corruption of the GF(4) table breaks an axiom") {
  const Presemifield base = gf4();
  int mutations = 0;
  for (std::size_t i = 0; i < base.table.size(); ++i) {
    for (std::uint16_t v = 0; v < 4; ++v) {
      if (v == base.table[i]) continue;
      Presemifield bad = base;
      bad.table[i] = v;
      bad.verified_distributive = bad.verified_no_zero_divisors = bad.verified_commutative = false;
      const algebra::AxiomReport rep = algebra::verify_axioms(bad);
      INFO("entry ", i, " set to ", v);
      CHECK(!rep.all());
      CHECK(!rep.failure_text().empty());
      ++mutations;
    }
  }
  CHECK(mutations == 48);
}

// ---------------------------------------------------------------------------
// table serialization
// ---------------------------------------------------------------------------

TEST_CASE("write_table round-trips byte-exactly through the parser") {
  for (const unsigned k : {1u, 2u, 3u}) {
    const Presemifield psf = algebra::field_presemifield(k);
    std::ostringstream first;
    algebra::write_table(psf, first);
    std::istringstream in(first.str());
    const Presemifield back = algebra::presemifield_from_table(in);
    CHECK(back.k == psf.k);
    CHECK(back.n == psf.n);
    CHECK(back.table == psf.table);
    CHECK(back.source == "table");
    CHECK(back.verified_distributive);
    CHECK(back.verified_no_zero_divisors);
    CHECK(back.verified_commutative);
    std::ostringstream second;
    algebra::write_table(back, second);
    CHECK(first.str() == second.str());
  }
}

TEST_CASE("table parser rejects malformed input") {
  const auto parse = [](const std::string& s) {
    std::istringstream in(s);
    return algebra::presemifield_from_table(in);
  };
  CHECK_THROWS_AS(parse(""), InputError);
  CHECK_THROWS_AS(parse("semigroup k=1 n=2\n0 0\n0 1\n"), InputError);
  CHECK_THROWS_AS(parse("semifield k=1 n=3\n0 0\n0 1\n"), InputError);  // n != 2^k
  CHECK_THROWS_AS(parse("semifield k=1 n=2\n0 0\n0 2\n"), InputError);  // entry >= n
  CHECK_THROWS_AS(parse("semifield k=1 n=2\n0 0\n"), InputError);       // truncated
  CHECK_THROWS_AS(parse("semifield k=0 n=1\n0\n"), InputError);
  CHECK_NOTHROW(parse("semifield k=1 n=2\n0 0\n0 1\n"));
}

TEST_CASE("table parser verifies axioms and reports the witness") {
  // GF(2) table with 1*1 = 0: a zero divisor
  std::istringstream in("semifield k=1 n=2\n0 0\n0 0\n");
  CHECK_THROWS_WITH_AS(algebra::presemifield_from_table(in),
                       doctest::Contains("zero-divisor a=1 b=1"), VerificationError);
}

// ---------------------------------------------------------------------------
// left-multiplication solves
// ---------------------------------------------------------------------------

TEST_CASE("solve_left inverts every left multiplication") {
  for (const unsigned k : {1u, 2u, 3u, 4u}) {
    const Presemifield psf = algebra::field_presemifield(k);
    const algebra::SolveTable solve(psf);
    for (std::uint32_t m = 1; m < psf.n; ++m) {
      for (std::uint32_t x = 0; x < psf.n; ++x) {
        CHECK(solve.solve(m, psf.mul(m, x)) == x);
      }
    }
  }
  const Presemifield knuth = algebra::knuth_binary_presemifield(3);
  const algebra::SolveTable solve(knuth);
  for (std::uint32_t m = 1; m < 8; ++m) {
    for (std::uint32_t x = 0; x < 8; ++x) {
      CHECK(solve.solve(m, knuth.mul(m, x)) == x);
    }
  }
}

TEST_CASE("solve_left on GF(4) spot values") {
  const algebra::SolveTable solve(gf4());
  CHECK(solve.solve(2, 1) == 3);  // x * (x+1) = 1 mod x^2+x+1
  CHECK(solve.solve(2, 0) == 0);
  CHECK(solve.solve(3, 2) == 3);  // (x+1)(x+1) = x
}

TEST_CASE("solve_left refuses the zero slope") {
  const algebra::SolveTable solve(gf4());
  CHECK_THROWS_AS(solve.solve(0, 1), InternalError);
}
