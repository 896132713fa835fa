#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace fanoforge::algebra {

using FieldElem = std::uint32_t;

// One concrete counterexample to an axiom, in a fixed scan order.
struct AxiomWitness {
  enum class Kind : std::uint8_t {
    none,
    left_distributivity,   // a*(b+c) != a*b + a*c
    right_distributivity,  // (a+b)*c != a*c + b*c
    zero_divisor,          // a*b == 0 with a, b nonzero
    commutativity,         // a*b != b*a
  };
  Kind kind = Kind::none;
  FieldElem a = 0, b = 0, c = 0;

  std::string text() const;
};

struct AxiomCheck {
  bool ok = false;
  AxiomWitness witness;
};

struct AxiomReport {
  AxiomCheck distributive;
  AxiomCheck no_zero_divisors;
  AxiomCheck commutative;

  bool all() const { return distributive.ok && no_zero_divisors.ok && commutative.ok; }
  // every failed axiom with its witness, one clause per failure
  std::string failure_text() const;
};

// Commutative presemifield of order n = 2^k: a GF(2)-bilinear multiplication
// with no zero divisors on the vectors of GF(2)^k. Addition is always bitwise
// XOR; there need not be a multiplicative identity. The verified_* flags
// record which axioms this instance has passed; constructors in this module
// never hand out unverified algebras, but tests may build the struct bare.
struct Presemifield {
  unsigned k = 0;
  std::uint32_t n = 0;              // 2^k
  std::vector<std::uint16_t> table; // row-major n*n, table[a*n+b] = a*b
  std::string source;               // "field" | "knuth" | "table"
  std::uint32_t modulus = 0;        // reduction polynomial when field-backed, else 0
  bool verified_distributive = false;
  bool verified_no_zero_divisors = false;
  bool verified_commutative = false;

  FieldElem mul(FieldElem a, FieldElem b) const { return table[std::size_t(a) * n + b]; }
  const std::uint16_t* row(FieldElem a) const { return table.data() + std::size_t(a) * n; }
};

// GF(2^k) itself as a presemifield; modulus 0 picks the per-k default.
Presemifield field_presemifield(unsigned k, std::uint32_t modulus = 0);

// Knuth's commutative binary presemifield x*y = xy + (x Tr(y) + y Tr(x))^2,
// defined for odd k >= 3. The axiom verifier, not the formula, is what
// certifies the result: construction fails if any axiom check fails.
Presemifield knuth_binary_presemifield(unsigned k, std::uint32_t modulus = 0);

// Parse "semifield k=<int> n=<int>" plus n rows of n entries, then verify all
// three axioms; any violation is reported with its witnesses.
Presemifield presemifield_from_table(std::istream& in);
Presemifield presemifield_from_table_file(const std::string& path);

// Canonical writer; round-trips byte-exactly through the parser.
void write_table(const Presemifield& psf, std::ostream& out);

// Checks both distributive laws, absence of zero divisors, and commutativity.
// Exhaustive over all triples for n <= 64; above that, distributivity is
// checked through the bilinear generator decomposition and zero divisors
// through the rank of every left-multiplication matrix (equivalent, exact).
AxiomReport verify_axioms(const Presemifield& psf);

// Inverse of x -> m*x for every nonzero m; constant-time solves for line
// intersections. Requires a presemifield without zero divisors.
class SolveTable {
public:
  explicit SolveTable(const Presemifield& psf);
  // the unique x with m*x = c; m must be nonzero
  FieldElem solve(FieldElem m, FieldElem c) const;

private:
  std::uint32_t n_ = 0;
  std::vector<std::uint16_t> inv_;
};

}  // namespace fanoforge::algebra
