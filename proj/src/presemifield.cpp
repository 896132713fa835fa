#include "fanoforge/presemifield.hpp"

#include <bit>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "fanoforge/errors.hpp"
#include "fanoforge/gf2poly.hpp"
#include "fanoforge/kernels.hpp"

namespace fanoforge::algebra {

namespace {

std::string kind_name(AxiomWitness::Kind k) {
  switch (k) {
    case AxiomWitness::Kind::left_distributivity: return "left-distributivity";
    case AxiomWitness::Kind::right_distributivity: return "right-distributivity";
    case AxiomWitness::Kind::zero_divisor: return "zero-divisor";
    case AxiomWitness::Kind::commutativity: return "commutativity";
    case AxiomWitness::Kind::none: break;
  }
  return "none";
}

std::uint32_t validate_modulus(unsigned k, std::uint32_t modulus) {
  if (k < 1 || k > gf2::kMaxDim) {
    throw InputError("presemifield: k must be in [1, " + std::to_string(gf2::kMaxDim) + "]");
  }
  if (modulus == 0) return gf2::default_modulus(k);
  if (gf2::poly_degree(modulus) != int(k)) {
    throw InputError("presemifield: modulus degree must equal k");
  }
  if (!gf2::poly_is_irreducible(modulus)) {
    throw InputError("presemifield: modulus is reducible");
  }
  return modulus;
}

// distributivity and zero divisors by direct enumeration of triples/pairs
void check_small(const Presemifield& psf, AxiomReport& rep) {
  const std::uint32_t n = psf.n;
  rep.distributive.ok = true;
  for (std::uint32_t a = 0; a < n && rep.distributive.ok; ++a) {
    for (std::uint32_t b = 0; b < n && rep.distributive.ok; ++b) {
      for (std::uint32_t c = 0; c < n; ++c) {
        if (psf.mul(a, b ^ c) != (psf.mul(a, b) ^ psf.mul(a, c))) {
          rep.distributive = {false, {AxiomWitness::Kind::left_distributivity, a, b, c}};
          break;
        }
        if (psf.mul(a ^ b, c) != (psf.mul(a, c) ^ psf.mul(b, c))) {
          rep.distributive = {false, {AxiomWitness::Kind::right_distributivity, a, b, c}};
          break;
        }
      }
    }
  }
  rep.no_zero_divisors.ok = true;
  for (std::uint32_t a = 1; a < n && rep.no_zero_divisors.ok; ++a) {
    for (std::uint32_t b = 1; b < n; ++b) {
      if (psf.mul(a, b) == 0) {
        rep.no_zero_divisors = {false, {AxiomWitness::Kind::zero_divisor, a, b, 0}};
        break;
      }
    }
  }
}

// distributivity through the bilinear generator decomposition: each row and
// column must be GF(2)-linear, which pins every entry to the XOR of its
// basis-generator images. Zero divisors through the rank of every left
// multiplication matrix. Exact, and O(n^2 + n*k^2) instead of O(n^3).
void check_large(const Presemifield& psf, AxiomReport& rep) {
  const std::uint32_t n = psf.n;
  rep.distributive.ok = true;
  for (std::uint32_t a = 0; a < n && rep.distributive.ok; ++a) {
    if (psf.mul(a, 0) != 0) {
      rep.distributive = {false, {AxiomWitness::Kind::left_distributivity, a, 0, 0}};
      break;
    }
    for (std::uint32_t b = 1; b < n; ++b) {
      const std::uint32_t low = b & (~b + 1);
      const std::uint32_t rest = b ^ low;
      if (rest == 0) continue;
      if (psf.mul(a, b) != (psf.mul(a, rest) ^ psf.mul(a, low))) {
        rep.distributive = {false, {AxiomWitness::Kind::left_distributivity, a, rest, low}};
        break;
      }
    }
  }
  for (std::uint32_t c = 0; c < n && rep.distributive.ok; ++c) {
    if (psf.mul(0, c) != 0) {
      rep.distributive = {false, {AxiomWitness::Kind::right_distributivity, 0, 0, c}};
      break;
    }
  }
  for (std::uint32_t a = 1; a < n && rep.distributive.ok; ++a) {
    const std::uint32_t low = a & (~a + 1);
    const std::uint32_t rest = a ^ low;
    if (rest == 0) continue;
    for (std::uint32_t c = 0; c < n; ++c) {
      if (psf.mul(a, c) != (psf.mul(rest, c) ^ psf.mul(low, c))) {
        rep.distributive = {false, {AxiomWitness::Kind::right_distributivity, rest, low, c}};
        break;
      }
    }
  }

  rep.no_zero_divisors.ok = true;
  for (std::uint32_t m = 1; m < n && rep.no_zero_divisors.ok; ++m) {
    std::uint32_t basis[gf2::kMaxDim] = {};
    bool singular = false;
    for (unsigned j = 0; j < psf.k; ++j) {
      std::uint32_t v = psf.mul(m, std::uint32_t(1) << j);
      while (v != 0) {
        const unsigned t = unsigned(31 - std::countl_zero(v));
        if (basis[t] == 0) {
          basis[t] = v;
          break;
        }
        v ^= basis[t];
      }
      if (v == 0) {
        singular = true;
        break;
      }
    }
    if (singular) {
      for (std::uint32_t b = 1; b < n; ++b) {
        if (psf.mul(m, b) == 0) {
          rep.no_zero_divisors = {false, {AxiomWitness::Kind::zero_divisor, m, b, 0}};
          break;
        }
      }
      if (rep.no_zero_divisors.ok) {
        throw InternalError("verify_axioms: singular left multiplication without a kernel vector");
      }
    }
  }
}

void check_commutative(const Presemifield& psf, AxiomReport& rep) {
  const std::uint32_t n = psf.n;
  std::vector<std::uint16_t> transpose(std::size_t(n) * n);
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = 0; b < n; ++b) transpose[std::size_t(b) * n + a] = std::uint16_t(psf.mul(a, b));
  }
  rep.commutative.ok = true;
  const auto& kn = kernels::active();
  for (std::uint32_t a = 0; a < n; ++a) {
    const std::int64_t at = kn.mismatch_xor_u16(psf.row(a), transpose.data() + std::size_t(a) * n, 0, n);
    if (at >= 0) {
      rep.commutative = {false, {AxiomWitness::Kind::commutativity, a, std::uint32_t(at), 0}};
      return;
    }
  }
}

}  // namespace

std::string AxiomWitness::text() const {
  if (kind == Kind::none) return "none";
  std::ostringstream os;
  os << kind_name(kind) << " a=" << a << " b=" << b;
  if (kind == Kind::left_distributivity || kind == Kind::right_distributivity) os << " c=" << c;
  return os.str();
}

std::string AxiomReport::failure_text() const {
  std::string out;
  const auto add = [&out](const char* axiom, const AxiomCheck& chk) {
    if (chk.ok) return;
    if (!out.empty()) out += "; ";
    out += axiom;
    out += " failed at ";
    out += chk.witness.text();
  };
  add("distributivity", distributive);
  add("no-zero-divisors", no_zero_divisors);
  add("commutativity", commutative);
  return out;
}

AxiomReport verify_axioms(const Presemifield& psf) {
  if (psf.n == 0 || psf.n != (std::uint32_t(1) << psf.k) ||
      psf.table.size() != std::size_t(psf.n) * psf.n) {
    throw InputError("verify_axioms: malformed presemifield dimensions");
  }
  AxiomReport rep;
  if (psf.n <= 64) {
    check_small(psf, rep);
  } else {
    check_large(psf, rep);
  }
  check_commutative(psf, rep);
  return rep;
}

namespace {

Presemifield finish_construction(Presemifield psf, bool must_pass) {
  const AxiomReport rep = verify_axioms(psf);
  if (!rep.all()) {
    if (must_pass) {
      throw InternalError("presemifield construction self-check failed: " + rep.failure_text());
    }
    throw VerificationError("presemifield axiom verification failed: " + rep.failure_text());
  }
  psf.verified_distributive = true;
  psf.verified_no_zero_divisors = true;
  psf.verified_commutative = true;
  return psf;
}

}  // namespace

Presemifield field_presemifield(unsigned k, std::uint32_t modulus) {
  modulus = validate_modulus(k, modulus);
  Presemifield psf;
  psf.k = k;
  psf.n = std::uint32_t(1) << k;
  psf.source = "field";
  psf.modulus = modulus;
  psf.table.resize(std::size_t(psf.n) * psf.n);
  for (std::uint32_t a = 0; a < psf.n; ++a) {
    for (std::uint32_t b = 0; b < psf.n; ++b) {
      psf.table[std::size_t(a) * psf.n + b] = std::uint16_t(gf2::gf_mul(a, b, k, modulus));
    }
  }
  // a field violating its own axioms would mean the reduction is broken
  return finish_construction(std::move(psf), /*must_pass=*/true);
}

Presemifield knuth_binary_presemifield(unsigned k, std::uint32_t modulus) {
  if (k < 3 || (k % 2) == 0) {
    throw InputError("knuth presemifield: k must be odd and >= 3");
  }
  modulus = validate_modulus(k, modulus);
  Presemifield psf;
  psf.k = k;
  psf.n = std::uint32_t(1) << k;
  psf.source = "knuth";
  psf.modulus = modulus;
  psf.table.resize(std::size_t(psf.n) * psf.n);
  std::vector<std::uint32_t> tr(psf.n);
  for (std::uint32_t a = 0; a < psf.n; ++a) tr[a] = gf2::gf_trace(a, k, modulus);
  for (std::uint32_t a = 0; a < psf.n; ++a) {
    for (std::uint32_t b = 0; b < psf.n; ++b) {
      const std::uint32_t s = (tr[b] ? a : 0) ^ (tr[a] ? b : 0);
      const std::uint32_t entry = gf2::gf_mul(a, b, k, modulus) ^ gf2::gf_mul(s, s, k, modulus);
      psf.table[std::size_t(a) * psf.n + b] = std::uint16_t(entry);
    }
  }
  // the verifier, not the defining formula, certifies the algebra
  return finish_construction(std::move(psf), /*must_pass=*/false);
}

Presemifield presemifield_from_table(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw InputError("table: missing header line");
  std::istringstream hs(header);
  std::string tag, kfield, nfield;
  hs >> tag >> kfield >> nfield;
  if (tag != "semifield" || kfield.rfind("k=", 0) != 0 || nfield.rfind("n=", 0) != 0) {
    throw InputError("table: header must be 'semifield k=<int> n=<int>'");
  }
  unsigned k = 0;
  std::uint32_t n = 0;
  try {
    k = unsigned(std::stoul(kfield.substr(2)));
    n = std::uint32_t(std::stoul(nfield.substr(2)));
  } catch (const std::exception&) {
    throw InputError("table: unparseable k or n in header");
  }
  if (k < 1 || k > gf2::kMaxDim) {
    throw InputError("table: k must be in [1, " + std::to_string(gf2::kMaxDim) + "]");
  }
  if (n != (std::uint32_t(1) << k)) throw InputError("table: n must equal 2^k");

  Presemifield psf;
  psf.k = k;
  psf.n = n;
  psf.source = "table";
  psf.modulus = 0;
  psf.table.resize(std::size_t(n) * n);
  for (std::size_t i = 0; i < psf.table.size(); ++i) {
    long long v = 0;
    if (!(in >> v)) throw InputError("table: truncated body, expected " + std::to_string(psf.table.size()) + " entries");
    if (v < 0 || std::uint64_t(v) >= n) throw InputError("table: entry " + std::to_string(v) + " out of range [0, n)");
    psf.table[i] = std::uint16_t(v);
  }
  return finish_construction(std::move(psf), /*must_pass=*/false);
}

Presemifield presemifield_from_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("table: cannot open '" + path + "'");
  return presemifield_from_table(in);
}

void write_table(const Presemifield& psf, std::ostream& out) {
  out << "semifield k=" << psf.k << " n=" << psf.n << "\n";
  for (std::uint32_t a = 0; a < psf.n; ++a) {
    for (std::uint32_t b = 0; b < psf.n; ++b) {
      out << psf.mul(a, b) << (b + 1 == psf.n ? "" : " ");
    }
    out << "\n";
  }
}

SolveTable::SolveTable(const Presemifield& psf) : n_(psf.n), inv_(std::size_t(psf.n) * psf.n, 0xffff) {
  for (std::uint32_t m = 1; m < n_; ++m) {
    for (std::uint32_t x = 0; x < n_; ++x) {
      const std::uint32_t c = psf.mul(m, x);
      std::uint16_t& slot = inv_[std::size_t(m) * n_ + c];
      if (slot != 0xffff) {
        throw InternalError("solve table: left multiplication by " + std::to_string(m) +
                            " is not injective");
      }
      slot = std::uint16_t(x);
    }
  }
}

FieldElem SolveTable::solve(FieldElem m, FieldElem c) const {
  if (m == 0) throw InternalError("solve: degenerate zero slope");
  return inv_[std::size_t(m) * n_ + c];
}

}  // namespace fanoforge::algebra
