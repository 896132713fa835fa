#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fanoforge/bitset.hpp"
#include "fanoforge/kernels.hpp"

using namespace fanoforge;

namespace {

// every variant available in this build, scalar always first
std::vector<const kernels::Kernels*> variants() {
  std::vector<const kernels::Kernels*> out{&kernels::scalar()};
  if (kernels::avx2() != nullptr) out.push_back(kernels::avx2());
  if (kernels::neon() != nullptr) out.push_back(kernels::neon());
  return out;
}

std::vector<std::uint64_t> random_words(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::uint64_t> out(n);
  for (auto& w : out) w = rng();
  return out;
}

// lengths straddling the 4-word AVX2 block and its tail loop
const std::size_t kLengths[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 32, 33};

}  // namespace

TEST_CASE("scalar popcount matches per-word std::popcount") {
  std::mt19937_64 rng(7);
  for (const std::size_t len : kLengths) {
    const auto a = random_words(rng, len);
    std::uint64_t want = 0;
    for (const std::uint64_t w : a) want += std::uint64_t(std::popcount(w));
    CHECK(kernels::scalar().popcount(a.data(), len) == want);
  }
}

TEST_CASE("scalar and_first finds the lowest bit of the intersection") {
  std::vector<std::uint64_t> a(3, 0), b(3, 0);
  CHECK(kernels::scalar().and_first(a.data(), b.data(), 3) == -1);
  a[1] = std::uint64_t(1) << 17;
  b[1] = (std::uint64_t(1) << 17) | (std::uint64_t(1) << 40);
  CHECK(kernels::scalar().and_first(a.data(), b.data(), 3) == 64 + 17);
  a[0] = b[0] = std::uint64_t(1) << 63;
  CHECK(kernels::scalar().and_first(a.data(), b.data(), 3) == 63);
}

TEST_CASE("scalar mismatch_xor_u16 reports the first offending index") {
  std::vector<std::uint16_t> a{1, 2, 3, 4}, b{9, 10, 11, 12};
  CHECK(kernels::scalar().mismatch_xor_u16(a.data(), b.data(), 8, 4) == -1);
  b[2] = 0;
  CHECK(kernels::scalar().mismatch_xor_u16(a.data(), b.data(), 8, 4) == 2);
  CHECK(kernels::scalar().mismatch_xor_u16(a.data(), b.data(), 8, 0) == -1);
  CHECK(kernels::scalar().mismatch_xor_u16(a.data(), b.data(), 3, 4) == 0);
}

TEST_CASE("scalar clmul64 on known polynomial products") {
  // (x+1)^2 = x^2+1, x*x = x^2, x*(x+1) = x^2+x
  CHECK(kernels::scalar().clmul64(3, 3).lo == 5);
  CHECK(kernels::scalar().clmul64(2, 2).lo == 4);
  CHECK(kernels::scalar().clmul64(2, 3).lo == 6);
  CHECK(kernels::scalar().clmul64(3, 3).hi == 0);
  // x^63 * x = x^64 lands in the high word
  const kernels::Clmul128 r = kernels::scalar().clmul64(std::uint64_t(1) << 63, 2);
  CHECK(r.lo == 0);
  CHECK(r.hi == 1);
  // carry-less squaring spreads bits to even positions, no cross terms
  const kernels::Clmul128 sq = kernels::scalar().clmul64(0xffffffffffffffffULL, 0xffffffffffffffffULL);
  CHECK(sq.lo == 0x5555555555555555ULL);
  CHECK(sq.hi == 0x5555555555555555ULL);
}

TEST_CASE("every variant agrees with scalar on word-array kernels") {
  const auto all = variants();
  CHECK(!all.empty());
  std::mt19937_64 rng(42);
  for (const std::size_t len : kLengths) {
    for (int rep = 0; rep < 20; ++rep) {
      auto a = random_words(rng, len);
      auto b = random_words(rng, len);
      // make empty intersections and early hits both reachable
      if (rep % 3 == 0) {
        for (std::size_t i = 0; i < len; ++i) b[i] = ~a[i];
      }
      if (rep % 5 == 0 && len > 0) b[len / 2] |= a[len / 2];
      const std::uint64_t pc = kernels::scalar().popcount(a.data(), len);
      const std::uint64_t apc = kernels::scalar().and_popcount(a.data(), b.data(), len);
      const std::int64_t af = kernels::scalar().and_first(a.data(), b.data(), len);
      for (const auto* k : all) {
        INFO("variant ", k->name, " len ", len);
        CHECK(k->popcount(a.data(), len) == pc);
        CHECK(k->and_popcount(a.data(), b.data(), len) == apc);
        CHECK(k->and_first(a.data(), b.data(), len) == af);
      }
    }
  }
}

TEST_CASE("every variant agrees with scalar on mismatch_xor_u16") {
  const auto all = variants();
  std::mt19937_64 rng(43);
  for (std::size_t len = 0; len <= 40; ++len) {
    for (int rep = 0; rep < 10; ++rep) {
      const std::uint16_t key = std::uint16_t(rng());
      std::vector<std::uint16_t> a(len), b(len);
      for (std::size_t i = 0; i < len; ++i) {
        a[i] = std::uint16_t(rng());
        b[i] = std::uint16_t(a[i] ^ key);
      }
      if (rep % 2 == 1 && len > 0) {
        const std::size_t at = rng() % len;
        b[at] = std::uint16_t(~b[at]);
      }
      const std::int64_t want = kernels::scalar().mismatch_xor_u16(a.data(), b.data(), key, len);
      for (const auto* k : all) {
        INFO("variant ", k->name, " len ", len);
        CHECK(k->mismatch_xor_u16(a.data(), b.data(), key, len) == want);
      }
    }
  }
}

TEST_CASE("every variant agrees with scalar on clmul64") {
  const auto all = variants();
  std::mt19937_64 rng(44);
  for (int rep = 0; rep < 500; ++rep) {
    const std::uint64_t a = rng();
    const std::uint64_t b = rng();
    const kernels::Clmul128 want = kernels::scalar().clmul64(a, b);
    for (const auto* k : all) {
      const kernels::Clmul128 got = k->clmul64(a, b);
      INFO("variant ", k->name);
      CHECK(got.lo == want.lo);
      CHECK(got.hi == want.hi);
    }
  }
}

TEST_CASE("active kernel set is one of the known variants") {
  const std::string name = kernels::active().name;
  CHECK((name == "scalar" || name == "avx2" || name == "neon"));
}

TEST_CASE("BitMatrix rows round-trip through set, test, and kernels") {
  BitMatrix m(3, 130);
  m.set(0, 0);
  m.set(0, 64);
  m.set(0, 129);
  m.set(1, 64);
  m.set(1, 129);
  CHECK(m.row_popcount(0) == 3);
  CHECK(m.and_popcount(0, 1) == 2);
  CHECK(m.and_first(0, 1) == 64);
  CHECK(m.and_first(1, 2) == -1);
  m.clear(0, 64);
  CHECK(m.and_first(0, 1) == 129);
  CHECK(m.test(0, 0));
  CHECK(!m.test(0, 64));

  const BitMatrix t = m.transposed();
  CHECK(t.rows() == 130);
  CHECK(t.cols() == 3);
  CHECK(t.test(129, 0));
  CHECK(t.test(129, 1));
  CHECK(t.test(0, 0));
  CHECK(!t.test(64, 0));
}
