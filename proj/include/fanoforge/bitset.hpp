#pragma once

#include <cstdint>
#include <vector>

#include "fanoforge/kernels.hpp"

namespace fanoforge {

// Fixed-width bit rows backed by 64-bit words. Row intersections go through
// the kernels module; everything else is plain bit arithmetic.
class BitMatrix {
public:
  BitMatrix() = default;
  BitMatrix(std::uint32_t rows, std::uint32_t cols)
      : rows_(rows),
        cols_(cols),
        wpr_((std::size_t(cols) + 63) / 64),
        bits_(std::size_t(rows) * wpr_, 0) {}

  std::uint32_t rows() const { return rows_; }
  std::uint32_t cols() const { return cols_; }
  std::size_t words_per_row() const { return wpr_; }

  const std::uint64_t* row(std::uint32_t r) const { return bits_.data() + std::size_t(r) * wpr_; }
  std::uint64_t* row(std::uint32_t r) { return bits_.data() + std::size_t(r) * wpr_; }

  void set(std::uint32_t r, std::uint32_t c) { row(r)[c >> 6] |= std::uint64_t(1) << (c & 63); }
  void clear(std::uint32_t r, std::uint32_t c) { row(r)[c >> 6] &= ~(std::uint64_t(1) << (c & 63)); }
  bool test(std::uint32_t r, std::uint32_t c) const {
    return (row(r)[c >> 6] >> (c & 63)) & 1;
  }

  std::uint64_t row_popcount(std::uint32_t r) const {
    return kernels::active().popcount(row(r), wpr_);
  }
  std::uint64_t and_popcount(std::uint32_t r1, std::uint32_t r2) const {
    return kernels::active().and_popcount(row(r1), row(r2), wpr_);
  }
  std::int64_t and_first(std::uint32_t r1, std::uint32_t r2) const {
    return kernels::active().and_first(row(r1), row(r2), wpr_);
  }

  BitMatrix transposed() const {
    BitMatrix t(cols_, rows_);
    for (std::uint32_t r = 0; r < rows_; ++r) {
      for (std::uint32_t c = 0; c < cols_; ++c) {
        if (test(r, c)) t.set(c, r);
      }
    }
    return t;
  }

  bool operator==(const BitMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && bits_ == o.bits_;
  }

private:
  std::uint32_t rows_ = 0;
  std::uint32_t cols_ = 0;
  std::size_t wpr_ = 0;
  std::vector<std::uint64_t> bits_;
};

}  // namespace fanoforge
