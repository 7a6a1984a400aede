#pragma once

// Elimination workspace over F_q. Rows are bit-packed when q = 2, which is
// what makes the large expanded systems of the attacks affordable.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace rankcrypt::detail {

class FqDense {
 public:
  FqDense(std::uint32_t q, std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint32_t q() const { return q_; }

  std::uint32_t get(std::size_t r, std::size_t c) const {
    if (q_ == 2) return static_cast<std::uint32_t>((bits_[r * words_ + c / 64] >> (c % 64)) & 1);
    return vals_[r * cols_ + c];
  }
  void set(std::size_t r, std::size_t c, std::uint32_t v) {
    if (q_ == 2) {
      std::uint64_t& w = bits_[r * words_ + c / 64];
      const std::uint64_t bit = std::uint64_t{1} << (c % 64);
      w = (v & 1) ? (w | bit) : (w & ~bit);
    } else {
      vals_[r * cols_ + c] = v % q_;
    }
  }

  // Gauss-Jordan elimination using pivot columns < limit. Pivot rows end up
  // at the top in pivot order, normalized to 1. Returns the pivot columns.
  std::vector<std::size_t> rref(std::size_t limit);
  std::vector<std::size_t> rref() { return rref(cols_); }

 private:
  void swap_rows(std::size_t a, std::size_t b);

  std::uint32_t q_;
  std::size_t rows_, cols_, words_ = 0;
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint32_t> vals_;
};

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t q);

}  // namespace rankcrypt::detail
