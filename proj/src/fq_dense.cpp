#include "fq_dense.hpp"

#include <algorithm>
#include <utility>

#include "rankcrypt/errors.hpp"

namespace rankcrypt::detail {

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t q) {
  a %= q;
  if (a == 0) throw DivisionByZero();
  std::uint64_t r = 1, b = a;
  for (std::uint32_t e = q - 2; e; e >>= 1) {
    if (e & 1) r = r * b % q;
    b = b * b % q;
  }
  return static_cast<std::uint32_t>(r);
}

FqDense::FqDense(std::uint32_t q, std::size_t rows, std::size_t cols) : q_(q), rows_(rows), cols_(cols) {
  if (q_ == 2) {
    words_ = (cols_ + 63) / 64;
    bits_.assign(rows_ * words_, 0);
  } else {
    vals_.assign(rows_ * cols_, 0);
  }
}

void FqDense::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  if (q_ == 2) {
    std::swap_ranges(bits_.begin() + a * words_, bits_.begin() + (a + 1) * words_, bits_.begin() + b * words_);
  } else {
    std::swap_ranges(vals_.begin() + a * cols_, vals_.begin() + (a + 1) * cols_, vals_.begin() + b * cols_);
  }
}

std::vector<std::size_t> FqDense::rref(std::size_t limit) {
  std::vector<std::size_t> pivots;
  limit = std::min(limit, cols_);
  std::size_t r = 0;
  if (q_ == 2) {
    for (std::size_t c = 0; c < limit && r < rows_; ++c) {
      const std::size_t w = c / 64;
      const std::uint64_t bit = std::uint64_t{1} << (c % 64);
      std::size_t p = r;
      while (p < rows_ && !(bits_[p * words_ + w] & bit)) ++p;
      if (p == rows_) continue;
      swap_rows(p, r);
      const std::uint64_t* src = &bits_[r * words_];
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r) continue;
        std::uint64_t* dst = &bits_[i * words_];
        if (!(dst[w] & bit)) continue;
        for (std::size_t k = w; k < words_; ++k) dst[k] ^= src[k];
      }
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }
  for (std::size_t c = 0; c < limit && r < rows_; ++c) {
    std::size_t p = r;
    while (p < rows_ && vals_[p * cols_ + c] == 0) ++p;
    if (p == rows_) continue;
    swap_rows(p, r);
    std::uint32_t* src = &vals_[r * cols_];
    const std::uint64_t inv = inv_mod(src[c], q_);
    for (std::size_t k = c; k < cols_; ++k) src[k] = static_cast<std::uint32_t>(src[k] * inv % q_);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r) continue;
      std::uint32_t* dst = &vals_[i * cols_];
      const std::uint64_t factor = dst[c];
      if (!factor) continue;
      for (std::size_t k = c; k < cols_; ++k) {
        dst[k] = static_cast<std::uint32_t>((dst[k] + (q_ - factor) * src[k]) % q_);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace rankcrypt::detail
