#pragma once

#include "rankcrypt/matrix.hpp"

namespace rankcrypt {

// Rank of the m x n expansion of x over F_q.
std::size_t rank_weight(const Field& f, const ExtVector& x);

// k x N matrix whose i-th row is alpha^{[i]}.
ExtMatrix moore(const FieldPtr& f, const ExtVector& alpha, std::size_t k);
// True when each row is the Frobenius image of the previous one.
bool is_moore(const ExtMatrix& M);

inline ExtMatrix frobenius_shift(const ExtMatrix& M, long long i) { return M.frobenius(i); }

/// Sum of <M>^{[i*step]} for i = 0 .. count-1.
RowSpace frobenius_sum_space(const ExtMatrix& M, std::size_t count, std::size_t step = 1);

struct GrassmannSupport {
  BaseMatrix U;  // rref, full row rank
  std::size_t s = 0;
};

/// The F_q row space <U> with X = V U; its dimension is the column rank of X.
GrassmannSupport grassmann_support(const ExtMatrix& X);

struct MooreDecomposition {
  ExtMatrix moore_part;
  ExtMatrix non_moore;
  std::size_t s = 0;  // column rank of non_moore
};

// Splits X into moore(X_0, rows) and the remainder. s is only an upper bound
// on the column rank a minimal decomposition would reach.
MooreDecomposition moore_decompose_first_row(const ExtMatrix& X);

/// Rref basis over F_q of the codewords of V lying in F_q^n. Every rank-one
/// codeword of V is a multiple of one of these.
BaseMatrix rank_one_span(const RowSpace& V);

}  // namespace rankcrypt
