#pragma once

#include "rankcrypt/matrix.hpp"

namespace rankcrypt {

ExtMatrix random_ext_matrix(Rng& rng, const FieldPtr& f, std::size_t rows, std::size_t cols);
BaseMatrix random_base_matrix(Rng& rng, std::uint32_t q, std::size_t rows, std::size_t cols);
ExtMatrix random_invertible_ext(Rng& rng, const FieldPtr& f, std::size_t n);
BaseMatrix random_invertible_base(Rng& rng, std::uint32_t q, std::size_t n);
// Full row rank r x n over F_q.
BaseMatrix random_full_rank_base(Rng& rng, std::uint32_t q, std::size_t r, std::size_t n);
// Vector of length n with rank exactly n (n <= m).
ExtVector random_independent_vector(Rng& rng, const FieldPtr& f, std::size_t n);

/// x = v U with v of rank r and U full rank over F_q; rank_weight(x) = r.
ExtVector sample_rank_vector(Rng& rng, const FieldPtr& f, std::size_t n, std::size_t r);

struct ColrankSample {
  ExtMatrix X;  // V * U
  ExtMatrix V;
  BaseMatrix U;
};

/// k x n matrix of column rank exactly t.
ColrankSample sample_colrank_matrix(Rng& rng, const FieldPtr& f, std::size_t k, std::size_t n, std::size_t t);

}  // namespace rankcrypt
