#include "rankcrypt/sampling.hpp"

#include "rankcrypt/errors.hpp"
#include "rankcrypt/rank_metric.hpp"

namespace rankcrypt {

namespace {
constexpr int kMaxAttempts = 1000;
}

ExtMatrix random_ext_matrix(Rng& rng, const FieldPtr& f, std::size_t rows, std::size_t cols) {
  ExtMatrix M(f, rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) M(r, c) = f->random(rng);
  return M;
}

BaseMatrix random_base_matrix(Rng& rng, std::uint32_t q, std::size_t rows, std::size_t cols) {
  BaseMatrix M(q, rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) M(r, c) = static_cast<std::uint32_t>(uniform_below(rng, q));
  return M;
}

ExtMatrix random_invertible_ext(Rng& rng, const FieldPtr& f, std::size_t n) {
  for (int i = 0; i < kMaxAttempts; ++i) {
    ExtMatrix M = random_ext_matrix(rng, f, n, n);
    if (rank(M) == n) return M;
  }
  throw SamplingFailure("no invertible matrix found");
}

BaseMatrix random_invertible_base(Rng& rng, std::uint32_t q, std::size_t n) {
  return random_full_rank_base(rng, q, n, n);
}

BaseMatrix random_full_rank_base(Rng& rng, std::uint32_t q, std::size_t r, std::size_t n) {
  if (r > n) throw BadDims("full row rank needs r <= n");
  for (int i = 0; i < kMaxAttempts; ++i) {
    BaseMatrix M = random_base_matrix(rng, q, r, n);
    if (rank_base(M) == r) return M;
  }
  throw SamplingFailure("no full rank matrix found");
}

ExtVector random_independent_vector(Rng& rng, const FieldPtr& f, std::size_t n) {
  if (n > static_cast<std::size_t>(f->m())) throw BadDims("more than m independent elements requested");
  for (int i = 0; i < kMaxAttempts; ++i) {
    ExtVector v(n);
    for (auto& e : v) e = f->random(rng);
    if (rank_weight(*f, v) == n) return v;
  }
  throw SamplingFailure("no independent vector found");
}

ExtVector sample_rank_vector(Rng& rng, const FieldPtr& f, std::size_t n, std::size_t r) {
  if (r > n || r > static_cast<std::size_t>(f->m())) throw BadDims("rank exceeds min(n, m)");
  if (r == 0) return ExtVector(n);
  const ExtVector v = random_independent_vector(rng, f, r);
  const BaseMatrix U = random_full_rank_base(rng, f->q(), r, n);
  return vec_mul(*f, v, U);
}

ColrankSample sample_colrank_matrix(Rng& rng, const FieldPtr& f, std::size_t k, std::size_t n, std::size_t t) {
  if (t > n || t > k * static_cast<std::size_t>(f->m())) throw BadDims("column rank out of range");
  for (int i = 0; i < kMaxAttempts; ++i) {
    ColrankSample s;
    s.V = random_ext_matrix(rng, f, k, t);
    s.U = random_full_rank_base(rng, f->q(), t, n);
    s.X = s.V * s.U;
    if (column_rank_base(s.X) == t) return s;
  }
  throw SamplingFailure("no matrix of the requested column rank found");
}

}  // namespace rankcrypt
