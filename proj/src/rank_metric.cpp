#include "rankcrypt/rank_metric.hpp"

#include "rankcrypt/errors.hpp"

namespace rankcrypt {

std::size_t rank_weight(const Field& f, const ExtVector& x) { return rank_base(expand_vector(f, x)); }

ExtMatrix moore(const FieldPtr& f, const ExtVector& alpha, std::size_t k) {
  ExtMatrix M(f, k, alpha.size());
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    Element e = alpha[j];
    for (std::size_t i = 0; i < k; ++i) {
      M(i, j) = e;
      e = f->frob(e, 1);
    }
  }
  return M;
}

bool is_moore(const ExtMatrix& M) {
  const Field& f = M.field();
  for (std::size_t i = 1; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j)
      if (M(i, j) != f.frob(M(i - 1, j), 1)) return false;
  return true;
}

RowSpace frobenius_sum_space(const ExtMatrix& M, std::size_t count, std::size_t step) {
  if (count == 0 || step == 0) throw BadDims("frobenius_sum_space needs count >= 1 and step >= 1");
  RowSpace acc(M);
  // Once a shift adds nothing the sum is closed under the step-power map.
  for (std::size_t i = 1; i < count && acc.dim() < acc.ambient(); ++i) {
    RowSpace next(acc.basis().vstack(M.frobenius(static_cast<long long>(i * step))));
    if (next.dim() == acc.dim()) break;
    acc = std::move(next);
  }
  return acc;
}

GrassmannSupport grassmann_support(const ExtMatrix& X) {
  GrassmannSupport g;
  g.s = column_rank_base(X);
  if (g.s == 0) {
    g.U = BaseMatrix(X.field().q(), 0, X.cols());
    return g;
  }
  RowSpace sum = frobenius_sum_space(X, g.s, 1);
  if (sum.dim() != g.s || !sum.is_base_rational())
    throw InternalInconsistency("Frobenius chain of X did not close on an F_q-rational space of dimension colrk(X)");
  g.U = sum.basis().to_base();
  return g;
}

MooreDecomposition moore_decompose_first_row(const ExtMatrix& X) {
  if (X.rows() == 0) throw BadDims("Moore decomposition of an empty matrix");
  MooreDecomposition d;
  d.moore_part = moore(X.field_ptr(), X.row_vec(0), X.rows());
  d.non_moore = X - d.moore_part;
  d.s = column_rank_base(d.non_moore);
  return d;
}

BaseMatrix rank_one_span(const RowSpace& V) {
  const Field& f = V.field();
  const ExtMatrix& G = V.basis();
  std::vector<ExtVector> cols;
  cols.reserve(G.rows());
  for (std::size_t i = 0; i < G.rows(); ++i) {
    ExtVector row = G.row_vec(i);
    cols.push_back(vec_sub(f, vec_frobenius(f, row, 1), row));
  }
  const AffineSolution sol = solve_base_linear(f, cols, ExtVector(G.cols()));
  if (sol.kernel.rows() == 0) return BaseMatrix(f.q(), 0, G.cols());
  // combinations of rref rows with F_q coefficients; entries land in F_q
  ExtMatrix words = ExtMatrix::lift(V.basis().field_ptr(), sol.kernel) * G;
  return row_basis(words.to_base());
}

}  // namespace rankcrypt
