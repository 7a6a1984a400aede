#include "rankcrypt/matrix.hpp"

#include <algorithm>
#include <sstream>

#include "fq_dense.hpp"
#include "rankcrypt/errors.hpp"

namespace rankcrypt {

using detail::FqDense;

// ---------------------------------------------------------------- BaseMatrix

BaseMatrix::BaseMatrix(std::uint32_t q, std::size_t rows, std::size_t cols)
    : q_(q), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

BaseMatrix BaseMatrix::identity(std::uint32_t q, std::size_t n) {
  BaseMatrix I(q, n, n);
  for (std::size_t i = 0; i < n; ++i) I(i, i) = 1;
  return I;
}

BaseMatrix BaseMatrix::from_rows(std::uint32_t q, const std::vector<std::vector<std::uint32_t>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  BaseMatrix M(q, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DimensionMismatch("ragged rows");
    for (std::size_t c = 0; c < cols; ++c) M(r, c) = rows[r][c] % q;
  }
  return M;
}

BaseMatrix BaseMatrix::operator*(const BaseMatrix& b) const {
  if (cols_ != b.rows_) throw DimensionMismatch("BaseMatrix product");
  BaseMatrix out(q_, rows_, b.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const std::uint64_t a = (*this)(i, k);
      if (!a) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        out(i, j) = static_cast<std::uint32_t>((out(i, j) + a * b(k, j)) % q_);
      }
    }
  }
  return out;
}

BaseMatrix BaseMatrix::transpose() const {
  BaseMatrix t(q_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

BaseMatrix BaseMatrix::vstack(const BaseMatrix& b) const {
  if (rows_ == 0) return b;
  if (b.rows_ == 0) return *this;
  if (cols_ != b.cols_) throw DimensionMismatch("BaseMatrix vstack");
  BaseMatrix out = *this;
  out.rows_ += b.rows_;
  out.data_.insert(out.data_.end(), b.data_.begin(), b.data_.end());
  return out;
}

BaseMatrix BaseMatrix::hstack(const BaseMatrix& b) const {
  if (rows_ != b.rows_) throw DimensionMismatch("BaseMatrix hstack");
  BaseMatrix out(q_, rows_, cols_ + b.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::copy(row(r).begin(), row(r).end(), out.row(r).begin());
    std::copy(b.row(r).begin(), b.row(r).end(), out.row(r).begin() + cols_);
  }
  return out;
}

BaseMatrix BaseMatrix::select_rows(std::span<const std::size_t> idx) const {
  BaseMatrix out(q_, idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i) std::copy(row(idx[i]).begin(), row(idx[i]).end(), out.row(i).begin());
  return out;
}

BaseMatrix BaseMatrix::select_cols(std::span<const std::size_t> idx) const {
  BaseMatrix out(q_, rows_, idx.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t i = 0; i < idx.size(); ++i) out(r, i) = (*this)(r, idx[i]);
  return out;
}

bool BaseMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](std::uint32_t v) { return v == 0; });
}

// ----------------------------------------------------------------- ExtMatrix

ExtMatrix::ExtMatrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols) {}

ExtMatrix ExtMatrix::identity(FieldPtr field, std::size_t n) {
  ExtMatrix I(std::move(field), n, n);
  for (std::size_t i = 0; i < n; ++i) I(i, i) = Element{1};
  return I;
}

ExtMatrix ExtMatrix::from_rows(FieldPtr field, const std::vector<ExtVector>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  ExtMatrix M(std::move(field), rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DimensionMismatch("ragged rows");
    std::copy(rows[r].begin(), rows[r].end(), M.row(r).begin());
  }
  return M;
}

ExtMatrix ExtMatrix::row_vector(FieldPtr field, ExtVector v) {
  ExtMatrix M(std::move(field), 1, v.size());
  std::copy(v.begin(), v.end(), M.row(0).begin());
  return M;
}

ExtMatrix ExtMatrix::lift(FieldPtr field, const BaseMatrix& b) {
  if (field->q() != b.q()) throw DimensionMismatch("lifting matrix over a different base field");
  ExtMatrix M(std::move(field), b.rows(), b.cols());
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) M(r, c) = Element{b(r, c)};
  return M;
}

ExtVector ExtMatrix::col_vec(std::size_t c) const {
  ExtVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

ExtMatrix ExtMatrix::operator*(const ExtMatrix& b) const {
  if (cols_ != b.rows_) throw DimensionMismatch("ExtMatrix product");
  const Field& f = *field_;
  ExtMatrix out(field_, rows_, b.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Element a = (*this)(i, k);
      if (a.is_zero()) continue;
      auto dst = out.row(i);
      auto src = b.row(k);
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (!src[j].is_zero()) dst[j] = f.add(dst[j], f.mul(a, src[j]));
      }
    }
  }
  return out;
}

ExtMatrix ExtMatrix::operator*(const BaseMatrix& b) const {
  if (cols_ != b.rows()) throw DimensionMismatch("ExtMatrix x BaseMatrix product");
  const Field& f = *field_;
  ExtMatrix out(field_, rows_, b.cols());
  for (std::size_t i = 0; i < rows_; ++i) {
    auto dst = out.row(i);
    for (std::size_t k = 0; k < cols_; ++k) {
      const Element a = (*this)(i, k);
      if (a.is_zero()) continue;
      auto src = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (src[j]) dst[j] = f.add(dst[j], f.scale(a, src[j]));
      }
    }
  }
  return out;
}

ExtMatrix ExtMatrix::operator+(const ExtMatrix& b) const {
  if (rows_ != b.rows_ || cols_ != b.cols_) throw DimensionMismatch("ExtMatrix sum");
  ExtMatrix out(field_, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = field_->add(data_[i], b.data_[i]);
  return out;
}

ExtMatrix ExtMatrix::operator-(const ExtMatrix& b) const {
  if (rows_ != b.rows_ || cols_ != b.cols_) throw DimensionMismatch("ExtMatrix difference");
  ExtMatrix out(field_, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = field_->sub(data_[i], b.data_[i]);
  return out;
}

ExtMatrix ExtMatrix::transpose() const {
  ExtMatrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

ExtMatrix ExtMatrix::vstack(const ExtMatrix& b) const {
  if (rows_ == 0 && cols_ == 0) return b;
  if (cols_ != b.cols_) throw DimensionMismatch("ExtMatrix vstack");
  ExtMatrix out = *this;
  out.rows_ += b.rows_;
  out.data_.insert(out.data_.end(), b.data_.begin(), b.data_.end());
  return out;
}

ExtMatrix ExtMatrix::hstack(const ExtMatrix& b) const {
  if (rows_ != b.rows_) throw DimensionMismatch("ExtMatrix hstack");
  ExtMatrix out(field_ ? field_ : b.field_, rows_, cols_ + b.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::copy(row(r).begin(), row(r).end(), out.row(r).begin());
    std::copy(b.row(r).begin(), b.row(r).end(), out.row(r).begin() + cols_);
  }
  return out;
}

ExtMatrix ExtMatrix::select_rows(std::span<const std::size_t> idx) const {
  ExtMatrix out(field_, idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i) std::copy(row(idx[i]).begin(), row(idx[i]).end(), out.row(i).begin());
  return out;
}

ExtMatrix ExtMatrix::select_cols(std::span<const std::size_t> idx) const {
  ExtMatrix out(field_, rows_, idx.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t i = 0; i < idx.size(); ++i) out(r, i) = (*this)(r, idx[i]);
  return out;
}

ExtMatrix ExtMatrix::top_rows(std::size_t count) const {
  count = std::min(count, rows_);
  ExtMatrix out(field_, count, cols_);
  std::copy(data_.begin(), data_.begin() + static_cast<std::ptrdiff_t>(count * cols_), out.data_.begin());
  return out;
}

ExtMatrix ExtMatrix::frobenius(long long i) const {
  ExtMatrix out(field_, rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = field_->frob(data_[k], i);
  return out;
}

bool ExtMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Element e) { return e.is_zero(); });
}

bool ExtMatrix::is_base() const {
  const std::uint32_t q = field_->q();
  return std::all_of(data_.begin(), data_.end(), [q](Element e) { return e.v < q; });
}

BaseMatrix ExtMatrix::to_base() const {
  if (!is_base()) throw DimensionMismatch("matrix has entries outside the base field");
  BaseMatrix b(field_->q(), rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) b(r, c) = static_cast<std::uint32_t>((*this)(r, c).v);
  return b;
}

bool ExtMatrix::operator==(const ExtMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  if (field_ && o.field_ && !(*field_ == *o.field_)) return false;
  return data_ == o.data_;
}

// ------------------------------------------------------------ vector helpers

ExtVector vec_mul(const ExtVector& v, const ExtMatrix& M) {
  if (v.size() != M.rows()) throw DimensionMismatch("vector x matrix");
  const Field& f = M.field();
  ExtVector out(M.cols());
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k].is_zero()) continue;
    auto src = M.row(k);
    for (std::size_t j = 0; j < out.size(); ++j) {
      if (!src[j].is_zero()) out[j] = f.add(out[j], f.mul(v[k], src[j]));
    }
  }
  return out;
}

ExtVector vec_mul(const Field& f, const ExtVector& v, const BaseMatrix& M) {
  if (v.size() != M.rows()) throw DimensionMismatch("vector x base matrix");
  ExtVector out(M.cols());
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k].is_zero()) continue;
    auto src = M.row(k);
    for (std::size_t j = 0; j < out.size(); ++j) {
      if (src[j]) out[j] = f.add(out[j], f.scale(v[k], src[j]));
    }
  }
  return out;
}

ExtVector vec_add(const Field& f, const ExtVector& a, const ExtVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector sum");
  ExtVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.add(a[i], b[i]);
  return out;
}

ExtVector vec_sub(const Field& f, const ExtVector& a, const ExtVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector difference");
  ExtVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.sub(a[i], b[i]);
  return out;
}

ExtVector vec_frobenius(const Field& f, const ExtVector& v, long long i) {
  ExtVector out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) out[k] = f.frob(v[k], i);
  return out;
}

ExtVector select(const ExtVector& v, std::span<const std::size_t> idx) {
  ExtVector out(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) out[i] = v[idx[i]];
  return out;
}

// ------------------------------------------------------ elimination over E

RrefResult rref(const ExtMatrix& M) {
  const Field& f = M.field();
  RrefResult res{M, {}, 0};
  ExtMatrix& R = res.R;
  std::size_t r = 0;
  for (std::size_t c = 0; c < R.cols() && r < R.rows(); ++c) {
    std::size_t p = r;
    while (p < R.rows() && R(p, c).is_zero()) ++p;
    if (p == R.rows()) continue;
    if (p != r) std::swap_ranges(R.row(p).begin(), R.row(p).end(), R.row(r).begin());
    auto prow = R.row(r);
    const Element inv = f.inv(prow[c]);
    for (std::size_t k = c; k < R.cols(); ++k) prow[k] = f.mul(prow[k], inv);
    for (std::size_t i = 0; i < R.rows(); ++i) {
      if (i == r) continue;
      auto dst = R.row(i);
      const Element factor = dst[c];
      if (factor.is_zero()) continue;
      for (std::size_t k = c; k < R.cols(); ++k) {
        if (!prow[k].is_zero()) dst[k] = f.sub(dst[k], f.mul(factor, prow[k]));
      }
    }
    res.pivots.push_back(c);
    ++r;
  }
  res.rank = r;
  return res;
}

std::size_t rank(const ExtMatrix& M) { return rref(M).rank; }

ExtMatrix right_kernel(const ExtMatrix& M) {
  const Field& f = M.field();
  const std::size_t n = M.cols();
  if (M.rows() == 0) return ExtMatrix::identity(M.field_ptr(), n);
  const RrefResult red = rref(M);
  std::vector<bool> is_pivot(n, false);
  for (auto p : red.pivots) is_pivot[p] = true;
  ExtMatrix K(M.field_ptr(), n - red.rank, n);
  std::size_t row = 0;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    K(row, free) = f.one();
    for (std::size_t i = 0; i < red.rank; ++i) K(row, red.pivots[i]) = f.neg(red.R(i, free));
    ++row;
  }
  return K;
}

ExtMatrix inverse(const ExtMatrix& M) {
  if (M.rows() != M.cols()) throw DimensionMismatch("inverse of a non-square matrix");
  const std::size_t n = M.rows();
  const RrefResult red = rref(M.hstack(ExtMatrix::identity(M.field_ptr(), n)));
  if (red.rank < n || red.pivots[n - 1] != n - 1) throw SingularMatrix();
  ExtMatrix inv(M.field_ptr(), n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = red.R(r, n + c);
  return inv;
}

// ------------------------------------------------------ elimination over F

namespace {

FqDense to_dense(const BaseMatrix& M) {
  FqDense D(M.q(), M.rows(), M.cols());
  for (std::size_t r = 0; r < M.rows(); ++r)
    for (std::size_t c = 0; c < M.cols(); ++c)
      if (M(r, c)) D.set(r, c, M(r, c));
  return D;
}

}  // namespace

BaseRref rref_base(const BaseMatrix& M) {
  FqDense D = to_dense(M);
  BaseRref res;
  res.pivots = D.rref();
  res.rank = res.pivots.size();
  res.R = BaseMatrix(M.q(), M.rows(), M.cols());
  for (std::size_t r = 0; r < res.rank; ++r)
    for (std::size_t c = 0; c < M.cols(); ++c) res.R(r, c) = D.get(r, c);
  return res;
}

std::size_t rank_base(const BaseMatrix& M) {
  FqDense D = to_dense(M);
  return D.rref().size();
}

BaseMatrix row_basis(const BaseMatrix& M) {
  BaseRref red = rref_base(M);
  std::vector<std::size_t> idx(red.rank);
  for (std::size_t i = 0; i < red.rank; ++i) idx[i] = i;
  return red.R.select_rows(idx);
}

BaseMatrix right_kernel_base(const BaseMatrix& M) {
  const std::uint32_t q = M.q();
  const std::size_t n = M.cols();
  if (M.rows() == 0) return BaseMatrix::identity(q, n);
  const BaseRref red = rref_base(M);
  std::vector<bool> is_pivot(n, false);
  for (auto p : red.pivots) is_pivot[p] = true;
  BaseMatrix K(q, n - red.rank, n);
  std::size_t row = 0;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    K(row, free) = 1;
    for (std::size_t i = 0; i < red.rank; ++i) K(row, red.pivots[i]) = (q - red.R(i, free)) % q;
    ++row;
  }
  return K;
}

BaseMatrix inverse_base(const BaseMatrix& M) {
  if (M.rows() != M.cols()) throw DimensionMismatch("inverse of a non-square matrix");
  const std::size_t n = M.rows();
  const BaseRref red = rref_base(M.hstack(BaseMatrix::identity(M.q(), n)));
  if (red.rank < n || red.pivots[n - 1] != n - 1) throw SingularMatrix();
  BaseMatrix inv(M.q(), n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = red.R(r, n + c);
  return inv;
}

std::size_t column_rank_base(const ExtMatrix& X) {
  const Field& f = X.field();
  const std::size_t m = static_cast<std::size_t>(f.m());
  // one row per column of X, holding the F_q-coordinates of that column
  FqDense D(f.q(), X.cols(), X.rows() * m);
  for (std::size_t c = 0; c < X.cols(); ++c) {
    for (std::size_t r = 0; r < X.rows(); ++r) {
      const Element e = X(r, c);
      if (e.is_zero()) continue;
      for (std::size_t d = 0; d < m; ++d) {
        const std::uint32_t v = f.coeff(e, static_cast<int>(d));
        if (v) D.set(c, r * m + d, v);
      }
    }
  }
  return D.rref().size();
}

BaseMatrix expand_vector(const Field& f, std::span<const Element> x, std::span<const Element> basis) {
  const std::size_t m = static_cast<std::size_t>(f.m());
  BaseMatrix P(f.q(), m, x.size());
  for (std::size_t j = 0; j < x.size(); ++j)
    for (std::size_t d = 0; d < m; ++d) P(d, j) = f.coeff(x[j], static_cast<int>(d));
  if (basis.empty()) return P;
  if (basis.size() != m) throw BadBasis("basis must have m elements");
  BaseMatrix B(f.q(), m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t d = 0; d < m; ++d) B(d, i) = f.coeff(basis[i], static_cast<int>(d));
  BaseMatrix Binv;
  try {
    Binv = inverse_base(B);
  } catch (const SingularMatrix&) {
    throw BadBasis("basis elements are linearly dependent over F_q");
  }
  return Binv * P;
}

AffineSolution solve_base_linear(const Field& f, const std::vector<ExtVector>& columns, const ExtVector& rhs) {
  const std::size_t N = columns.size();
  const std::size_t L = rhs.size();
  const std::size_t m = static_cast<std::size_t>(f.m());
  const std::uint32_t q = f.q();
  for (const auto& c : columns) {
    if (c.size() != L) throw DimensionMismatch("coefficient column length differs from right-hand side");
  }
  FqDense D(q, L * m, N + 1);
  auto fill = [&](std::size_t col, const ExtVector& v) {
    for (std::size_t i = 0; i < L; ++i) {
      const Element e = v[i];
      if (e.is_zero()) continue;
      for (std::size_t d = 0; d < m; ++d) {
        const std::uint32_t c = f.coeff(e, static_cast<int>(d));
        if (c) D.set(i * m + d, col, c);
      }
    }
  };
  for (std::size_t j = 0; j < N; ++j) fill(j, columns[j]);
  fill(N, rhs);
  const auto pivots = D.rref(N + 1);
  if (!pivots.empty() && pivots.back() == N) throw InconsistentSystem();

  AffineSolution sol;
  sol.equations = L * m;
  sol.unknowns = N;
  sol.particular.assign(N, 0);
  for (std::size_t r = 0; r < pivots.size(); ++r) sol.particular[pivots[r]] = D.get(r, N);
  std::vector<bool> is_pivot(N, false);
  for (auto p : pivots) is_pivot[p] = true;
  sol.kernel = BaseMatrix(q, N - pivots.size(), N);
  std::size_t row = 0;
  for (std::size_t free = 0; free < N; ++free) {
    if (is_pivot[free]) continue;
    sol.kernel(row, free) = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      const std::uint32_t v = D.get(r, free);
      if (v) sol.kernel(row, pivots[r]) = (q - v) % q;
    }
    ++row;
  }
  return sol;
}

// ------------------------------------------------------------------ RowSpace

RowSpace::RowSpace(const ExtMatrix& generators) {
  RrefResult red = rref(generators);
  basis_ = red.R.top_rows(red.rank);
  pivots_ = std::move(red.pivots);
}

RowSpace RowSpace::full(FieldPtr f, std::size_t n) { return RowSpace(ExtMatrix::identity(std::move(f), n)); }

RowSpace RowSpace::zero(FieldPtr f, std::size_t n) { return RowSpace(ExtMatrix(std::move(f), 0, n)); }

bool RowSpace::contains(const ExtVector& v) const {
  if (v.size() != ambient()) throw DimensionMismatch("vector length differs from ambient dimension");
  const Field& f = field();
  ExtVector w = v;
  for (std::size_t i = 0; i < dim(); ++i) {
    const Element c = w[pivots_[i]];
    if (c.is_zero()) continue;
    auto b = basis_.row(i);
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (!b[k].is_zero()) w[k] = f.sub(w[k], f.mul(c, b[k]));
    }
  }
  return std::all_of(w.begin(), w.end(), [](Element e) { return e.is_zero(); });
}

bool RowSpace::contains(const RowSpace& o) const {
  for (std::size_t i = 0; i < o.dim(); ++i) {
    if (!contains(o.basis().row_vec(i))) return false;
  }
  return true;
}

RowSpace RowSpace::frobenius(long long i) const { return RowSpace(basis_.frobenius(i)); }

RowSpace intersect_rowspaces(const RowSpace& a, const RowSpace& b) {
  if (a.ambient() != b.ambient()) throw DimensionMismatch("intersection of spaces with different ambient length");
  if (a.dim() == 0) return a;
  if (b.dim() == 0) return b;
  // (A ∩ B)^⊥ = A^⊥ + B^⊥
  const ExtMatrix duals = right_kernel(a.basis()).vstack(right_kernel(b.basis()));
  if (duals.rows() == 0) return a;
  return RowSpace(right_kernel(duals));
}

RowSpace sum_rowspaces(std::span<const RowSpace> spaces) {
  if (spaces.empty()) throw DimensionMismatch("sum of no spaces");
  ExtMatrix stacked = spaces.front().basis();
  for (std::size_t i = 1; i < spaces.size(); ++i) {
    if (spaces[i].ambient() != stacked.cols()) throw DimensionMismatch("sum of spaces with different ambient length");
    stacked = stacked.vstack(spaces[i].basis());
  }
  return RowSpace(stacked);
}

RowSpace sum_rowspaces(const RowSpace& a, const RowSpace& b) {
  const RowSpace both[] = {a, b};
  return sum_rowspaces(both);
}

// ------------------------------------------------------------- serialization

std::string serialize(const ExtMatrix& M) {
  std::string s = std::to_string(M.rows()) + " " + std::to_string(M.cols());
  for (std::size_t r = 0; r < M.rows(); ++r)
    for (std::size_t c = 0; c < M.cols(); ++c) s += " " + Field::to_hex(M(r, c));
  return s;
}

std::string serialize(const BaseMatrix& M) {
  std::string s = std::to_string(M.rows()) + " " + std::to_string(M.cols());
  for (std::size_t r = 0; r < M.rows(); ++r)
    for (std::size_t c = 0; c < M.cols(); ++c) s += " " + std::to_string(M(r, c));
  return s;
}

namespace {

std::pair<std::size_t, std::size_t> read_dims(std::istringstream& in) {
  long long rows = -1, cols = -1;
  if (!(in >> rows >> cols) || rows < 0 || cols < 0) throw ParseError("matrix header must be `rows cols`");
  return {static_cast<std::size_t>(rows), static_cast<std::size_t>(cols)};
}

}  // namespace

ExtMatrix parse_ext_matrix(FieldPtr f, std::string_view text) {
  std::istringstream in{std::string(text)};
  const auto [rows, cols] = read_dims(in);
  ExtMatrix M(f, rows, cols);
  std::string tok;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      if (!(in >> tok)) throw ParseError("matrix has too few entries");
      M(r, c) = f->parse_hex(tok);
    }
  if (in >> tok) throw ParseError("matrix has trailing entries");
  return M;
}

BaseMatrix parse_base_matrix(std::uint32_t q, std::string_view text) {
  std::istringstream in{std::string(text)};
  const auto [rows, cols] = read_dims(in);
  BaseMatrix M(q, rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      long long v;
      if (!(in >> v)) throw ParseError("matrix has too few entries");
      if (v < 0 || v >= q) throw ParseError("base field entry out of range");
      M(r, c) = static_cast<std::uint32_t>(v);
    }
  std::string tok;
  if (in >> tok) throw ParseError("matrix has trailing entries");
  return M;
}

}  // namespace rankcrypt
