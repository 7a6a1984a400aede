#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rankcrypt/field.hpp"

namespace rankcrypt {

using ExtVector = std::vector<Element>;

/// Dense row-major matrix over F_q.
class BaseMatrix {
 public:
  BaseMatrix() = default;
  BaseMatrix(std::uint32_t q, std::size_t rows, std::size_t cols);

  static BaseMatrix identity(std::uint32_t q, std::size_t n);
  static BaseMatrix from_rows(std::uint32_t q, const std::vector<std::vector<std::uint32_t>>& rows);

  std::uint32_t q() const { return q_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }

  std::uint32_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::uint32_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const std::uint32_t> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<std::uint32_t> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

  BaseMatrix operator*(const BaseMatrix& b) const;
  BaseMatrix transpose() const;
  BaseMatrix vstack(const BaseMatrix& b) const;
  BaseMatrix hstack(const BaseMatrix& b) const;
  BaseMatrix select_rows(std::span<const std::size_t> idx) const;
  BaseMatrix select_cols(std::span<const std::size_t> idx) const;
  bool is_zero() const;

  bool operator==(const BaseMatrix&) const = default;

 private:
  std::uint32_t q_ = 2;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<std::uint32_t> data_;
};

/// Dense row-major matrix over F_{q^m}.
class ExtMatrix {
 public:
  ExtMatrix() = default;
  ExtMatrix(FieldPtr field, std::size_t rows, std::size_t cols);

  static ExtMatrix identity(FieldPtr field, std::size_t n);
  static ExtMatrix from_rows(FieldPtr field, const std::vector<ExtVector>& rows);
  static ExtMatrix row_vector(FieldPtr field, ExtVector v);
  // Embeds a matrix over F_q.
  static ExtMatrix lift(FieldPtr field, const BaseMatrix& b);

  const Field& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }

  Element& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Element operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const Element> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<Element> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  ExtVector row_vec(std::size_t r) const { return {row(r).begin(), row(r).end()}; }
  ExtVector col_vec(std::size_t c) const;

  ExtMatrix operator*(const ExtMatrix& b) const;
  ExtMatrix operator*(const BaseMatrix& b) const;
  ExtMatrix operator+(const ExtMatrix& b) const;
  ExtMatrix operator-(const ExtMatrix& b) const;
  ExtMatrix transpose() const;
  ExtMatrix vstack(const ExtMatrix& b) const;
  ExtMatrix hstack(const ExtMatrix& b) const;
  ExtMatrix select_rows(std::span<const std::size_t> idx) const;
  ExtMatrix select_cols(std::span<const std::size_t> idx) const;
  ExtMatrix top_rows(std::size_t count) const;
  // Coordinate-wise Frobenius power.
  ExtMatrix frobenius(long long i) const;

  bool is_zero() const;
  // All entries lie in F_q.
  bool is_base() const;
  BaseMatrix to_base() const;

  bool operator==(const ExtMatrix& o) const;

 private:
  FieldPtr field_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Element> data_;
};

// Vector helpers over F_{q^m}.
ExtVector vec_mul(const ExtVector& v, const ExtMatrix& M);
ExtVector vec_mul(const Field& f, const ExtVector& v, const BaseMatrix& M);
ExtVector vec_add(const Field& f, const ExtVector& a, const ExtVector& b);
ExtVector vec_sub(const Field& f, const ExtVector& a, const ExtVector& b);
ExtVector vec_frobenius(const Field& f, const ExtVector& v, long long i);
ExtVector select(const ExtVector& v, std::span<const std::size_t> idx);

struct RrefResult {
  ExtMatrix R;  // same shape as the input; zero rows at the bottom
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};

/// Reduced row echelon form; pivots are chosen leftmost-column,
/// first-nonzero-row, so the output is a canonical function of the row space.
RrefResult rref(const ExtMatrix& M);
std::size_t rank(const ExtMatrix& M);
// Basis of {x : M x^T = 0}, one vector per row.
ExtMatrix right_kernel(const ExtMatrix& M);
ExtMatrix inverse(const ExtMatrix& M);

struct BaseRref {
  BaseMatrix R;
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};

BaseRref rref_base(const BaseMatrix& M);
std::size_t rank_base(const BaseMatrix& M);
// Rows of the result form a basis of {x : M x^T = 0}.
BaseMatrix right_kernel_base(const BaseMatrix& M);
BaseMatrix inverse_base(const BaseMatrix& M);
// Rref basis of the row space (zero rows dropped).
BaseMatrix row_basis(const BaseMatrix& M);

/// Dimension over F_q of the column span of X.
std::size_t column_rank_base(const ExtMatrix& X);

/// Expansion of x into an m x n matrix over F_q; column j holds the
/// coordinates of x_j. The polynomial basis is used when `basis` is empty.
BaseMatrix expand_vector(const Field& f, std::span<const Element> x, std::span<const Element> basis = {});

/// Solution set over F_q of sum_j a_j * columns[j] = rhs, where the columns
/// and rhs are vectors over F_{q^m}. Each equation over F_{q^m} contributes
/// m equations over F_q.
struct AffineSolution {
  std::vector<std::uint32_t> particular;
  BaseMatrix kernel;  // one kernel vector per row
  std::size_t equations = 0;  // F_q equations after expansion
  std::size_t unknowns = 0;
};

// Throws InconsistentSystem when no solution exists.
AffineSolution solve_base_linear(const Field& f, const std::vector<ExtVector>& columns, const ExtVector& rhs);

/// A subspace of F_{q^m}^n represented by its rref basis.
class RowSpace {
 public:
  RowSpace() = default;
  explicit RowSpace(const ExtMatrix& generators);
  // Whole space F_{q^m}^n.
  static RowSpace full(FieldPtr f, std::size_t n);
  static RowSpace zero(FieldPtr f, std::size_t n);

  const ExtMatrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  std::size_t dim() const { return basis_.rows(); }
  std::size_t ambient() const { return basis_.cols(); }
  const Field& field() const { return basis_.field(); }

  bool contains(const ExtVector& v) const;
  bool contains(const RowSpace& o) const;
  RowSpace frobenius(long long i) const;
  // The rref basis has all entries in F_q.
  bool is_base_rational() const { return basis_.is_base(); }

  bool operator==(const RowSpace& o) const { return basis_ == o.basis_; }

 private:
  ExtMatrix basis_;
  std::vector<std::size_t> pivots_;
};

RowSpace intersect_rowspaces(const RowSpace& a, const RowSpace& b);
RowSpace sum_rowspaces(std::span<const RowSpace> spaces);
RowSpace sum_rowspaces(const RowSpace& a, const RowSpace& b);

// Text form: `rows cols` followed by row-major entries (hex over F_{q^m},
// decimal over F_q), whitespace separated.
std::string serialize(const ExtMatrix& M);
std::string serialize(const BaseMatrix& M);
ExtMatrix parse_ext_matrix(FieldPtr f, std::string_view text);
BaseMatrix parse_base_matrix(std::uint32_t q, std::string_view text);

}  // namespace rankcrypt
