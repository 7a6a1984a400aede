#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rankcrypt/errors.hpp"
#include "rankcrypt/matrix.hpp"

using namespace rankcrypt;

namespace {

ExtMatrix random_ext(const FieldPtr& f, Rng& rng, std::size_t r, std::size_t c) {
  ExtMatrix M(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) M(i, j) = f->random(rng);
  return M;
}

BaseMatrix random_base(std::uint32_t q, Rng& rng, std::size_t r, std::size_t c) {
  BaseMatrix M(q, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) M(i, j) = static_cast<std::uint32_t>(uniform_below(rng, q));
  return M;
}

ExtMatrix random_invertible(const FieldPtr& f, Rng& rng, std::size_t n) {
  for (;;) {
    ExtMatrix M = random_ext(f, rng, n, n);
    if (rank(M) == n) return M;
  }
}

// All x in F_2^n with M x^T = 0.
std::vector<std::uint32_t> brute_kernel_f2(const BaseMatrix& M) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t x = 0; x < (1u << M.cols()); ++x) {
    bool ok = true;
    for (std::size_t r = 0; r < M.rows() && ok; ++r) {
      std::uint32_t s = 0;
      for (std::size_t c = 0; c < M.cols(); ++c) s ^= M(r, c) & ((x >> c) & 1);
      ok = (s == 0);
    }
    if (ok) out.push_back(x);
  }
  return out;
}

}  // namespace

TEST_CASE("rref basics") {
  auto f = Field::make(2, 3);
  auto I = ExtMatrix::identity(f, 4);
  auto r = rref(I);
  CHECK(r.R == I);
  CHECK(r.rank == 4);
  CHECK(r.pivots == std::vector<std::size_t>{0, 1, 2, 3});

  auto Z = ExtMatrix(f, 3, 5);
  CHECK(rref(Z).rank == 0);
  CHECK(rref(Z).pivots.empty());

  Rng rng(1);
  ExtMatrix D(f, 2, 2);
  D(0, 0) = D(1, 0) = f->random_nonzero(rng);
  D(0, 1) = D(1, 1) = f->random(rng);
  CHECK(rank(D) == 1);
}

TEST_CASE("rref is canonical and row-equivalent") {
  auto f = Field::make(2, 6);
  Rng rng(2);
  for (int it = 0; it < 50; ++it) {
    ExtMatrix M = random_ext(f, rng, 3, 6);
    M = M.vstack(ExtMatrix(f, 1, 6));
    ExtMatrix S = random_invertible(f, rng, 4);
    CHECK(rref(M).R == rref(S * M).R);
    RowSpace a(M), b(S * M);
    CHECK(a == b);
    CHECK(a.contains(b));
  }
}

TEST_CASE("right_kernel_base") {
  BaseMatrix A(2, 3, 7);
  for (std::size_t i = 0; i < 3; ++i) A(i, i) = 1;
  BaseMatrix K = right_kernel_base(A);
  BaseMatrix expect(2, 4, 7);
  for (std::size_t i = 0; i < 4; ++i) expect(i, 3 + i) = 1;
  CHECK(K == expect);

  CHECK(right_kernel_base(BaseMatrix::identity(2, 5)).rows() == 0);

  Rng rng(4);
  int tested = 0;
  while (tested < 100) {
    BaseMatrix M = random_base(2, rng, 3, 6);
    if (rank_base(M) != 3) continue;
    ++tested;
    BaseMatrix Kb = right_kernel_base(M);
    REQUIRE(Kb.rows() == 3);
    CHECK((M * Kb.transpose()).is_zero());
    CHECK(rank_base(Kb) == 3);
    CHECK(brute_kernel_f2(M).size() == 8);
  }

  for (int it = 0; it < 100; ++it) {
    BaseMatrix M = random_base(5, rng, 3, 6);
    BaseMatrix Kb = right_kernel_base(M);
    CHECK(Kb.rows() == 6 - rank_base(M));
    CHECK((M * Kb.transpose()).is_zero());
  }
}

TEST_CASE("ext kernel and inverse") {
  auto f = Field::make(3, 4);
  Rng rng(6);
  for (int it = 0; it < 30; ++it) {
    ExtMatrix M = random_ext(f, rng, 3, 7);
    ExtMatrix K = right_kernel(M);
    CHECK(K.rows() == 7 - rank(M));
    CHECK((M * K.transpose()).is_zero());
    ExtMatrix S = random_invertible(f, rng, 5);
    CHECK(S * inverse(S) == ExtMatrix::identity(f, 5));
  }
  ExtMatrix sing(f, 2, 2);
  CHECK_THROWS_AS(inverse(sing), SingularMatrix);
}

TEST_CASE("column_rank_base") {
  auto f = Field::make(2, 6);
  Rng rng(7);
  CHECK(column_rank_base(ExtMatrix(f, 3, 5)) == 0);
  for (int it = 0; it < 50; ++it) {
    BaseMatrix B = random_base(2, rng, 4, 7);
    CHECK(column_rank_base(ExtMatrix::lift(f, B)) == rank_base(B));
  }
  for (int it = 0; it < 50; ++it) {
    ExtVector x(6);
    for (auto& e : x) e = f->random(rng);
    auto E = expand_vector(*f, x);
    CHECK(column_rank_base(ExtMatrix::row_vector(f, x)) == rank_base(E));
  }
}

TEST_CASE("column rank is invariant under invertible row mixing") {
  auto f = Field::make(2, 6);
  Rng rng(8);
  for (int it = 0; it < 100; ++it) {
    const std::size_t k = 1 + uniform_below(rng, 4);
    const std::size_t n = 1 + uniform_below(rng, 8);
    const std::size_t t = uniform_below(rng, n + 1);
    // X = V U with U over F_q, so the column rank is at most t
    ExtMatrix X = random_ext(f, rng, k, t) * random_base(2, rng, t, n);
    ExtMatrix S = random_invertible(f, rng, k);
    CHECK(column_rank_base(S * X) == column_rank_base(X));
    CHECK(column_rank_base(X) <= t);
  }
}

TEST_CASE("expand_vector") {
  auto f = Field::make(2, 3, Poly{1, 1, 0, 1});
  ExtVector zero(4);
  CHECK(rank_base(expand_vector(*f, zero)) == 0);
  ExtVector rational{Element{1}, Element{0}, Element{1}};
  CHECK(rank_base(expand_vector(*f, rational)) == 1);
  const Element a = f->x();
  ExtVector v{f->one(), a, f->mul(a, a)};
  BaseMatrix E = expand_vector(*f, v);
  CHECK(E == BaseMatrix::identity(2, 3));

  // coordinates in another basis keep the rank
  ExtVector basis{f->add(f->one(), a), a, f->mul(a, a)};
  BaseMatrix E2 = expand_vector(*f, v, basis);
  CHECK(rank_base(E2) == 3);
  ExtVector bad{f->one(), f->one(), a};
  CHECK_THROWS_AS(expand_vector(*f, v, bad), BadBasis);
}

TEST_CASE("rank of x H never exceeds rank of x") {
  auto f = Field::make(2, 8);
  Rng rng(10);
  for (int it = 0; it < 100; ++it) {
    ExtVector x(8);
    for (auto& e : x) e = f->random(rng);
    BaseMatrix H = random_base(2, rng, 8, 5);
    CHECK(rank_base(expand_vector(*f, vec_mul(*f, x, H))) <= rank_base(expand_vector(*f, x)));
  }
}

TEST_CASE("solve_base_linear") {
  auto f = Field::make(2, 3, Poly{1, 1, 0, 1});
  const Element a = f->x();

  auto s1 = solve_base_linear(*f, {{f->one()}}, {f->zero()});
  CHECK(s1.kernel.rows() == 0);
  CHECK(s1.particular == std::vector<std::uint32_t>{0});

  auto s2 = solve_base_linear(*f, {ExtVector{}, ExtVector{}, ExtVector{}}, ExtVector{});
  CHECK(s2.kernel.rows() == 3);

  auto s3 = solve_base_linear(*f, {{f->sub(f->mul(a, a), a)}}, {f->zero()});
  CHECK(s3.kernel.rows() == 0);

  CHECK_THROWS_AS(solve_base_linear(*f, {{f->one()}}, {a}), InconsistentSystem);

  // random systems: every enumerated solution satisfies the equations
  auto g = Field::make(2, 4);
  Rng rng(12);
  for (int it = 0; it < 30; ++it) {
    std::vector<ExtVector> cols(6, ExtVector(2));
    for (auto& c : cols)
      for (auto& e : c) e = g->random(rng);
    ExtVector rhs(2);
    std::uint32_t secret = static_cast<std::uint32_t>(uniform_below(rng, 64));
    for (std::size_t j = 0; j < 6; ++j)
      if ((secret >> j) & 1) rhs = vec_add(*g, rhs, cols[j]);
    auto sol = solve_base_linear(*g, cols, rhs);
    CHECK(sol.equations == 8);
    std::size_t count = 0;
    for (std::uint32_t x = 0; x < 64; ++x) {
      ExtVector acc(2);
      for (std::size_t j = 0; j < 6; ++j)
        if ((x >> j) & 1) acc = vec_add(*g, acc, cols[j]);
      if (acc == rhs) ++count;
    }
    CHECK(count == (1u << sol.kernel.rows()));
    ExtVector acc(2);
    for (std::size_t j = 0; j < 6; ++j)
      if (sol.particular[j]) acc = vec_add(*g, acc, cols[j]);
    CHECK(acc == rhs);
  }
}

TEST_CASE("row space intersection and sum") {
  auto f = Field::make(2, 6);
  Rng rng(13);
  for (int it = 0; it < 50; ++it) {
    RowSpace A(random_ext(f, rng, 1 + uniform_below(rng, 5), 6));
    RowSpace B(random_ext(f, rng, 1 + uniform_below(rng, 5), 6));
    RowSpace I = intersect_rowspaces(A, B);
    RowSpace S = sum_rowspaces(A, B);
    CHECK(A.dim() + B.dim() == S.dim() + I.dim());
    CHECK(A.contains(I));
    CHECK(B.contains(I));
    CHECK(intersect_rowspaces(A, A) == A);
  }
  ExtMatrix top(f, 2, 4), bottom(f, 2, 4);
  top(0, 0) = top(1, 1) = f->one();
  bottom(0, 2) = bottom(1, 3) = f->one();
  CHECK(intersect_rowspaces(RowSpace(top), RowSpace(bottom)).dim() == 0);
  RowSpace one[] = {RowSpace(top)};
  CHECK(sum_rowspaces(one) == RowSpace(top));
}

TEST_CASE("Frobenius commutes with inversion") {
  auto f = Field::make(2, 8);
  Rng rng(14);
  for (int it = 0; it < 100; ++it) {
    ExtMatrix M = random_invertible(f, rng, 4);
    CHECK(inverse(M).frobenius(1) == inverse(M.frobenius(1)));
  }
}

TEST_CASE("Frobenius-stable spaces are exactly the F_q-rational ones") {
  auto f = Field::make(2, 8);
  Rng rng(15);
  for (int it = 0; it < 100; ++it) {
    RowSpace R(ExtMatrix::lift(f, random_base(2, rng, 3, 7)));
    CHECK(R.is_base_rational());
    CHECK(R.frobenius(1) == R);

    RowSpace N(random_ext(f, rng, 3, 7));
    const bool stable = N.frobenius(1) == N;
    CHECK(stable == N.is_base_rational());
  }
}

TEST_CASE("serialization round trip") {
  auto f = Field::make(2, 8);
  Rng rng(16);
  ExtMatrix M = random_ext(f, rng, 3, 4);
  CHECK(parse_ext_matrix(f, serialize(M)) == M);
  BaseMatrix B = random_base(3, rng, 2, 5);
  CHECK(parse_base_matrix(3, serialize(B)) == B);
  CHECK_THROWS_AS(parse_base_matrix(3, "1 2 0"), ParseError);
  CHECK_THROWS_AS(parse_base_matrix(3, "1 1 3"), ParseError);
  CHECK_THROWS_AS(parse_ext_matrix(f, "1 1 100"), ParseError);
}
