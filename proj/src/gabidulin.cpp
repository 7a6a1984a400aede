#include "rankcrypt/gabidulin.hpp"

#include "rankcrypt/errors.hpp"
#include "rankcrypt/rank_metric.hpp"

namespace rankcrypt {

GabidulinCode GabidulinCode::make(FieldPtr f, ExtVector alpha, std::size_t k) {
  const std::size_t n = alpha.size();
  if (k < 1 || k > n || n > static_cast<std::size_t>(f->m()))
    throw BadDims("Gabidulin code needs 1 <= k <= n <= m");
  if (rank_weight(*f, alpha) != n) throw DependentGenerator("generator vector is not F_q-independent");
  ExtMatrix G = moore(f, alpha, k);
  return GabidulinCode(std::move(f), std::move(alpha), k, std::move(G));
}

ExtVector GabidulinCode::encode(const ExtVector& msg) const {
  if (msg.size() != k_) throw DimensionMismatch("message length differs from code dimension");
  return vec_mul(msg, generator_);
}

std::optional<GabidulinCode::Decoded> GabidulinCode::try_decode(const ExtVector& y, std::size_t tau) const {
  try {
    return decode(y, tau);
  } catch (const DecodeFailure&) {
    return std::nullopt;
  }
}

namespace {

// Coefficients of the q-polynomial composition a(b(x)).
std::vector<Element> compose(const Field& f, const std::vector<Element>& a, const std::vector<Element>& b) {
  std::vector<Element> out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j].is_zero()) continue;
      out[i + j] = f.add(out[i + j], f.mul(a[i], f.frob(b[j], static_cast<long long>(i))));
    }
  }
  return out;
}

}  // namespace

GabidulinCode::Decoded GabidulinCode::decode(const ExtVector& y, std::size_t tau) const {
  const Field& f = *field_;
  const std::size_t n = this->n();
  if (y.size() != n) throw DimensionMismatch("received word length differs from code length");
  if (2 * tau > n - k_) throw BadDims("decoding radius exceeds half the minimum distance");

  // Reconstruction: V(y_j) = N(alpha_j), qdeg V <= tau, qdeg N <= tau + k - 1.
  const std::size_t nv = tau + 1, nn = tau + k_;
  ExtMatrix A(field_, n, nv + nn);
  for (std::size_t j = 0; j < n; ++j) {
    Element yp = y[j], ap = alpha_[j];
    for (std::size_t i = 0; i < nn; ++i) {
      if (i < nv) A(j, i) = yp;
      A(j, nv + i) = f.neg(ap);
      yp = f.frob(yp, 1);
      ap = f.frob(ap, 1);
    }
  }
  const ExtMatrix K = right_kernel(A);
  if (K.rows() == 0) throw DecodeFailure();
  std::vector<Element> V(nv), N(nn);
  for (std::size_t i = 0; i < nv; ++i) V[i] = K(0, i);
  for (std::size_t i = 0; i < nn; ++i) N[i] = K(0, nv + i);

  std::size_t d = nv;
  while (d > 0 && V[d - 1].is_zero()) --d;
  if (d == 0) throw DecodeFailure();
  --d;

  // N = V o F, solved from the top coefficient down.
  std::vector<Element> F(k_);
  const Element lead_inv = f.inv(V[d]);
  for (std::size_t jj = k_; jj-- > 0;) {
    if (d + jj >= nn) continue;  // coefficient not represented, so zero
    Element acc = N[d + jj];
    for (std::size_t i = 0; i < d; ++i) {
      const std::size_t idx = d + jj - i;
      if (idx < k_ && !V[i].is_zero()) acc = f.sub(acc, f.mul(V[i], f.frob(F[idx], static_cast<long long>(i))));
    }
    F[jj] = f.frob(f.mul(acc, lead_inv), -static_cast<long long>(d));
  }
  std::vector<Element> check = compose(f, V, F);
  check.resize(std::max(check.size(), N.size()));
  for (std::size_t i = 0; i < check.size(); ++i) {
    const Element ni = i < N.size() ? N[i] : Element{};
    if (check[i] != ni) throw DecodeFailure();
  }

  Decoded out;
  out.msg.assign(F.begin(), F.end());
  out.error = vec_sub(f, y, encode(out.msg));
  if (rank_weight(f, out.error) > tau) throw DecodeFailure();
  return out;
}

// ---------------------------------------------------------------------------

ExtVector RecoveredDecoder::decode(const ExtVector& y) const {
  const FieldPtr& f = change_of_basis.field_ptr();
  const GabidulinCode code = GabidulinCode::make(f, canonical_generator, k());
  const auto d = code.decode(select(y, columns), error_capacity);
  return vec_mul(d.msg, inverse_change);
}

RecoveredDecoder recover_canonical(const ExtMatrix& G_obs) {
  const FieldPtr& fp = G_obs.field_ptr();
  const Field& f = *fp;
  const std::size_t k = G_obs.rows(), n = G_obs.cols();
  const std::size_t m = static_cast<std::size_t>(f.m());
  if (k == 0 || k > n || n > m) throw NotGabidulin("generator shape cannot belong to a Gabidulin code");
  if (rank(G_obs) != k) throw NotGabidulin("generator does not have full row rank");

  ExtVector gamma;
  if (k == n) {
    // every full-rank generator spans the whole space; any basis will do
    gamma.resize(n);
    Element p = f.one();
    for (std::size_t i = 0; i < n; ++i) {
      gamma[i] = p;
      p = f.mul(p, f.x());
    }
  } else if (k == 1) {
    gamma = G_obs.row_vec(0);
  } else {
    RowSpace C(G_obs);
    for (std::size_t step = 1; step < k; ++step) {
      RowSpace next = intersect_rowspaces(C, C.frobenius(1));
      if (next.dim() + 1 != C.dim()) throw NotGabidulin("intersection chain does not drop by one");
      C = std::move(next);
    }
    // C is spanned by beta * alpha^{[k-1]}
    gamma = vec_frobenius(f, C.basis().row_vec(0), static_cast<long long>(m - k + 1));
  }
  if (rank_weight(f, gamma) != n) throw NotGabidulin("recovered generator vector is dependent");

  const ExtMatrix M = moore(fp, gamma, k);
  const RrefResult red = rref(M);
  const ExtMatrix T = G_obs.select_cols(red.pivots) * inverse(M.select_cols(red.pivots));
  if (!(T * M == G_obs)) throw NotGabidulin("generator is not a row transform of the recovered Moore matrix");

  RecoveredDecoder dec;
  dec.columns.resize(n);
  for (std::size_t i = 0; i < n; ++i) dec.columns[i] = i;
  dec.canonical_generator = std::move(gamma);
  dec.inverse_change = inverse(T);
  dec.change_of_basis = T;
  dec.error_capacity = (n - k) / 2;
  return dec;
}

ExtVector decode_arbitrary(const ExtMatrix& G_obs, const ExtVector& y, std::size_t tau) {
  RecoveredDecoder dec = recover_canonical(G_obs);
  if (tau > dec.error_capacity) throw BadDims("decoding radius exceeds half the minimum distance");
  dec.error_capacity = tau;
  return dec.decode(y);
}

}  // namespace rankcrypt
