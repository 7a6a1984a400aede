#include "rankcrypt/attacks.hpp"

#include <sstream>

#include "rankcrypt/errors.hpp"
#include "rankcrypt/rank_metric.hpp"

namespace rankcrypt {

std::string_view reason_name(FailReason r) {
  switch (r) {
    case FailReason::None: return "none";
    case FailReason::WrongScheme: return "wrong-scheme";
    case FailReason::RankOneSpanEmpty: return "rank-one-span-empty";
    case FailReason::ColumnSelectionFailed: return "column-selection-failed";
    case FailReason::AssumptionViolated: return "assumption-violated";
    case FailReason::XStarStarRankDeficient: return "xstarstar-rank-deficient";
    case FailReason::ConditionViolated: return "condition-violated";
    case FailReason::Inconsistent: return "inconsistent";
    case FailReason::DecodeFailure: return "decode-failure";
  }
  return "?";
}

std::optional<std::string> AttackTranscript::diagnostic(std::string_view key) const {
  for (auto it = diagnostics.rbegin(); it != diagnostics.rend(); ++it)
    if (it->first == key) return it->second;
  return std::nullopt;
}

std::string AttackTranscript::dump() const {
  std::ostringstream o;
  o << "scheme " << scheme_name(scheme) << "\n";
  o << "s_used " << s_used << "\n";
  o << "U_rows " << U.rows() << "\nH_rows " << H.rows() << "\n";
  o << "columns";
  for (auto c : columns) o << ' ' << c;
  o << "\nerror_capacity " << decoder.error_capacity << "\n";
  for (const auto& [k, v] : diagnostics) o << k << ' ' << v << "\n";
  return o.str();
}

std::vector<std::size_t> independent_columns(const ExtMatrix& M) {
  std::vector<std::size_t> keep;
  std::size_t r = 0;
  for (std::size_t j = 0; j < M.cols(); ++j) {
    keep.push_back(j);
    const std::size_t next = column_rank_base(M.select_cols(keep));
    if (next == r) {
      keep.pop_back();
    } else {
      r = next;
    }
  }
  return keep;
}

ExtVector attack_decrypt(const AttackTranscript& tr, const Ciphertext& ct) {
  if (ct.y.size() != tr.H.cols()) throw DecodeFailure("ciphertext length does not match the attacked key");
  return tr.decoder.decode(vec_mul(tr.decoder.change_of_basis.field(), ct.y, tr.H.transpose()));
}

namespace {

using Log = std::vector<std::pair<std::string, std::string>>;

void note(Log& log, std::string key, std::size_t v) { log.emplace_back(std::move(key), std::to_string(v)); }

struct Attempt {
  FailReason reason = FailReason::None;
  std::string detail;
  std::optional<AttackTranscript> tr;
};

Attempt fail(FailReason r, std::string detail) { return Attempt{r, std::move(detail), std::nullopt}; }

// An eavesdropper can still encrypt under the public key, so a recovered
// decoder is checked against messages it chose itself.
bool self_check(const PublicKey& pub, const AttackTranscript& tr) {
  Rng rng(0x7e57'c1f3'0000'0001ULL);
  for (int i = 0; i < 2; ++i) {
    ExtVector msg(pub.G_pub.rows());
    for (auto& e : msg) e = pub.field->random(rng);
    try {
      if (attack_decrypt(tr, encrypt(rng, pub, msg)) != msg) return false;
    } catch (const DecodeFailure&) {
      return false;
    }
  }
  return true;
}

// Builds the decoder for the projected code G_pub * H^T.
Attempt finish(const PublicKey& pub, Scheme scheme, BaseMatrix U, BaseMatrix H, std::size_t s, Log& log) {
  const std::size_t k = pub.G_pub.rows();
  const ExtMatrix P = pub.G_pub * H.transpose();
  const auto J = independent_columns(P);
  note(log, "projected_length", P.cols());
  note(log, "selected_columns", J.size());
  if (J.size() < k || (J.size() - k) / 2 < pub.budget)
    return fail(FailReason::ColumnSelectionFailed, "too few independent columns for the error budget");
  AttackTranscript tr;
  try {
    tr.decoder = recover_canonical(P.select_cols(J));
  } catch (const NotGabidulin& e) {
    return fail(FailReason::Inconsistent, e.what());
  }
  tr.decoder.columns = J;
  tr.scheme = scheme;
  tr.s_used = s;
  tr.U = std::move(U);
  tr.H = std::move(H);
  tr.columns = J;
  if (!self_check(pub, tr)) return fail(FailReason::DecodeFailure, "recovered decoder fails on a test ciphertext");
  return Attempt{FailReason::None, {}, std::move(tr)};
}

AttackOutcome conclude(Attempt at, Log& log) {
  AttackOutcome out;
  out.diagnostics = std::move(log);
  if (at.tr) {
    out.broken = true;
    at.tr->diagnostics = out.diagnostics;
    out.transcript = std::move(at.tr);
  } else {
    out.reason = at.reason;
    out.detail = std::move(at.detail);
  }
  return out;
}

AttackResult with_ciphertext(AttackOutcome out, const Ciphertext& ct) {
  AttackResult res{std::nullopt, std::move(out)};
  if (!res.outcome.broken) return res;
  try {
    res.msg = attack_decrypt(*res.outcome.transcript, ct);
  } catch (const DecodeFailure& e) {
    res.outcome.broken = false;
    res.outcome.reason = FailReason::DecodeFailure;
    res.outcome.detail = e.what();
  }
  return res;
}

std::uint32_t addmod(std::uint32_t a, std::uint32_t b, std::uint32_t q) { return (a + b) % q; }

}  // namespace

// ---------------------------------------------------------------- Overbeck

AttackOutcome overbeck_attack(const PublicKey& pub, std::size_t u) {
  Log log;
  if (!is_ggpt(pub.params.scheme)) return conclude(fail(FailReason::WrongScheme, "needs a GGPT key"), log);
  const ExtMatrix& G = pub.G_pub;
  const std::size_t k = G.rows(), N = G.cols(), n = pub.params.n, that = pub.params.that;
  const std::uint32_t q = pub.field->q();
  if (that == 0)
    return conclude(finish(pub, pub.params.scheme, BaseMatrix(q, 0, N), BaseMatrix::identity(q, N), 0, log), log);

  ExtMatrix ext = G;
  for (std::size_t i = 1; i <= u; ++i) ext = ext.vstack(G.frobenius(static_cast<long long>(i)));
  const std::size_t r = rank(ext);
  const std::size_t gab = std::min(k + u, n);
  const std::size_t xss = r > gab ? r - gab : 0;
  note(log, "extended_rank", r);
  note(log, "xstarstar_rank", xss);
  if (xss < that)
    return conclude(fail(FailReason::XStarStarRankDeficient, "lower distortion block is not of full rank"), log);

  const ExtMatrix D = right_kernel(ext);
  note(log, "dual_dim", D.rows());
  if (D.rows() == 0) return conclude(fail(FailReason::Inconsistent, "extended code has no dual"), log);
  GrassmannSupport sup;
  try {
    sup = grassmann_support(D);
  } catch (const InternalInconsistency& e) {
    return conclude(fail(FailReason::Inconsistent, e.what()), log);
  }
  note(log, "dual_support_dim", sup.U.rows());
  if (sup.U.rows() != n) return conclude(fail(FailReason::Inconsistent, "dual support has the wrong dimension"), log);
  return conclude(finish(pub, pub.params.scheme, BaseMatrix(q, 0, N), sup.U, u, log), log);
}

// --------------------------------------------------------------------- GPT

AttackOutcome gpt_attack(const PublicKey& pub) {
  Log log;
  if (pub.params.scheme != Scheme::Gpt) return conclude(fail(FailReason::WrongScheme, "needs a GPT key"), log);
  const ExtMatrix& G = pub.G_pub;
  const std::size_t k = G.rows(), n = G.cols();
  const std::uint32_t q = pub.field->q();
  const std::size_t tp = (n - k) / 2;
  if (pub.budget == 0 || pub.budget > tp)
    return conclude(fail(FailReason::ConditionViolated, "error budget outside 1..floor((n-k)/2)"), log);
  const std::size_t t = tp - pub.budget;
  note(log, "t", t);
  // minimum distance n-k+1 >= 2t'+1 >= s+t+2 for every s <= t
  if (n - k + 1 < 2 * t + 2) return conclude(fail(FailReason::ConditionViolated, "distance bound fails"), log);

  Attempt last = finish(pub, Scheme::Gpt, BaseMatrix(q, 0, n), BaseMatrix::identity(q, n), 0, log);
  if (last.tr) return conclude(std::move(last), log);
  last = fail(FailReason::RankOneSpanEmpty, "no depth produced rank-one elements");
  for (std::size_t s = 1; s <= t; ++s) {
    const RowSpace V = frobenius_sum_space(G, s + 1);
    BaseMatrix U = rank_one_span(V);
    note(log, "sum_dim[" + std::to_string(s) + "]", V.dim());
    note(log, "rank_one_dim[" + std::to_string(s) + "]", U.rows());
    if (U.rows() == 0 || U.rows() > t) continue;
    BaseMatrix H = right_kernel_base(U);
    Attempt at = finish(pub, Scheme::Gpt, std::move(U), std::move(H), s, log);
    if (at.tr) return conclude(std::move(at), log);
    last = std::move(at);
  }
  return conclude(std::move(last), log);
}

// ------------------------------------------------------------ Smart Approach

AttackOutcome sa_attack(const PublicKey& pub, std::optional<std::size_t> a) {
  Log log;
  if (!is_ggpt(pub.params.scheme)) return conclude(fail(FailReason::WrongScheme, "needs a GGPT key"), log);
  const ExtMatrix& G = pub.G_pub;
  const std::size_t k = G.rows(), N = G.cols(), n = pub.params.n, that = pub.params.that;
  const std::uint32_t q = pub.field->q();
  if (a && *a > that) return conclude(fail(FailReason::ConditionViolated, "a exceeds that"), log);

  std::vector<std::size_t> candidates;
  if (a) {
    candidates.push_back(*a);
  } else {
    for (std::size_t c = that + 1; c-- > 0;) candidates.push_back(c);
  }
  Attempt last = fail(FailReason::RankOneSpanEmpty, "no candidate tried");
  for (std::size_t cand : candidates) {
    const std::size_t depth = that - cand;
    const RowSpace V = frobenius_sum_space(G, depth + 1);
    BaseMatrix U = rank_one_span(V);
    note(log, "sum_dim[" + std::to_string(depth) + "]", V.dim());
    note(log, "rank_one_dim[" + std::to_string(depth) + "]", U.rows());
    BaseMatrix H = U.rows() ? right_kernel_base(U) : BaseMatrix::identity(q, N);
    Attempt at = finish(pub, pub.params.scheme, std::move(U), std::move(H), depth, log);
    if (at.tr) return conclude(std::move(at), log);
    last = std::move(at);
  }
  // the sufficient condition that - a < (n-k-1)/2
  if (a && 2 * (that - *a) + 1 >= n - k) {
    last.reason = FailReason::ConditionViolated;
    last.detail = "that - a is not below (n-k-1)/2; " + last.detail;
  }
  return conclude(std::move(last), log);
}

// ----------------------------------------------------------------- Loidreau

namespace {

BaseMatrix reshape(std::span<const std::uint32_t> flat, std::uint32_t q, std::size_t rows, std::size_t cols) {
  BaseMatrix M(q, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) M(i, j) = flat[i * cols + j];
  return M;
}

ExtVector flatten(const ExtMatrix& M) {
  ExtVector v;
  v.reserve(M.rows() * M.cols());
  for (std::size_t i = 0; i < M.rows(); ++i) v.insert(v.end(), M.row(i).begin(), M.row(i).end());
  return v;
}

Attempt loidreau_once(const PublicKey& pub, std::size_t a, Log& log) {
  const ExtMatrix& G = pub.G_pub;
  const FieldPtr& fp = pub.field;
  const Field& f = *fp;
  const std::uint32_t q = f.q();
  const std::size_t k = G.rows(), N = G.cols(), n = pub.params.n, that = N - n;
  const std::size_t m = static_cast<std::size_t>(f.m());
  if (a == 0 || a >= k) return fail(FailReason::ConditionViolated, "needs 1 <= a < k");
  if (k * m < N) return fail(FailReason::ConditionViolated, "k*m < n + that");
  const std::string tag = "[a=" + std::to_string(a) + "]";

  // rank-one elements of the stepped Frobenius sum span <[0|I]sigma>
  const std::size_t step = k - a;
  const std::size_t ell = (n + step - 1) / step;
  BaseMatrix U;
  for (std::size_t L = ell; L <= ell + 2; ++L) {
    const RowSpace S2 = frobenius_sum_space(G, L, step);
    U = rank_one_span(S2);
    note(log, "ell" + tag, L);
    note(log, "sum_dim" + tag, S2.dim());
    note(log, "rank_one_dim" + tag, U.rows());
    if (U.rows() == n) break;
  }
  if (U.rows() != n) return fail(FailReason::AssumptionViolated, "rank-one span does not have dimension n");
  const BaseMatrix HU = right_kernel_base(U);
  const ExtMatrix W = G * HU.transpose();

  // (G - W V) H_U^T = 0 with V over F_q, that x (n + that) unknowns
  std::vector<ExtVector> cols;
  cols.reserve(that * N);
  for (std::size_t i = 0; i < that; ++i) {
    for (std::size_t j = 0; j < N; ++j) {
      ExtVector c(k * that);
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t cc = 0; cc < that; ++cc)
          if (HU(cc, j)) c[r * that + cc] = f.scale(W(r, i), HU(cc, j));
      cols.push_back(std::move(c));
    }
  }
  AffineSolution vsys;
  try {
    vsys = solve_base_linear(f, cols, flatten(W));
  } catch (const InconsistentSystem&) {
    return fail(FailReason::Inconsistent, "V-system has no solution");
  }
  cols.clear();
  note(log, "v_system_unknowns", vsys.unknowns);
  note(log, "v_system_equations", vsys.equations);
  note(log, "v_system_kernel_dim", vsys.kernel.rows());
  const BaseMatrix Vp = reshape(vsys.particular, q, that, N);

  // The V-system leaves V free modulo <U>; pin it by asking that the rows of
  // G - W V, read in U-coordinates, lie in the hidden Gabidulin code.
  const RowSpace D = intersect_rowspaces(RowSpace(G), RowSpace(ExtMatrix::lift(fp, U)));
  note(log, "subcode_dim" + tag, D.dim());
  if (D.dim() != k - a) return fail(FailReason::AssumptionViolated, "public code meets <U> in the wrong dimension");
  const std::vector<std::size_t> piv = rref_base(U).pivots;
  const ExtMatrix Dp = D.basis().select_cols(piv);
  RowSpace Cstar;
  bool found = false;
  for (std::size_t j = 1; k + 2 * j <= n; ++j) {
    const RowSpace E = frobenius_sum_space(Dp, j + 1);
    if (E.dim() != k + j) continue;
    Cstar = intersect_rowspaces(E, E.frobenius(-static_cast<long long>(j)));
    note(log, "closure_depth" + tag, j);
    found = true;
    break;
  }
  if (!found) return fail(FailReason::AssumptionViolated, "subcode does not generate the hidden code");
  if (Cstar.dim() != k) return fail(FailReason::Inconsistent, "recovered hidden code has the wrong dimension");
  const ExtMatrix Pt = right_kernel(Cstar.basis()).transpose();

  const ExtMatrix rhs = (G - W * Vp).select_cols(piv) * Pt;
  std::vector<BaseMatrix> K;
  K.reserve(vsys.kernel.rows());
  for (std::size_t r = 0; r < vsys.kernel.rows(); ++r) {
    K.push_back(reshape(vsys.kernel.row(r), q, that, N));
    cols.push_back(flatten((W * K.back().select_cols(piv)) * Pt));
  }
  AffineSolution csys;
  try {
    csys = solve_base_linear(f, cols, flatten(rhs));
  } catch (const InconsistentSystem&) {
    return fail(FailReason::Inconsistent, "no V places the residual code inside the hidden code");
  }
  note(log, "pin_system_kernel_dim", csys.kernel.rows());
  BaseMatrix V = Vp;
  for (std::size_t r = 0; r < K.size(); ++r) {
    const std::uint32_t c = csys.particular[r];
    if (!c) continue;
    for (std::size_t i = 0; i < that; ++i)
      for (std::size_t j = 0; j < N; ++j) V(i, j) = addmod(V(i, j), c * K[r](i, j) % q, q);
  }
  BaseMatrix HV = right_kernel_base(V);
  return finish(pub, pub.params.scheme, std::move(U), std::move(HV), a, log);
}

}  // namespace

AttackOutcome loidreau_attack(const PublicKey& pub, std::optional<std::size_t> a) {
  Log log;
  if (!is_ggpt(pub.params.scheme)) return conclude(fail(FailReason::WrongScheme, "needs a GGPT key"), log);
  if (a) return conclude(loidreau_once(pub, *a, log), log);
  Attempt last = fail(FailReason::ConditionViolated, "k < 2");
  for (std::size_t c = 1; c < pub.G_pub.rows(); ++c) {
    last = loidreau_once(pub, c, log);
    if (last.tr) break;
  }
  return conclude(std::move(last), log);
}

AttackResult overbeck_attack(const PublicKey& pub, std::size_t u, const Ciphertext& ct) {
  return with_ciphertext(overbeck_attack(pub, u), ct);
}
AttackResult gpt_attack(const PublicKey& pub, const Ciphertext& ct) { return with_ciphertext(gpt_attack(pub), ct); }
AttackResult sa_attack(const PublicKey& pub, std::optional<std::size_t> a, const Ciphertext& ct) {
  return with_ciphertext(sa_attack(pub, a), ct);
}
AttackResult loidreau_attack(const PublicKey& pub, std::optional<std::size_t> a, const Ciphertext& ct) {
  return with_ciphertext(loidreau_attack(pub, a), ct);
}

}  // namespace rankcrypt
