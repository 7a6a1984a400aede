#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rankcrypt/attacks.hpp"
#include "rankcrypt/errors.hpp"
#include "rankcrypt/rank_metric.hpp"
#include "rankcrypt/sampling.hpp"

using namespace rankcrypt;

namespace {

Params make_params(Scheme s, int m, std::size_t n, std::size_t k, std::size_t t, std::size_t that, std::size_t a) {
  Params p;
  p.scheme = s;
  p.q = 2;
  p.m = m;
  p.n = n;
  p.k = k;
  p.t = t;
  p.that = that;
  p.a = a;
  return p;
}

ExtVector random_msg(Rng& rng, const Field& f, std::size_t k) {
  ExtVector msg(k);
  for (auto& e : msg) e = f.random(rng);
  return msg;
}

// Fresh key, one ciphertext, attack; true when the plaintext comes back.
template <class Attack>
bool broken_once(Rng& rng, const Params& p, Attack&& attack) {
  auto f = Field::make(p.q, p.m);
  KeyPair key = keygen(rng, f, p);
  ExtVector msg = random_msg(rng, *f, p.k);
  AttackResult res = attack(key.pub, encrypt(rng, key.pub, msg));
  if (!res.outcome.broken) MESSAGE("failed: ", reason_name(res.outcome.reason), " ", res.outcome.detail);
  return res.outcome.broken && res.msg && *res.msg == msg;
}

}  // namespace

TEST_CASE("independent_columns") {
  auto f = Field::make(2, 8);
  Rng rng(1);
  ExtVector a = random_independent_vector(rng, f, 5);
  ExtVector b{a[0], a[1], f->add(a[0], a[1]), a[2], a[0], a[3], a[4]};
  CHECK(independent_columns(moore(f, b, 3)) == std::vector<std::size_t>{0, 1, 3, 5, 6});
}

TEST_CASE("GPT attack on random keys") {
  Rng rng(2);
  const Params p = make_params(Scheme::Gpt, 12, 12, 4, 1, 0, 0);
  int ok = 0;
  for (int it = 0; it < 50; ++it) ok += broken_once(rng, p, [](const PublicKey& pub, const Ciphertext& ct) {
    return gpt_attack(pub, ct);
  });
  CHECK(ok == 50);
}

TEST_CASE("GPT attack with larger t") {
  Rng rng(3);
  const Params p = make_params(Scheme::Gpt, 16, 16, 4, 3, 0, 0);
  int ok = 0;
  for (int it = 0; it < 10; ++it) ok += broken_once(rng, p, [](const PublicKey& pub, const Ciphertext& ct) {
    return gpt_attack(pub, ct);
  });
  CHECK(ok == 10);
}

TEST_CASE("GPT attack on Moore-only distortion and plain keys") {
  auto f = Field::make(2, 12);
  Rng rng(4);
  const Params p = make_params(Scheme::Gpt, 12, 12, 4, 2, 0, 0);
  auto code = GabidulinCode::make(f, random_independent_vector(rng, f, 12), 4);
  ExtMatrix S = random_invertible_ext(rng, f, 4);
  ExtMatrix X = S * moore(f, sample_rank_vector(rng, f, 12, 2), 4);
  KeyPair key = assemble_gpt(p, S, code, X);
  ExtVector msg = random_msg(rng, *f, 4);
  AttackResult res = gpt_attack(key.pub, encrypt(rng, key.pub, msg));
  REQUIRE(res.outcome.broken);
  CHECK(res.outcome.transcript->s_used == 0);
  CHECK(*res.msg == msg);

  KeyPair plain = keygen(rng, f, make_params(Scheme::Gpt, 12, 12, 4, 0, 0, 0));
  res = gpt_attack(plain.pub, encrypt(rng, plain.pub, msg));
  REQUIRE(res.outcome.broken);
  CHECK(*res.msg == msg);
}

TEST_CASE("SA example: Overbeck fails, the rank-one attack succeeds") {
  Rng rng(5);
  for (int it = 0; it < 10; ++it) {
    KeyPair key = sa_example_key(rng);
    const Field& f = *key.pub.field;
    AttackOutcome ob = overbeck_attack(key.pub, 1);
    CHECK(!ob.broken);
    CHECK(ob.reason == FailReason::XStarStarRankDeficient);

    ExtVector msg = random_msg(rng, f, 3);
    const Ciphertext ct = encrypt(rng, key.pub, msg);
    for (std::optional<std::size_t> a : {std::optional<std::size_t>{}, std::optional<std::size_t>{1}}) {
      AttackResult res = sa_attack(key.pub, a, ct);
      REQUIRE(res.outcome.broken);
      CHECK(*res.msg == msg);
      // rank-one span is the support of [Z | 0]
      BaseMatrix Z = BaseMatrix::from_rows(2, {{0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0}, {1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0}});
      CHECK(res.outcome.transcript->U == row_basis(Z));
    }
  }
}

TEST_CASE("SA attack on random keys") {
  Rng rng(6);
  const Params p = make_params(Scheme::GgptSa, 16, 16, 6, 0, 4, 2);
  int ok = 0;
  for (int it = 0; it < 50; ++it) ok += broken_once(rng, p, [](const PublicKey& pub, const Ciphertext& ct) {
    return sa_attack(pub, std::size_t{2}, ct);
  });
  CHECK(ok >= 49);
}

TEST_CASE("SA attack with pure Moore distortion") {
  Rng rng(7);
  const Params p = make_params(Scheme::GgptSa, 12, 8, 3, 0, 3, 3);
  int ok = 0;
  for (int it = 0; it < 10; ++it) ok += broken_once(rng, p, [](const PublicKey& pub, const Ciphertext& ct) {
    return sa_attack(pub, std::size_t{3}, ct);
  });
  CHECK(ok == 10);
}

TEST_CASE("Overbeck attack on generic keys") {
  Rng rng(8);
  const Params p = make_params(Scheme::Ggpt, 16, 16, 6, 0, 3, 0);
  int ok = 0;
  for (int it = 0; it < 20; ++it) ok += broken_once(rng, p, [&](const PublicKey& pub, const Ciphertext& ct) {
    return overbeck_attack(pub, p.n - p.k - 1, ct);
  });
  CHECK(ok == 20);
  const Params flat = make_params(Scheme::Ggpt, 12, 12, 4, 0, 0, 0);
  CHECK(broken_once(rng, flat, [](const PublicKey& pub, const Ciphertext& ct) { return overbeck_attack(pub, 1, ct); }));
}

TEST_CASE("Loidreau attack at small parameters") {
  Rng rng(9);
  const Params p = make_params(Scheme::GgptLoidreau, 16, 16, 8, 0, 20, 2);
  int ok = 0;
  for (int it = 0; it < 10; ++it) ok += broken_once(rng, p, [](const PublicKey& pub, const Ciphertext& ct) {
    return loidreau_attack(pub, std::size_t{2}, ct);
  });
  CHECK(ok >= 9);
}

TEST_CASE("Loidreau sanity key without scrambling") {
  Rng rng(10);
  const Params p = make_params(Scheme::GgptLoidreau, 16, 16, 8, 0, 20, 2);
  auto f = Field::make(2, 16);
  KeyPair rnd = keygen(rng, f, p);
  KeyPair key = assemble_ggpt(p, ExtMatrix::identity(f, 8), rnd.priv.code, rnd.priv.X, BaseMatrix::identity(2, 36));
  AttackOutcome out = loidreau_attack(key.pub, std::size_t{2});
  REQUIRE(out.broken);
  CHECK(out.transcript->U == BaseMatrix::identity(2, 36).select_rows(std::vector<std::size_t>{
                                 20, 21, 22, 23, 24, 25, 26, 27, 28, 29, 30, 31, 32, 33, 34, 35}));
}

TEST_CASE("transcript reuse") {
  Rng rng(11);
  auto f = Field::make(2, 12);
  const Params p = make_params(Scheme::Gpt, 12, 12, 4, 1, 0, 0);
  KeyPair key = keygen(rng, f, p), other = keygen(rng, f, p);
  ExtVector msg = random_msg(rng, *f, 4);
  const Ciphertext ct = encrypt(rng, key.pub, msg);
  AttackResult res = gpt_attack(key.pub, ct);
  REQUIRE(res.outcome.broken);
  const AttackTranscript& tr = *res.outcome.transcript;
  CHECK(attack_decrypt(tr, ct) == *res.msg);
  for (int it = 0; it < 20; ++it) {
    ExtVector m2 = random_msg(rng, *f, 4);
    CHECK(attack_decrypt(tr, encrypt(rng, key.pub, m2)) == m2);
  }
  int wrong = 0;
  for (int it = 0; it < 20; ++it) {
    try {
      if (attack_decrypt(tr, encrypt(rng, other.pub, msg)) != msg) ++wrong;
    } catch (const DecodeFailure&) {
      ++wrong;
    }
  }
  CHECK(wrong == 20);
  CHECK(tr.dump().find("scheme gpt") == 0);
  CHECK(gpt_attack(sa_example_key(rng).pub).reason == FailReason::WrongScheme);
}
