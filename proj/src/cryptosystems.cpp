#include "rankcrypt/cryptosystems.hpp"

#include <map>
#include <sstream>

#include "rankcrypt/errors.hpp"
#include "rankcrypt/rank_metric.hpp"
#include "rankcrypt/sampling.hpp"

namespace rankcrypt {

std::string_view scheme_name(Scheme s) {
  switch (s) {
    case Scheme::Gpt: return "gpt";
    case Scheme::Ggpt: return "ggpt";
    case Scheme::GgptSa: return "ggpt-sa";
    case Scheme::GgptLoidreau: return "ggpt-loidreau";
  }
  return "?";
}

Scheme parse_scheme(std::string_view name) {
  for (Scheme s : {Scheme::Gpt, Scheme::Ggpt, Scheme::GgptSa, Scheme::GgptLoidreau})
    if (scheme_name(s) == name) return s;
  throw ParseError("unknown scheme `" + std::string(name) + "`");
}

void Params::validate() const {
  if (k < 1 || k > n) throw BadParams("need 1 <= k <= n");
  if (m < 1 || n > static_cast<std::size_t>(m)) throw BadParams("need n <= m");
  const std::size_t tp = t_prime();
  switch (scheme) {
    case Scheme::Gpt:
      if (t >= tp) throw BadParams("GPT needs t < floor((n-k)/2)");
      break;
    case Scheme::Ggpt:
      if (that > k * static_cast<std::size_t>(m)) throw BadParams("distortion column rank cannot exceed k*m");
      break;
    case Scheme::GgptSa:
      if (a > that) throw BadParams("SA needs a <= that");
      if (a > static_cast<std::size_t>(m)) throw BadParams("SA needs a <= m");
      if (that - a > k * static_cast<std::size_t>(m)) throw BadParams("non-Moore part too wide");
      break;
    case Scheme::GgptLoidreau:
      if (a < 1 || a > k || a > that) throw BadParams("Loidreau needs 1 <= a <= min(k, that)");
      if (a * (n - k) >= that) throw BadParams("Loidreau needs a*(n-k) < that");
      if (that > a * static_cast<std::size_t>(m)) throw BadParams("rank-a distortion cannot reach column rank that");
      break;
  }
}

namespace {

ExtMatrix public_gpt(const PrivateKey& priv) { return priv.S * priv.code.generator() + priv.X; }

ExtMatrix public_ggpt(const PrivateKey& priv) {
  return (priv.S * priv.X.hstack(priv.code.generator())) * *priv.sigma;
}

KeyPair make_pair(const Params& p, PrivateKey priv) {
  PublicKey pub{p, priv.code.field_ptr(), {}, p.budget()};
  pub.G_pub = is_ggpt(p.scheme) ? public_ggpt(priv) : public_gpt(priv);
  return KeyPair{std::move(pub), std::move(priv), {}};
}

}  // namespace

ExtMatrix reconstruct_public(const Params& p, const PrivateKey& priv) {
  return is_ggpt(p.scheme) ? public_ggpt(priv) : public_gpt(priv);
}

KeyPair assemble_gpt(const Params& p, ExtMatrix S, GabidulinCode code, ExtMatrix X) {
  if (X.rows() != p.k || X.cols() != p.n || S.rows() != p.k) throw BadDims("GPT key parts have wrong shapes");
  return make_pair(p, PrivateKey{std::move(S), std::move(code), std::move(X), std::nullopt});
}

KeyPair assemble_ggpt(const Params& p, ExtMatrix S, GabidulinCode code, ExtMatrix X, BaseMatrix sigma) {
  if (X.rows() != p.k || X.cols() != p.that || S.rows() != p.k || sigma.rows() != p.n + p.that)
    throw BadDims("GGPT key parts have wrong shapes");
  return make_pair(p, PrivateKey{std::move(S), std::move(code), std::move(X), std::move(sigma)});
}

KeyPair gpt_keygen(Rng& rng, const FieldPtr& f, const Params& p) {
  if (p.scheme != Scheme::Gpt) throw BadParams("not a GPT parameter set");
  p.validate();
  auto code = GabidulinCode::make(f, random_independent_vector(rng, f, p.n), p.k);
  ExtMatrix S = random_invertible_ext(rng, f, p.k);
  ExtMatrix X = sample_colrank_matrix(rng, f, p.k, p.n, p.t).X;
  return assemble_gpt(p, std::move(S), std::move(code), std::move(X));
}

namespace {

ExtMatrix sa_distortion(Rng& rng, const FieldPtr& f, const Params& p) {
  const std::size_t width = p.that - p.a;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    // Moore part on the first a columns, non-Moore part on the rest
    ExtVector x(p.that);
    const ExtVector w = random_independent_vector(rng, f, p.a);
    std::copy(w.begin(), w.end(), x.begin());
    ExtMatrix X = moore(f, x, p.k);
    const ExtMatrix V = random_ext_matrix(rng, f, p.k, width);
    for (std::size_t r = 0; r < p.k; ++r)
      for (std::size_t c = 0; c < width; ++c) X(r, p.a + c) = f->add(X(r, p.a + c), V(r, c));
    if (column_rank_base(X) == p.that) return X;
  }
  throw SamplingFailure("no SA distortion of full column rank found");
}

ExtMatrix loidreau_distortion(Rng& rng, const FieldPtr& f, const Params& p) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    ExtMatrix X = random_ext_matrix(rng, f, p.k, p.a) * random_ext_matrix(rng, f, p.a, p.that);
    if (rank(X) == p.a && column_rank_base(X) == p.that) return X;
  }
  throw SamplingFailure("no rank-a distortion of full column rank found");
}

}  // namespace

KeyPair ggpt_keygen(Rng& rng, const FieldPtr& f, const Params& p) {
  if (!is_ggpt(p.scheme)) throw BadParams("not a GGPT parameter set");
  p.validate();
  auto code = GabidulinCode::make(f, random_independent_vector(rng, f, p.n), p.k);
  ExtMatrix S = random_invertible_ext(rng, f, p.k);
  ExtMatrix X;
  std::vector<std::string> notes;
  switch (p.scheme) {
    case Scheme::Ggpt:
      X = sample_colrank_matrix(rng, f, p.k, p.that, p.that).X;
      break;
    case Scheme::GgptSa:
      X = sa_distortion(rng, f, p);
      break;
    default: {
      X = loidreau_distortion(rng, f, p);
      const std::size_t ell = (p.n + (p.k - p.a) - 1) / (p.k - p.a);
      notes.push_back("loidreau: ell*a = " + std::to_string(ell * p.a) + " vs that = " + std::to_string(p.that) +
                      (ell * p.a * 4 <= p.that ? "" : " (ell*a is not small against that)"));
    }
  }
  BaseMatrix sigma = random_invertible_base(rng, f->q(), p.n + p.that);
  KeyPair kp = assemble_ggpt(p, std::move(S), std::move(code), std::move(X), std::move(sigma));
  kp.notes = std::move(notes);
  return kp;
}

KeyPair keygen(Rng& rng, const FieldPtr& f, const Params& p) {
  if (f->q() != p.q || f->m() != p.m) throw BadParams("field does not match parameters");
  return is_ggpt(p.scheme) ? ggpt_keygen(rng, f, p) : gpt_keygen(rng, f, p);
}

KeyPair sa_example_key(Rng& rng) {
  Params p;
  p.scheme = Scheme::GgptSa;
  p.q = 2;
  p.m = 8;
  p.n = 8;
  p.k = 3;
  p.that = 3;
  p.a = 1;
  const FieldPtr f = Field::make(2, 8);
  Element x;
  do {
    x = f->random(rng);
  } while (f->in_base(x));
  ExtMatrix X = moore(f, {x, f->zero(), f->zero()}, 3);
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c)
      if (r != c) X(r, c) = f->add(X(r, c), f->one());
  auto code = GabidulinCode::make(f, random_independent_vector(rng, f, 8), 3);
  return assemble_ggpt(p, ExtMatrix::identity(f, 3), std::move(code), std::move(X), BaseMatrix::identity(2, 11));
}

Ciphertext encrypt(Rng& rng, const PublicKey& pub, const ExtVector& msg, std::optional<std::size_t> error_rank) {
  if (msg.size() != pub.G_pub.rows()) throw DimensionMismatch("message length differs from k");
  const std::size_t len = pub.G_pub.cols();
  const std::size_t r = error_rank.value_or(std::min({pub.budget, len, static_cast<std::size_t>(pub.field->m())}));
  Ciphertext ct{pub.params.scheme, vec_mul(msg, pub.G_pub)};
  ct.y = vec_add(*pub.field, ct.y, sample_rank_vector(rng, pub.field, len, r));
  return ct;
}

ExtVector decrypt(const KeyPair& key, const Ciphertext& ct) {
  const Params& p = key.pub.params;
  if (ct.scheme != p.scheme) throw DecodeFailure("ciphertext was made for a different scheme");
  if (ct.y.size() != p.public_length()) throw DecodeFailure("ciphertext length does not match the key");
  const Field& f = *key.pub.field;
  ExtVector y = ct.y;
  if (is_ggpt(p.scheme)) {
    y = vec_mul(f, y, inverse_base(*key.priv.sigma));
    y.erase(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(p.that));
  }
  const auto d = key.priv.code.decode(y, p.t_prime());
  return vec_mul(d.msg, inverse(key.priv.S));
}

// ------------------------------------------------------------------ text I/O

namespace {

std::string params_line(const PublicKey& pub) {
  const Params& p = pub.params;
  std::ostringstream o;
  o << "params n=" << p.n << " k=" << p.k << " t=" << p.t << " that=" << p.that << " a=" << p.a
    << " budget=" << pub.budget;
  return o.str();
}

std::string vector_text(const ExtVector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + Field::to_hex(v[i]);
  return s;
}

ExtVector parse_vector(const Field& f, std::string_view text) {
  std::istringstream in{std::string(text)};
  ExtVector v;
  std::string tok;
  while (in >> tok) v.push_back(f.parse_hex(tok));
  return v;
}

std::map<std::string, std::string> parse_fields(std::string_view line) {
  std::map<std::string, std::string> out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw ParseError("expected key=value, got `" + tok + "`");
    out[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return out;
}

std::uint64_t to_u64(const std::map<std::string, std::string>& kv, const std::string& key, int base = 10) {
  const auto it = kv.find(key);
  if (it == kv.end()) throw ParseError("missing field `" + key + "`");
  try {
    std::size_t pos = 0;
    const auto v = std::stoull(it->second, &pos, base);
    if (pos != it->second.size()) throw ParseError("bad number for `" + key + "`");
    return v;
  } catch (const std::logic_error&) {
    throw ParseError("bad number for `" + key + "`");
  }
}

FieldPtr parse_field_line(std::string_view rest) {
  const auto kv = parse_fields(rest);
  const auto q = static_cast<std::uint32_t>(to_u64(kv, "q"));
  const auto m = static_cast<int>(to_u64(kv, "m"));
  const auto mod = to_u64(kv, "modulus", 16);
  if (q < 2) throw ParseError("bad field order");
  return Field::make(q, m, poly_from_int(q, mod));
}

struct Lines {
  std::map<std::string, std::string> named;  // key -> rest of line
};

Lines split_lines(std::string_view text) {
  Lines out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto sp = line.find_first_of(" =");
    if (sp == std::string::npos) throw ParseError("malformed line `" + line + "`");
    const std::string key = line.substr(0, sp);
    if (out.named.count(key)) throw ParseError("duplicate entry `" + key + "`");
    out.named[key] = line.substr(sp + 1);
  }
  return out;
}

const std::string& need(const Lines& l, const std::string& key) {
  const auto it = l.named.find(key);
  if (it == l.named.end()) throw ParseError("missing `" + key + "`");
  return it->second;
}

}  // namespace

std::string serialize_public(const PublicKey& pub) {
  std::string s;
  s += "scheme " + std::string(scheme_name(pub.params.scheme)) + "\n";
  s += "field " + pub.field->header() + "\n";
  s += params_line(pub) + "\n";
  s += "Gpub=" + serialize(pub.G_pub) + "\n";
  return s;
}

std::string serialize_private(const KeyPair& key) {
  std::string s = serialize_public(key.pub);
  s += "S=" + serialize(key.priv.S) + "\n";
  s += "alpha=" + vector_text(key.priv.code.alpha()) + "\n";
  s += "X=" + serialize(key.priv.X) + "\n";
  if (key.priv.sigma) s += "sigma=" + serialize(*key.priv.sigma) + "\n";
  return s;
}

KeyPair ParsedKey::pair() const {
  if (!priv) throw ParseError("key file holds no private part");
  return KeyPair{pub, *priv, {}};
}

ParsedKey parse_key(std::string_view text) {
  const Lines l = split_lines(text);
  Params p;
  p.scheme = parse_scheme(need(l, "scheme"));
  const FieldPtr f = parse_field_line(need(l, "field"));
  p.q = f->q();
  p.m = f->m();
  const auto kv = parse_fields(need(l, "params"));
  p.n = to_u64(kv, "n");
  p.k = to_u64(kv, "k");
  p.t = to_u64(kv, "t");
  p.that = to_u64(kv, "that");
  p.a = to_u64(kv, "a");
  const std::size_t budget = to_u64(kv, "budget");
  if (p.k < 1 || p.k > p.n || p.n > static_cast<std::size_t>(p.m)) throw ParseError("inconsistent key parameters");
  ParsedKey out{PublicKey{p, f, parse_ext_matrix(f, need(l, "Gpub")), budget}, std::nullopt};
  if (out.pub.G_pub.rows() != p.k || out.pub.G_pub.cols() != p.public_length())
    throw ParseError("public matrix shape does not match parameters");
  if (l.named.count("S")) {
    ExtMatrix S = parse_ext_matrix(f, need(l, "S"));
    auto code = GabidulinCode::make(f, parse_vector(*f, need(l, "alpha")), p.k);
    ExtMatrix X = parse_ext_matrix(f, need(l, "X"));
    std::optional<BaseMatrix> sigma;
    if (is_ggpt(p.scheme)) sigma = parse_base_matrix(f->q(), need(l, "sigma"));
    PrivateKey priv{std::move(S), std::move(code), std::move(X), std::move(sigma)};
    if (!(reconstruct_public(p, priv) == out.pub.G_pub)) throw ParseError("private part does not match public key");
    out.priv = std::move(priv);
  }
  return out;
}

std::string serialize_ciphertexts(const FieldPtr& f, const std::vector<Ciphertext>& cts) {
  if (cts.empty()) throw BadDims("no ciphertext blocks");
  std::string s = "scheme " + std::string(scheme_name(cts.front().scheme)) + "\n";
  s += "field " + f->header() + "\n";
  for (const auto& c : cts) s += "y=" + vector_text(c.y) + "\n";
  return s;
}

std::vector<Ciphertext> parse_ciphertexts(const FieldPtr& f, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<Scheme> scheme;
  std::vector<Ciphertext> out;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("scheme ", 0) == 0) {
      scheme = parse_scheme(line.substr(7));
    } else if (line.rfind("field ", 0) == 0) {
      if (!(*parse_field_line(line.substr(6)) == *f)) throw ParseError("ciphertext field differs from key field");
    } else if (line.rfind("y=", 0) == 0) {
      if (!scheme) throw ParseError("ciphertext block before scheme line");
      out.push_back(Ciphertext{*scheme, parse_vector(*f, line.substr(2))});
    } else {
      throw ParseError("malformed ciphertext line");
    }
  }
  if (out.empty()) throw ParseError("no ciphertext blocks");
  return out;
}

// ------------------------------------------------------------ message blocks

namespace {

std::size_t bytes_per_symbol(const Field& f) {
  std::size_t b = 0;
  while (b < 7 && (std::uint64_t{1} << (8 * (b + 1))) <= f.order()) ++b;
  return b;
}

Element checksum(const Field& f, std::span<const Element> data, std::size_t index) {
  std::uint64_t h = splitmix64(0x5241'4e4b'4352'5950ULL ^ index);
  for (auto e : data) h = splitmix64(h ^ e.v);
  return Element{h % f.order()};
}

}  // namespace

std::vector<ExtVector> pack_message(const Field& f, std::size_t k, std::string_view bytes) {
  const std::size_t b = bytes_per_symbol(f);
  if (k < 2 || b == 0) throw BadParams("message packing needs k >= 2 and q^m >= 256");
  std::string payload(4, '\0');
  const auto len = static_cast<std::uint32_t>(bytes.size());
  for (int i = 0; i < 4; ++i) payload[i] = static_cast<char>((len >> (8 * i)) & 0xff);
  payload += bytes;
  const std::size_t per_block = (k - 1) * b;
  payload.resize((payload.size() + per_block - 1) / per_block * per_block, '\0');
  std::vector<ExtVector> blocks;
  for (std::size_t off = 0; off < payload.size(); off += per_block) {
    ExtVector msg(k);
    for (std::size_t s = 0; s + 1 < k; ++s) {
      std::uint64_t v = 0;
      for (std::size_t i = 0; i < b; ++i)
        v |= std::uint64_t{static_cast<unsigned char>(payload[off + s * b + i])} << (8 * i);
      msg[s] = Element{v};
    }
    msg[k - 1] = checksum(f, std::span(msg).first(k - 1), blocks.size());
    blocks.push_back(std::move(msg));
  }
  return blocks;
}

std::string unpack_message(const Field& f, const std::vector<ExtVector>& blocks) {
  const std::size_t b = bytes_per_symbol(f);
  std::string payload;
  for (std::size_t idx = 0; idx < blocks.size(); ++idx) {
    const ExtVector& msg = blocks[idx];
    if (msg.size() < 2 || b == 0) throw DecodeFailure("message block too short");
    const std::size_t k = msg.size();
    if (msg[k - 1] != checksum(f, std::span(msg).first(k - 1), idx)) throw DecodeFailure("message checksum mismatch");
    for (std::size_t s = 0; s + 1 < k; ++s) {
      if (msg[s].v >> (8 * b)) throw DecodeFailure("message symbol out of range");
      for (std::size_t i = 0; i < b; ++i) payload.push_back(static_cast<char>((msg[s].v >> (8 * i)) & 0xff));
    }
  }
  if (payload.size() < 4) throw DecodeFailure("message header missing");
  std::uint32_t len = 0;
  for (int i = 0; i < 4; ++i) len |= std::uint32_t{static_cast<unsigned char>(payload[i])} << (8 * i);
  if (len > payload.size() - 4) throw DecodeFailure("message length out of range");
  return payload.substr(4, len);
}

}  // namespace rankcrypt
