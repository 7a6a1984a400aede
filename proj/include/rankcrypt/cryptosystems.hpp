#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rankcrypt/gabidulin.hpp"

namespace rankcrypt {

enum class Scheme { Gpt, Ggpt, GgptSa, GgptLoidreau };

std::string_view scheme_name(Scheme s);
Scheme parse_scheme(std::string_view name);
inline bool is_ggpt(Scheme s) { return s != Scheme::Gpt; }

struct Params {
  Scheme scheme = Scheme::Gpt;
  std::uint32_t q = 2;
  int m = 0;
  std::size_t n = 0, k = 0;
  std::size_t t = 0;     // GPT: column rank of the distortion
  std::size_t that = 0;  // GGPT: number of distortion columns
  std::size_t a = 0;     // SA: column rank of the Moore part; Loidreau: rank of X

  std::size_t t_prime() const { return (n - k) / 2; }
  std::size_t public_length() const { return is_ggpt(scheme) ? n + that : n; }
  std::size_t budget() const { return scheme == Scheme::Gpt ? t_prime() - t : t_prime(); }
  // Throws BadParams.
  void validate() const;
};

struct PublicKey {
  Params params;
  FieldPtr field;
  ExtMatrix G_pub;
  std::size_t budget = 0;
};

struct PrivateKey {
  ExtMatrix S;
  GabidulinCode code;
  ExtMatrix X;
  std::optional<BaseMatrix> sigma;
};

struct KeyPair {
  PublicKey pub;
  PrivateKey priv;
  std::vector<std::string> notes;
};

struct Ciphertext {
  Scheme scheme = Scheme::Gpt;
  ExtVector y;
};

KeyPair gpt_keygen(Rng& rng, const FieldPtr& f, const Params& p);
KeyPair ggpt_keygen(Rng& rng, const FieldPtr& f, const Params& p);
KeyPair keygen(Rng& rng, const FieldPtr& f, const Params& p);

// The worked Smart Approach key: q = 2, m = n = 8, k = 3, that = 3, a = 1,
// S and sigma identity, X = moore([x 0 0]) + (J - I).
KeyPair sa_example_key(Rng& rng);

// Keys from explicit parts; G_pub is computed from them.
KeyPair assemble_gpt(const Params& p, ExtMatrix S, GabidulinCode code, ExtMatrix X);
KeyPair assemble_ggpt(const Params& p, ExtMatrix S, GabidulinCode code, ExtMatrix X, BaseMatrix sigma);

// Recomputes G_pub from the private parts.
ExtMatrix reconstruct_public(const Params& p, const PrivateKey& priv);

// The error has rank exactly `error_rank` (default: the public budget).
Ciphertext encrypt(Rng& rng, const PublicKey& pub, const ExtVector& msg,
                   std::optional<std::size_t> error_rank = std::nullopt);
// Throws DecodeFailure.
ExtVector decrypt(const KeyPair& key, const Ciphertext& ct);

// Text formats.
std::string serialize_public(const PublicKey& pub);
std::string serialize_private(const KeyPair& key);

struct ParsedKey {
  PublicKey pub;
  std::optional<PrivateKey> priv;
  KeyPair pair() const;  // throws ParseError for a public-only key
};
ParsedKey parse_key(std::string_view text);

std::string serialize_ciphertexts(const FieldPtr& f, const std::vector<Ciphertext>& cts);
std::vector<Ciphertext> parse_ciphertexts(const FieldPtr& f, std::string_view text);

// Byte payloads <-> message blocks. Each block carries (k-1) data symbols and
// a checksum symbol, so decryption under a wrong key is detected.
std::vector<ExtVector> pack_message(const Field& f, std::size_t k, std::string_view bytes);
// Throws DecodeFailure on a checksum mismatch.
std::string unpack_message(const Field& f, const std::vector<ExtVector>& blocks);

}  // namespace rankcrypt
