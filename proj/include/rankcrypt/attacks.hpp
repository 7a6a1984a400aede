#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rankcrypt/cryptosystems.hpp"

namespace rankcrypt {

enum class FailReason {
  None,
  WrongScheme,
  RankOneSpanEmpty,
  ColumnSelectionFailed,
  AssumptionViolated,
  XStarStarRankDeficient,
  ConditionViolated,
  Inconsistent,
  DecodeFailure,
};
std::string_view reason_name(FailReason r);

// Everything needed to decrypt further ciphertexts under the attacked key:
// a ciphertext y maps to decoder.decode(y * H^T).
struct AttackTranscript {
  Scheme scheme = Scheme::Gpt;
  std::size_t s_used = 0;  // Frobenius depth that worked
  BaseMatrix U;            // recovered rank-one span
  BaseMatrix H;            // projection applied to ciphertexts
  std::vector<std::size_t> columns;
  RecoveredDecoder decoder;
  std::vector<std::pair<std::string, std::string>> diagnostics;

  void note(std::string key, std::string value) { diagnostics.emplace_back(std::move(key), std::move(value)); }
  void note(std::string key, std::size_t value) { note(std::move(key), std::to_string(value)); }
  // Looks up the last diagnostic with this key.
  std::optional<std::string> diagnostic(std::string_view key) const;
  std::string dump() const;
};

struct AttackOutcome {
  bool broken = false;
  FailReason reason = FailReason::None;
  std::string detail;
  std::optional<AttackTranscript> transcript;
  // Kept on failure too, so the intermediate dimensions remain visible.
  std::vector<std::pair<std::string, std::string>> diagnostics;
};

struct AttackResult {
  std::optional<ExtVector> msg;
  AttackOutcome outcome;
};

// Structural attacks on a public key. A Broken outcome has already decrypted a
// self-encrypted test message with the recovered transcript.
AttackOutcome overbeck_attack(const PublicKey& pub, std::size_t u);
AttackOutcome gpt_attack(const PublicKey& pub);
// `a` unknown: tried from that down to 0.
AttackOutcome sa_attack(const PublicKey& pub, std::optional<std::size_t> a = std::nullopt);
// `a` unknown: tried from 1 up to k-1.
AttackOutcome loidreau_attack(const PublicKey& pub, std::optional<std::size_t> a = std::nullopt);

// Throws DecodeFailure.
ExtVector attack_decrypt(const AttackTranscript& tr, const Ciphertext& ct);

// Attack followed by decryption of ct.
AttackResult overbeck_attack(const PublicKey& pub, std::size_t u, const Ciphertext& ct);
AttackResult gpt_attack(const PublicKey& pub, const Ciphertext& ct);
AttackResult sa_attack(const PublicKey& pub, std::optional<std::size_t> a, const Ciphertext& ct);
AttackResult loidreau_attack(const PublicKey& pub, std::optional<std::size_t> a, const Ciphertext& ct);

// Greedy left-to-right: keep column j when it raises the F_q column rank.
std::vector<std::size_t> independent_columns(const ExtMatrix& M);

}  // namespace rankcrypt
