#pragma once

#include <optional>

#include "rankcrypt/matrix.hpp"

namespace rankcrypt {

/// Gabidulin code of length n and dimension k with generator vector alpha.
class GabidulinCode {
 public:
  // Throws DependentGenerator if rank(alpha) < n, BadDims unless 1 <= k <= n <= m.
  static GabidulinCode make(FieldPtr f, ExtVector alpha, std::size_t k);

  const Field& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  const ExtVector& alpha() const { return alpha_; }
  std::size_t n() const { return alpha_.size(); }
  std::size_t k() const { return k_; }
  std::size_t capacity() const { return (n() - k_) / 2; }
  const ExtMatrix& generator() const { return generator_; }

  ExtVector encode(const ExtVector& msg) const;

  struct Decoded {
    ExtVector msg;
    ExtVector error;
  };

  // Finds the codeword within rank distance tau. Throws DecodeFailure.
  Decoded decode(const ExtVector& y, std::size_t tau) const;
  Decoded decode(const ExtVector& y) const { return decode(y, capacity()); }
  std::optional<Decoded> try_decode(const ExtVector& y, std::size_t tau) const;

 private:
  GabidulinCode(FieldPtr f, ExtVector alpha, std::size_t k, ExtMatrix G)
      : field_(std::move(f)), alpha_(std::move(alpha)), k_(k), generator_(std::move(G)) {}

  FieldPtr field_;
  ExtVector alpha_;
  std::size_t k_ = 0;
  ExtMatrix generator_;
};

// A decoder for a code given by an arbitrary generator G_obs: G_obs restricted
// to `columns` equals change_of_basis * moore(canonical_generator, k).
struct RecoveredDecoder {
  std::vector<std::size_t> columns;
  ExtVector canonical_generator;
  ExtMatrix change_of_basis;
  ExtMatrix inverse_change;
  std::size_t error_capacity = 0;

  std::size_t k() const { return change_of_basis.rows(); }
  // y has the length of the observed generator. Throws DecodeFailure.
  ExtVector decode(const ExtVector& y) const;
};

/// Recovers a decoder from a generator of a Gabidulin code in unknown form.
/// Throws NotGabidulin when the row space is not a Gabidulin code.
RecoveredDecoder recover_canonical(const ExtMatrix& G_obs);

ExtVector decode_arbitrary(const ExtMatrix& G_obs, const ExtVector& y, std::size_t tau);

}  // namespace rankcrypt
