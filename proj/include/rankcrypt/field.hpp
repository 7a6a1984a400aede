#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rankcrypt/random.hpp"

namespace rankcrypt {

// An element of F_{q^m}, stored as the integer sum(c_i * q^i) of its
// coefficients in the polynomial basis. For q = 2 this is a bit vector.
struct Element {
  std::uint64_t v = 0;

  constexpr bool is_zero() const { return v == 0; }
  constexpr auto operator<=>(const Element&) const = default;
};

// Polynomial over F_q, little-endian coefficients.
using Poly = std::vector<std::uint32_t>;

// Polynomial with coefficient integer `value` (inverse of sum(c_i q^i)).
Poly poly_from_int(std::uint32_t q, std::uint64_t value);
std::uint64_t poly_to_int(std::uint32_t q, const Poly& p);

bool is_prime(std::uint32_t q);
bool is_irreducible(std::uint32_t q, const Poly& f);

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// The tower F_q ⊂ F_{q^m}.
///
/// Immutable after construction. The Frobenius map x -> x^{q^i} is applied
/// through precomputed F_q-linear tables, one per power i in [0, m).
class Field {
 public:
  /// Builds the field. Without `modulus`, the smallest monic irreducible
  /// polynomial of degree m with nonzero constant term is used.
  static FieldPtr make(std::uint32_t q, int m, std::optional<Poly> modulus = std::nullopt);

  std::uint32_t q() const { return q_; }
  int m() const { return m_; }
  const Poly& modulus() const { return modulus_; }
  std::uint64_t order() const { return order_; }

  Element zero() const { return {}; }
  Element one() const { return {1}; }
  // The class of x modulo the defining polynomial.
  Element x() const;
  Element base(std::uint32_t c) const { return {c % q_}; }
  Element from_int(std::uint64_t v) const;
  Element from_coeffs(std::span<const std::uint32_t> c) const;
  std::vector<std::uint32_t> coeffs(Element a) const;
  std::uint32_t coeff(Element a, int i) const;
  bool in_base(Element a) const { return a.v < q_; }
  bool contains(Element a) const { return a.v < order_; }

  Element add(Element a, Element b) const;
  Element sub(Element a, Element b) const;
  Element neg(Element a) const;
  Element mul(Element a, Element b) const;
  // Multiplication by an element of the base field.
  Element scale(Element a, std::uint32_t c) const;
  Element inv(Element a) const;
  Element div(Element a, Element b) const { return mul(a, inv(b)); }
  Element pow(Element a, std::uint64_t e) const;
  // a^{q^i}; i is reduced modulo m, negative values allowed.
  Element frob(Element a, long long i) const;

  Element random(Rng& rng) const;
  Element random_nonzero(Rng& rng) const;

  // `q=<int> m=<int> modulus=<hex>`
  std::string header() const;
  static std::string to_hex(Element a);
  Element parse_hex(std::string_view s) const;

  bool operator==(const Field& o) const { return q_ == o.q_ && m_ == o.m_ && modulus_ == o.modulus_; }

  Field(std::uint32_t q, int m, Poly modulus);

 private:
  Element mul2(std::uint64_t a, std::uint64_t b) const;
  Element mulp(Element a, Element b) const;
  Element frob_apply(Element a, int i) const;

  std::uint32_t q_;
  int m_;
  Poly modulus_;
  std::uint64_t order_;
  std::vector<std::uint64_t> qpow_;  // q^i, i <= m

  // q = 2
  std::uint64_t reduction_ = 0;  // modulus minus the x^m term
  int bytes_ = 0;
  std::vector<std::uint64_t> frob_bytes_;  // [power][byte position][256]

  // odd q: images of x^j under the power-i Frobenius, as digit vectors
  std::vector<std::uint32_t> frob_digits_;  // [power][j][digit]
};

}  // namespace rankcrypt
