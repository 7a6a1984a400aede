#include "rankcrypt/field.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdio>

#include "rankcrypt/errors.hpp"

namespace rankcrypt {

namespace {

constexpr int kMaxDigits = 64;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

Poly poly_mod(Poly a, const Poly& f, std::uint32_t q) {
  trim(a);
  const int df = degree(f);
  const std::uint64_t lead_inv = [&] {
    // f's leading coefficient inverse by Fermat.
    std::uint64_t r = 1, b = f.back(), e = q - 2;
    while (e) {
      if (e & 1) r = r * b % q;
      b = b * b % q;
      e >>= 1;
    }
    return r;
  }();
  while (degree(a) >= df) {
    const int shift = degree(a) - df;
    const std::uint64_t c = a.back() * lead_inv % q;
    for (int j = 0; j <= df; ++j) {
      const std::uint64_t sub = c * f[j] % q;
      a[shift + j] = static_cast<std::uint32_t>((a[shift + j] + q - sub) % q);
    }
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint32_t q) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % q);
    }
  }
  return poly_mod(std::move(r), f, q);
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t q) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, q);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::uint64_t clmul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  while (b) {
    r ^= a << std::countr_zero(b);
    b &= b - 1;
  }
  return r;
}

unsigned __int128 clmul_wide(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 r = 0;
  while (b) {
    r ^= static_cast<unsigned __int128>(a) << std::countr_zero(b);
    b &= b - 1;
  }
  return r;
}

}  // namespace

Poly poly_from_int(std::uint32_t q, std::uint64_t value) {
  Poly p;
  while (value) {
    p.push_back(static_cast<std::uint32_t>(value % q));
    value /= q;
  }
  return p;
}

std::uint64_t poly_to_int(std::uint32_t q, const Poly& p) {
  std::uint64_t v = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * q + *it;
  return v;
}

bool is_prime(std::uint32_t q) {
  if (q < 2) return false;
  for (std::uint32_t d = 2; std::uint64_t{d} * d <= q; ++d) {
    if (q % d == 0) return false;
  }
  return true;
}

bool is_irreducible(std::uint32_t q, const Poly& f_in) {
  Poly f = f_in;
  trim(f);
  const int d = degree(f);
  if (d < 1) return false;
  if (d == 1) return true;
  const Poly x{0, 1};
  Poly h = poly_mod(x, f, q);
  for (int i = 1; i <= d / 2; ++i) {
    // h <- h^q mod f
    Poly r{1}, b = h;
    for (std::uint32_t e = q; e; e >>= 1) {
      if (e & 1) r = poly_mulmod(r, b, f, q);
      if (e > 1) b = poly_mulmod(b, b, f, q);
    }
    h = r;
    Poly hx = h;
    if (hx.size() < 2) hx.resize(2, 0);
    hx[1] = (hx[1] + q - 1) % q;
    trim(hx);
    if (hx.empty()) return false;  // x^{q^i} = x: f has a factor of degree dividing i
    if (degree(poly_gcd(f, hx, q)) > 0) return false;
  }
  return true;
}

FieldPtr Field::make(std::uint32_t q, int m, std::optional<Poly> modulus) {
  if (!is_prime(q)) throw UnsupportedField("base field order must be prime, got " + std::to_string(q));
  if (q >= (1u << 16)) throw UnsupportedField("base field order too large");
  if (m < 1) throw UnsupportedField("extension degree must be positive");
  {
    unsigned __int128 order = 1;
    for (int i = 0; i < m; ++i) {
      order *= q;
      if (order >= (static_cast<unsigned __int128>(1) << 62)) {
        throw UnsupportedField("q^m does not fit the 62-bit element encoding");
      }
    }
  }
  if (modulus) {
    Poly f = *modulus;
    trim(f);
    for (auto c : f) {
      if (c >= q) throw RejectedModulus("modulus coefficient out of range");
    }
    if (degree(f) != m) throw RejectedModulus("modulus has degree " + std::to_string(degree(f)) + ", expected " + std::to_string(m));
    if (f.back() != 1) throw RejectedModulus("modulus must be monic");
    if (!is_irreducible(q, f)) throw RejectedModulus("modulus is reducible");
    return std::make_shared<const Field>(q, m, std::move(f));
  }
  std::uint64_t qm = 1;
  for (int i = 0; i < m; ++i) qm *= q;
  for (std::uint64_t v = qm + 1; v < 2 * qm; ++v) {
    if (v % q == 0) continue;
    Poly f = poly_from_int(q, v);
    if (is_irreducible(q, f)) return std::make_shared<const Field>(q, m, std::move(f));
  }
  throw InternalInconsistency("no irreducible polynomial found");
}

Field::Field(std::uint32_t q, int m, Poly modulus) : q_(q), m_(m), modulus_(std::move(modulus)) {
  qpow_.resize(m_ + 1);
  qpow_[0] = 1;
  for (int i = 1; i <= m_; ++i) qpow_[i] = qpow_[i - 1] * q_;
  order_ = qpow_[m_];

  if (q_ == 2) {
    reduction_ = poly_to_int(2, modulus_) ^ (std::uint64_t{1} << m_);
    bytes_ = (m_ + 7) / 8;
    // images of x^j under each Frobenius power
    std::vector<std::uint64_t> img(static_cast<std::size_t>(m_) * m_);
    for (int j = 0; j < m_; ++j) img[j] = std::uint64_t{1} << j;
    for (int i = 1; i < m_; ++i) {
      for (int j = 0; j < m_; ++j) {
        const std::uint64_t prev = img[(i - 1) * m_ + j];
        img[i * m_ + j] = mul2(prev, prev).v;
      }
    }
    frob_bytes_.assign(static_cast<std::size_t>(m_) * bytes_ * 256, 0);
    for (int i = 0; i < m_; ++i) {
      for (int p = 0; p < bytes_; ++p) {
        std::uint64_t* table = &frob_bytes_[(static_cast<std::size_t>(i) * bytes_ + p) * 256];
        for (int b = 1; b < 256; ++b) {
          const int low = std::countr_zero(static_cast<unsigned>(b));
          const int j = 8 * p + low;
          const std::uint64_t bit = j < m_ ? img[i * m_ + j] : 0;
          table[b] = table[b & (b - 1)] ^ bit;
        }
      }
    }
  } else {
    frob_digits_.assign(static_cast<std::size_t>(m_) * m_ * m_, 0);
    // power 0 is the identity; power i = power (i-1) composed with x -> x^q
    std::vector<Element> img(static_cast<std::size_t>(m_) * m_);
    for (int j = 0; j < m_; ++j) img[j] = Element{qpow_[j]};
    for (int i = 1; i < m_; ++i) {
      for (int j = 0; j < m_; ++j) img[i * m_ + j] = pow(img[(i - 1) * m_ + j], q_);
    }
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < m_; ++j) {
        auto c = coeffs(img[i * m_ + j]);
        std::copy(c.begin(), c.end(), frob_digits_.begin() + (static_cast<std::size_t>(i) * m_ + j) * m_);
      }
    }
  }
}

Element Field::x() const {
  if (m_ == 1) return base((q_ - modulus_[0]) % q_);
  return Element{q_};
}

Element Field::from_int(std::uint64_t v) const {
  if (v >= order_) throw ParseError("field element out of range");
  return Element{v};
}

Element Field::from_coeffs(std::span<const std::uint32_t> c) const {
  std::uint64_t v = 0;
  for (int i = std::min<int>(m_, static_cast<int>(c.size())) - 1; i >= 0; --i) v = v * q_ + c[i] % q_;
  return Element{v};
}

std::vector<std::uint32_t> Field::coeffs(Element a) const {
  std::vector<std::uint32_t> c(m_);
  std::uint64_t v = a.v;
  for (int i = 0; i < m_; ++i) {
    c[i] = static_cast<std::uint32_t>(v % q_);
    v /= q_;
  }
  return c;
}

std::uint32_t Field::coeff(Element a, int i) const {
  if (q_ == 2) return static_cast<std::uint32_t>((a.v >> i) & 1);
  return static_cast<std::uint32_t>((a.v / qpow_[i]) % q_);
}

Element Field::add(Element a, Element b) const {
  if (q_ == 2) return Element{a.v ^ b.v};
  std::uint64_t r = 0, x = a.v, y = b.v;
  for (int i = 0; i < m_ && (x || y); ++i) {
    r += ((x % q_ + y % q_) % q_) * qpow_[i];
    x /= q_;
    y /= q_;
  }
  return Element{r};
}

Element Field::neg(Element a) const {
  if (q_ == 2) return a;
  std::uint64_t r = 0, x = a.v;
  for (int i = 0; i < m_ && x; ++i) {
    r += ((q_ - x % q_) % q_) * qpow_[i];
    x /= q_;
  }
  return Element{r};
}

Element Field::sub(Element a, Element b) const { return q_ == 2 ? Element{a.v ^ b.v} : add(a, neg(b)); }

Element Field::scale(Element a, std::uint32_t c) const {
  c %= q_;
  if (c == 0) return {};
  if (c == 1) return a;
  std::uint64_t r = 0, x = a.v;
  for (int i = 0; i < m_ && x; ++i) {
    r += ((x % q_) * c % q_) * qpow_[i];
    x /= q_;
  }
  return Element{r};
}

Element Field::mul2(std::uint64_t a, std::uint64_t b) const {
  if (m_ <= 32) {
    std::uint64_t p = clmul(a, b);
    const std::uint64_t mask = (std::uint64_t{1} << m_) - 1;
    while (p >> m_) p = (p & mask) ^ clmul(p >> m_, reduction_);
    return Element{p};
  }
  unsigned __int128 p = clmul_wide(a, b);
  const std::uint64_t mask = (std::uint64_t{1} << m_) - 1;
  while (p >> m_) {
    const std::uint64_t hi = static_cast<std::uint64_t>(p >> m_);
    p = static_cast<unsigned __int128>(static_cast<std::uint64_t>(p) & mask) ^ clmul_wide(hi, reduction_);
  }
  return Element{static_cast<std::uint64_t>(p)};
}

Element Field::mulp(Element a, Element b) const {
  std::array<std::uint64_t, kMaxDigits> x{}, y{};
  std::array<std::uint64_t, 2 * kMaxDigits> prod{};
  std::uint64_t va = a.v, vb = b.v;
  for (int i = 0; i < m_; ++i) {
    x[i] = va % q_;
    va /= q_;
    y[i] = vb % q_;
    vb /= q_;
  }
  for (int i = 0; i < m_; ++i) {
    if (!x[i]) continue;
    for (int j = 0; j < m_; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % q_;
  }
  for (int i = 2 * m_ - 2; i >= m_; --i) {
    const std::uint64_t c = prod[i];
    if (!c) continue;
    for (int j = 0; j < m_; ++j) {
      const std::uint64_t sub = c * modulus_[j] % q_;
      prod[i - m_ + j] = (prod[i - m_ + j] + q_ - sub) % q_;
    }
    prod[i] = 0;
  }
  std::uint64_t r = 0;
  for (int i = m_ - 1; i >= 0; --i) r = r * q_ + prod[i];
  return Element{r};
}

Element Field::mul(Element a, Element b) const {
  if (a.v == 0 || b.v == 0) return {};
  if (q_ == 2) return std::popcount(a.v) < std::popcount(b.v) ? mul2(b.v, a.v) : mul2(a.v, b.v);
  return mulp(a, b);
}

Element Field::pow(Element a, std::uint64_t e) const {
  Element r = one();
  while (e) {
    if (e & 1) r = mul(r, a);
    e >>= 1;
    if (e) a = mul(a, a);
  }
  return r;
}

Element Field::inv(Element a) const {
  if (a.is_zero()) throw DivisionByZero();
  return pow(a, order_ - 2);
}

Element Field::frob_apply(Element a, int i) const {
  if (q_ == 2) {
    std::uint64_t r = 0, v = a.v;
    const std::uint64_t* base = &frob_bytes_[static_cast<std::size_t>(i) * bytes_ * 256];
    for (int p = 0; v; ++p, v >>= 8) r ^= base[p * 256 + (v & 0xff)];
    return Element{r};
  }
  std::array<std::uint64_t, kMaxDigits> acc{};
  std::uint64_t v = a.v;
  for (int j = 0; j < m_ && v; ++j) {
    const std::uint64_t c = v % q_;
    v /= q_;
    if (!c) continue;
    const std::uint32_t* img = &frob_digits_[(static_cast<std::size_t>(i) * m_ + j) * m_];
    for (int d = 0; d < m_; ++d) acc[d] = (acc[d] + c * img[d]) % q_;
  }
  std::uint64_t r = 0;
  for (int d = m_ - 1; d >= 0; --d) r = r * q_ + acc[d];
  return Element{r};
}

Element Field::frob(Element a, long long i) const {
  long long k = i % m_;
  if (k < 0) k += m_;
  if (k == 0 || a.v < q_) return a;
  return frob_apply(a, static_cast<int>(k));
}

Element Field::random(Rng& rng) const { return Element{uniform_below(rng, order_)}; }

Element Field::random_nonzero(Rng& rng) const { return Element{1 + uniform_below(rng, order_ - 1)}; }

std::string Field::header() const {
  return "q=" + std::to_string(q_) + " m=" + std::to_string(m_) + " modulus=" + to_hex(Element{poly_to_int(q_, modulus_)});
}

std::string Field::to_hex(Element a) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%llx", static_cast<unsigned long long>(a.v));
  return buf;
}

Element Field::parse_hex(std::string_view s) const {
  if (s.empty() || s.size() > 16) throw ParseError("bad hex field element '" + std::string(s) + "'");
  std::uint64_t v = 0;
  for (char ch : s) {
    int d;
    if (ch >= '0' && ch <= '9') d = ch - '0';
    else if (ch >= 'a' && ch <= 'f') d = ch - 'a' + 10;
    else if (ch >= 'A' && ch <= 'F') d = ch - 'A' + 10;
    else throw ParseError("bad hex field element '" + std::string(s) + "'");
    v = (v << 4) | static_cast<std::uint64_t>(d);
  }
  return from_int(v);
}

}  // namespace rankcrypt
