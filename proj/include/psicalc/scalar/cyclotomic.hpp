#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "psicalc/scalar/rational.hpp"

namespace psicalc {

namespace poly {

/// Dense polynomial over Q, coefficient of q^k at index k.
using RationalPoly = std::vector<Rational>;

inline void strip(RationalPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline RationalPoly mul(const RationalPoly& a, const RationalPoly& b) {
  if (a.empty() || b.empty()) return {};
  RationalPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  strip(out);
  return out;
}

inline RationalPoly sub(RationalPoly a, const RationalPoly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  strip(a);
  return a;
}

/// Quotient and remainder of a by a nonzero divisor.
inline std::pair<RationalPoly, RationalPoly> divmod(RationalPoly a, const RationalPoly& d) {
  strip(a);
  if (d.empty()) throw DivisionByZero();
  if (a.size() < d.size()) return {{}, a};
  RationalPoly q(a.size() - d.size() + 1);
  const Rational lead_inv = d.back().inverse();
  for (std::size_t shift = q.size(); shift-- > 0;) {
    const Rational c = a[shift + d.size() - 1] * lead_inv;
    q[shift] = c;
    if (!c.is_zero())
      for (std::size_t j = 0; j < d.size(); ++j) a[shift + j] -= c * d[j];
  }
  a.resize(d.size() - 1);
  strip(a);
  strip(q);
  return {q, a};
}

/// The N-th cyclotomic polynomial, cached.
inline const RationalPoly& cyclotomic_polynomial(unsigned n) {
  static std::mutex mutex;
  static std::map<unsigned, RationalPoly> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  RationalPoly p(n + 1);
  p[0] = Rational(-1);
  p[n] = Rational(1);
  for (unsigned d = 1; d < n; ++d)
    if (n % d == 0) p = divmod(p, cyclotomic_polynomial(d)).first;
  std::lock_guard lock(mutex);
  return cache.emplace(n, std::move(p)).first->second;
}

}  // namespace poly

/// Element of the cyclotomic field Q(zeta_N) = Q[q]/Phi_N(q), stored as the
/// reduced residue of degree < phi(N).
class Cyclotomic {
 public:
  /// Zero of Q(zeta_1) = Q.
  Cyclotomic() : Cyclotomic(1u) {}
  explicit Cyclotomic(unsigned order) : order_(order) {
    if (order == 0) throw ContractViolation("cyclotomic order must be positive");
    coeffs_.assign(degree(), Rational(0));
  }
  Cyclotomic(unsigned order, const Rational& value) : Cyclotomic(order) { coeffs_[0] = value; }
  Cyclotomic(unsigned order, long value) : Cyclotomic(order, Rational(value)) {}

  /// Reduces an arbitrary polynomial in q modulo Phi_N.
  static Cyclotomic from_polynomial(unsigned order, poly::RationalPoly p) {
    Cyclotomic out(order);
    auto rem = poly::divmod(std::move(p), poly::cyclotomic_polynomial(order)).second;
    for (std::size_t k = 0; k < rem.size(); ++k) out.coeffs_[k] = rem[k];
    return out;
  }

  /// q^k with q = zeta_N, any integer k.
  static Cyclotomic root_power(unsigned order, std::int64_t k) {
    const auto n = static_cast<std::int64_t>(order);
    const auto e = static_cast<std::size_t>(((k % n) + n) % n);
    poly::RationalPoly p(e + 1);
    p[e] = Rational(1);
    return from_polynomial(order, std::move(p));
  }

  /// Parses a polynomial in "q" with rational coefficients, e.g. "1/2*q^3-2".
  static Cyclotomic parse(unsigned order, std::string_view text);

  [[nodiscard]] unsigned order() const { return order_; }
  [[nodiscard]] std::size_t degree() const { return poly::cyclotomic_polynomial(order_).size() - 1; }
  [[nodiscard]] const std::vector<Rational>& coeffs() const { return coeffs_; }

  [[nodiscard]] bool is_zero() const {
    for (const auto& c : coeffs_)
      if (!c.is_zero()) return false;
    return true;
  }

  [[nodiscard]] Cyclotomic inverse() const;
  [[nodiscard]] std::string to_string() const;

  Cyclotomic operator-() const {
    Cyclotomic out(*this);
    for (auto& c : out.coeffs_) c = -c;
    return out;
  }
  Cyclotomic& operator+=(const Cyclotomic& o) {
    check_same(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    return *this;
  }
  Cyclotomic& operator-=(const Cyclotomic& o) {
    check_same(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    return *this;
  }
  Cyclotomic& operator*=(const Cyclotomic& o) {
    check_same(o);
    *this = from_polynomial(order_, poly::mul(coeffs_, o.coeffs_));
    return *this;
  }
  Cyclotomic& operator*=(const Rational& r) {
    for (auto& c : coeffs_) c *= r;
    return *this;
  }
  Cyclotomic& operator/=(const Cyclotomic& o) { return *this *= o.inverse(); }

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Rational& b) { return a *= b; }
  friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }
  friend bool operator==(const Cyclotomic&, const Cyclotomic&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Cyclotomic& c) { return os << c.to_string(); }

 private:
  void check_same(const Cyclotomic& o) const {
    if (o.order_ != order_)
      throw ContextMismatch("cyclotomic orders differ: " + std::to_string(order_) + " vs " +
                            std::to_string(o.order_));
  }

  unsigned order_;
  std::vector<Rational> coeffs_;
};

inline Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw DivisionByZero();
  // Extended Euclid on (Phi_N, a); Phi_N irreducible so gcd is a constant.
  poly::RationalPoly r0 = poly::cyclotomic_polynomial(order_);
  poly::RationalPoly r1 = coeffs_;
  poly::strip(r1);
  poly::RationalPoly s0;                  // coefficient of a in r0
  poly::RationalPoly s1{Rational(1)};     // coefficient of a in r1
  while (r1.size() > 1) {
    auto [quot, rem] = poly::divmod(r0, r1);
    poly::RationalPoly s2 = poly::sub(s0, poly::mul(quot, s1));
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  const Rational c = r1.at(0).inverse();
  for (auto& x : s1) x *= c;
  return from_polynomial(order_, std::move(s1));
}

inline std::string Cyclotomic::to_string() const {
  std::string out;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    const Rational& c = coeffs_[k];
    if (c.is_zero()) continue;
    const bool negative = c.sign() < 0;
    const Rational mag = negative ? -c : c;
    std::string term;
    if (k == 0) {
      term = mag.to_string();
    } else {
      const std::string power = k == 1 ? "q" : "q^" + std::to_string(k);
      term = mag.is_one() ? power : mag.to_string() + "*" + power;
    }
    if (out.empty())
      out = negative ? "-" + term : term;
    else
      out += (negative ? "-" : "+") + term;
  }
  return out.empty() ? "0" : out;
}

inline Cyclotomic Cyclotomic::parse(unsigned order, std::string_view text) {
  const std::string_view s = detail::trim(text);
  if (s.empty()) throw ContractViolation("empty cyclotomic literal");
  poly::RationalPoly acc;
  auto add_term = [&](std::string_view part) {
    part = detail::trim(part);
    bool negative = false;
    while (!part.empty() && (part.front() == '+' || part.front() == '-')) {
      negative ^= part.front() == '-';
      part = detail::trim(part.substr(1));
    }
    if (part.empty()) throw ContractViolation("malformed cyclotomic literal: '" + std::string(text) + "'");
    Rational coeff(1);
    std::size_t power = 0;
    const auto qpos = part.find('q');
    if (qpos == std::string_view::npos) {
      coeff = Rational::parse(part);
    } else {
      std::string_view lhs = detail::trim(part.substr(0, qpos));
      std::string_view rhs = detail::trim(part.substr(qpos + 1));
      if (!lhs.empty()) {
        if (lhs.back() != '*') throw ContractViolation("malformed cyclotomic literal: '" + std::string(text) + "'");
        coeff = Rational::parse(lhs.substr(0, lhs.size() - 1));
      }
      if (rhs.empty()) {
        power = 1;
      } else {
        if (rhs.front() != '^' || !detail::all_digits(detail::trim(rhs.substr(1))))
          throw ContractViolation("malformed cyclotomic literal: '" + std::string(text) + "'");
        power = std::stoul(std::string(detail::trim(rhs.substr(1))));
      }
    }
    if (negative) coeff = -coeff;
    if (acc.size() <= power) acc.resize(power + 1);
    acc[power] += coeff;
  };
  std::size_t start = 0;
  for (std::size_t k = 1; k < s.size(); ++k) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != '^' && s[k - 1] != '+' && s[k - 1] != '-') {
      add_term(s.substr(start, k - start));
      start = k;
    }
  }
  add_term(s.substr(start));
  return from_polynomial(order, std::move(acc));
}

}  // namespace psicalc
