#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <utility>

#include "psicalc/instances/trig_poly.hpp"
#include "psicalc/scalar/scalars.hpp"

namespace psicalc {

/// q^k for q = zeta_N, cached per (N, k mod N).
inline const Cyclotomic& root_of_unity_power(unsigned order, std::int64_t k) {
  static std::mutex mutex;
  static std::map<std::pair<unsigned, std::int64_t>, Cyclotomic> cache;
  const auto n = static_cast<std::int64_t>(order);
  const std::pair key{order, ((k % n) + n) % n};
  std::lock_guard lock(mutex);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, Cyclotomic::root_power(order, key.second)).first;
  return it->second;
}

/// Element  sum c_{m,n} U^m V^n  of the quantum torus UV = qVU at q = zeta_N,
/// kept in normal order (all U to the left of all V).
class QTorusElement {
 public:
  using scalar_type = Cyclotomic;
  using Exponent = std::pair<std::int64_t, std::int64_t>;
  using term_map = std::map<Exponent, Cyclotomic>;

  QTorusElement() : QTorusElement(1u) {}
  explicit QTorusElement(unsigned order) : order_(order) {}

  static QTorusElement monomial(unsigned order, std::int64_t m, std::int64_t n, const Cyclotomic& c) {
    QTorusElement out(order);
    out.add_term({m, n}, c);
    return out;
  }
  static QTorusElement monomial(unsigned order, std::int64_t m, std::int64_t n) {
    return monomial(order, m, n, Cyclotomic(order, 1));
  }
  static QTorusElement constant(unsigned order, const Cyclotomic& c) { return monomial(order, 0, 0, c); }

  [[nodiscard]] unsigned order() const { return order_; }
  [[nodiscard]] const term_map& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }

  [[nodiscard]] Cyclotomic coefficient(std::int64_t m, std::int64_t n) const {
    auto it = terms_.find({m, n});
    return it == terms_.end() ? Cyclotomic(order_) : it->second;
  }
  [[nodiscard]] Cyclotomic constant_coefficient() const { return coefficient(0, 0); }

  void add_term(const Exponent& e, const Cyclotomic& c) {
    if (c.order() != order_) throw ContextMismatch("quantum torus coefficient of wrong cyclotomic order");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// Multiplies each monomial U^m V^n by phase(m, n).
  template <class Phase>
  [[nodiscard]] QTorusElement diagonal(Phase&& phase) const {
    QTorusElement out(order_);
    for (const auto& [e, c] : terms_) out.add_term(e, c * phase(e.first, e.second));
    return out;
  }

  /// Inverse of a single monomial c U^m V^n.
  [[nodiscard]] QTorusElement monomial_inverse() const {
    if (terms_.size() != 1) throw ContractViolation("only monomials are invertible here: " + to_string());
    const auto& [e, c] = *terms_.begin();
    // (U^m V^n)^-1 = V^-n U^-m = q^{-nm} U^-m V^-n
    return monomial(order_, -e.first, -e.second, c.inverse() * root_of_unity_power(order_, -e.first * e.second));
  }

  [[nodiscard]] QTorusElement scaled(const Cyclotomic& s) const {
    QTorusElement out(order_);
    for (const auto& [e, c] : terms_) out.add_term(e, c * s);
    return out;
  }
  [[nodiscard]] QTorusElement scaled(const Rational& s) const {
    QTorusElement out(order_);
    for (const auto& [e, c] : terms_) out.add_term(e, c * s);
    return out;
  }

  [[nodiscard]] std::string to_string() const;

  QTorusElement operator-() const { return scaled(Rational(-1)); }
  QTorusElement& operator+=(const QTorusElement& o) {
    check_order(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  QTorusElement& operator-=(const QTorusElement& o) {
    check_order(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend QTorusElement operator+(QTorusElement a, const QTorusElement& b) { return a += b; }
  friend QTorusElement operator-(QTorusElement a, const QTorusElement& b) { return a -= b; }

  /// (U^a V^b)(U^c V^d) = q^{-bc} U^{a+c} V^{b+d}, from V^b U^c = q^{-bc} U^c V^b.
  friend QTorusElement operator*(const QTorusElement& x, const QTorusElement& y) {
    x.check_order(y);
    QTorusElement out(x.order_);
    for (const auto& [e, c] : x.terms_)
      for (const auto& [f, d] : y.terms_)
        out.add_term({e.first + f.first, e.second + f.second},
                     c * d * root_of_unity_power(x.order_, -e.second * f.first));
    return out;
  }
  friend bool operator==(const QTorusElement&, const QTorusElement&) = default;

 private:
  void check_order(const QTorusElement& o) const {
    if (o.order_ != order_) throw ContextMismatch("quantum torus elements at different roots of unity");
  }

  unsigned order_;
  term_map terms_;
};

inline std::string QTorusElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : terms_) {
    std::string mono;
    auto power = [&](const char* g, std::int64_t k) {
      if (k == 0) return;
      if (!mono.empty()) mono += "*";
      mono += g;
      if (k != 1) mono += "^" + std::to_string(k);
    };
    power("U", e.first);
    power("V", e.second);
    const Cyclotomic one(order_, 1);
    std::string term;
    if (mono.empty())
      term = c.to_string();
    else if (c == one)
      term = mono;
    else if (c == -one)
      term = "-" + mono;
    else
      term = detail::factor_text(c.to_string()) + "*" + mono;
    detail::append_summand(out, term);
  }
  return out;
}

}  // namespace psicalc
