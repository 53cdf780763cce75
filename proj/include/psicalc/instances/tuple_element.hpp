#pragma once

#include <string>
#include <utility>
#include <vector>

#include "psicalc/instances/trig_poly.hpp"

namespace psicalc {

/// Direct sum of 1, 2 or 4 copies of a trigonometric polynomial algebra with
/// componentwise operations. For four components the order is
/// (1,1), (1,2), (2,1), (2,2).
class TupleElement {
 public:
  using scalar_type = GaussianRational;

  TupleElement() = default;
  explicit TupleElement(std::vector<TrigPoly> components) : components_(std::move(components)) {
    if (components_.empty()) throw ContractViolation("TupleElement needs at least one component");
    for (const auto& c : components_)
      if (c.dim() != components_.front().dim()) throw ContextMismatch("TupleElement components differ in dimension");
  }

  static TupleElement zero(std::size_t count, int dim) { return TupleElement(std::vector<TrigPoly>(count, TrigPoly(dim))); }
  static TupleElement unit(std::size_t count, int dim) {
    return TupleElement(std::vector<TrigPoly>(count, TrigPoly::constant(dim, GaussianRational(1))));
  }
  /// The same polynomial in every component.
  static TupleElement diagonal(std::size_t count, const TrigPoly& p) { return TupleElement(std::vector<TrigPoly>(count, p)); }
  /// `p` in component `index` (0-based), zero elsewhere.
  static TupleElement in_component(std::size_t count, std::size_t index, const TrigPoly& p) {
    TupleElement out = zero(count, p.dim());
    out.components_.at(index) = p;
    return out;
  }

  [[nodiscard]] std::size_t size() const { return components_.size(); }
  [[nodiscard]] int dim() const { return components_.empty() ? 1 : components_.front().dim(); }
  [[nodiscard]] const std::vector<TrigPoly>& components() const { return components_; }
  [[nodiscard]] const TrigPoly& component(std::size_t i) const { return components_.at(i); }

  [[nodiscard]] bool is_zero() const {
    for (const auto& c : components_)
      if (!c.is_zero()) return false;
    return true;
  }

  template <class F>
  [[nodiscard]] TupleElement map(F&& f) const {
    std::vector<TrigPoly> out;
    out.reserve(components_.size());
    for (const auto& c : components_) out.push_back(f(c));
    return TupleElement(std::move(out));
  }

  [[nodiscard]] TupleElement scaled(const GaussianRational& s) const {
    return map([&](const TrigPoly& p) { return p.scaled(s); });
  }
  [[nodiscard]] TupleElement scaled(const Rational& s) const { return scaled(GaussianRational(s)); }

  [[nodiscard]] std::string to_string() const {
    if (components_.size() == 1) return components_.front().to_string();
    std::string out = "(";
    for (std::size_t i = 0; i < components_.size(); ++i) {
      if (i) out += "; ";
      out += components_[i].to_string();
    }
    return out + ")";
  }

  TupleElement operator-() const { return map([](const TrigPoly& p) { return -p; }); }
  friend TupleElement operator+(const TupleElement& a, const TupleElement& b) { return zip(a, b, [](const auto& x, const auto& y) { return x + y; }); }
  friend TupleElement operator-(const TupleElement& a, const TupleElement& b) { return zip(a, b, [](const auto& x, const auto& y) { return x - y; }); }
  friend TupleElement operator*(const TupleElement& a, const TupleElement& b) { return zip(a, b, [](const auto& x, const auto& y) { return x * y; }); }
  friend bool operator==(const TupleElement&, const TupleElement&) = default;

 private:
  template <class F>
  static TupleElement zip(const TupleElement& a, const TupleElement& b, F&& f) {
    if (a.size() != b.size()) throw ContextMismatch("TupleElement component counts differ");
    std::vector<TrigPoly> out;
    out.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(f(a.components_[i], b.components_[i]));
    return TupleElement(std::move(out));
  }

  std::vector<TrigPoly> components_;
};

}  // namespace psicalc
