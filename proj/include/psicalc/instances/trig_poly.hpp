#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "psicalc/scalar/scalars.hpp"

namespace psicalc {

/// Frequency vector; the second entry is always 0 for one-dimensional
/// polynomials.
using Frequency = std::array<std::int64_t, 2>;

/// Finite Fourier sum  sum_k c_k e_k  on S^1 (dim 1) or T^2 (dim 2), where
/// e_k(x) = exp(2 pi i k.x). Zero coefficients are never stored.
class TrigPoly {
 public:
  using scalar_type = GaussianRational;
  using term_map = std::map<Frequency, GaussianRational>;

  TrigPoly() = default;
  explicit TrigPoly(int dim) : dim_(dim) {
    if (dim != 1 && dim != 2) throw ContractViolation("TrigPoly dimension must be 1 or 2");
  }

  static TrigPoly constant(int dim, const GaussianRational& c) {
    TrigPoly p(dim);
    p.add_term({0, 0}, c);
    return p;
  }
  static TrigPoly mode(int dim, Frequency k, const GaussianRational& c = GaussianRational(1)) {
    TrigPoly p(dim);
    if (dim == 1 && k[1] != 0) throw ContractViolation("one-dimensional mode with a second frequency");
    p.add_term(k, c);
    return p;
  }

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] const term_map& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }

  [[nodiscard]] GaussianRational coefficient(const Frequency& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? GaussianRational() : it->second;
  }
  [[nodiscard]] GaussianRational constant_coefficient() const { return coefficient({0, 0}); }

  void add_term(const Frequency& k, const GaussianRational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// Normalized partial derivative (2 pi i)^-1 d/dx_j: e_k -> k_j e_k.
  [[nodiscard]] TrigPoly partial(int axis) const {
    TrigPoly out(dim_);
    for (const auto& [k, c] : terms_) out.add_term(k, c * GaussianRational(Rational(static_cast<long>(k[axis]))));
    return out;
  }

  [[nodiscard]] TrigPoly scaled(const GaussianRational& s) const {
    TrigPoly out(dim_);
    if (s.is_zero()) return out;
    for (const auto& [k, c] : terms_) out.terms_.emplace(k, c * s);
    return out;
  }
  [[nodiscard]] TrigPoly scaled(const Rational& s) const { return scaled(GaussianRational(s)); }

  /// "c*e[k]" summands in frequency order; "0" for the zero polynomial. The
  /// constant mode prints as a bare scalar.
  [[nodiscard]] std::string to_string() const;

  TrigPoly operator-() const { return scaled(GaussianRational(-1)); }
  TrigPoly& operator+=(const TrigPoly& o) {
    check_dim(o);
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }
  TrigPoly& operator-=(const TrigPoly& o) {
    check_dim(o);
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
  }
  friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
  friend TrigPoly operator-(TrigPoly a, const TrigPoly& b) { return a -= b; }
  friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
    a.check_dim(b);
    TrigPoly out(a.dim_);
    for (const auto& [k, c] : a.terms_)
      for (const auto& [l, d] : b.terms_) out.add_term({k[0] + l[0], k[1] + l[1]}, c * d);
    return out;
  }
  friend bool operator==(const TrigPoly&, const TrigPoly&) = default;

 private:
  void check_dim(const TrigPoly& o) const {
    if (o.dim_ != dim_) throw ContextMismatch("TrigPoly dimensions differ");
  }

  int dim_ = 1;
  term_map terms_;
};

inline std::string frequency_text(const Frequency& k, int dim) {
  return dim == 1 ? std::to_string(k[0]) : std::to_string(k[0]) + "," + std::to_string(k[1]);
}

namespace detail {

/// Scalar text usable as a factor: composite forms get parentheses.
inline std::string factor_text(const std::string& s) {
  if (s.find_first_of("+-", 1) != std::string::npos) return "(" + s + ")";
  return s;
}

/// Joins signed summands, folding "+-" into "-".
inline void append_summand(std::string& out, const std::string& term) {
  if (out.empty())
    out = term;
  else if (term.front() == '-')
    out += term;
  else
    out += "+" + term;
}

}  // namespace detail

inline std::string TrigPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [k, c] : terms_) {
    std::string term;
    if (k[0] == 0 && k[1] == 0) {
      term = c.to_string();
    } else {
      const std::string basis = "e[" + frequency_text(k, dim_) + "]";
      if (c == GaussianRational(1))
        term = basis;
      else if (c == GaussianRational(-1))
        term = "-" + basis;
      else
        term = detail::factor_text(c.to_string()) + "*" + basis;
    }
    detail::append_summand(out, term);
  }
  return out;
}

}  // namespace psicalc
