#pragma once

#include <ostream>
#include <string>
#include <string_view>

#include "psicalc/scalar/rational.hpp"

namespace psicalc {

/// Element re + im*i of Q(i).
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(long re) : re_(re) {}                 // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  /// Parses the canonical form "p/q+r/s*i" and its abbreviations
  /// ("3", "-i", "2*i", "1/2-i", ...).
  static GaussianRational parse(std::string_view text);

  [[nodiscard]] const Rational& re() const { return re_; }
  [[nodiscard]] const Rational& im() const { return im_; }

  [[nodiscard]] bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  [[nodiscard]] GaussianRational conj() const { return {re_, -im_}; }
  [[nodiscard]] Rational norm() const { return re_ * re_ + im_ * im_; }

  [[nodiscard]] GaussianRational inverse() const {
    if (is_zero()) throw DivisionByZero();
    const Rational n = norm();
    return {re_ / n, -im_ / n};
  }

  [[nodiscard]] std::string to_string() const;

  GaussianRational operator-() const { return {-re_, -im_}; }
  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational m = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) { return *this *= o.inverse(); }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend bool operator==(const GaussianRational&, const GaussianRational&) = default;

  friend std::ostream& operator<<(std::ostream& os, const GaussianRational& g) { return os << g.to_string(); }

 private:
  Rational re_;
  Rational im_;
};

inline std::string GaussianRational::to_string() const {
  if (im_.is_zero()) return re_.to_string();
  std::string imag;
  if (im_ == Rational(1))
    imag = "i";
  else if (im_ == Rational(-1))
    imag = "-i";
  else
    imag = im_.to_string() + "*i";
  if (re_.is_zero()) return imag;
  if (imag.front() == '-') return re_.to_string() + imag;
  return re_.to_string() + "+" + imag;
}

inline GaussianRational GaussianRational::parse(std::string_view text) {
  const std::string_view s = detail::trim(text);
  if (s.empty()) throw ContractViolation("empty Gaussian rational literal");
  // Split into signed summands at '+'/'-' that are not leading.
  GaussianRational out;
  std::size_t start = 0;
  auto flush = [&](std::string_view part) {
    part = detail::trim(part);
    if (part.empty()) throw ContractViolation("malformed Gaussian rational: '" + std::string(text) + "'");
    bool negative = false;
    while (!part.empty() && (part.front() == '+' || part.front() == '-')) {
      negative ^= part.front() == '-';
      part = detail::trim(part.substr(1));
    }
    const bool imaginary = !part.empty() && part.back() == 'i';
    if (imaginary) {
      part = detail::trim(part.substr(0, part.size() - 1));
      if (!part.empty()) {
        if (part.back() != '*')
          throw ContractViolation("malformed Gaussian rational: '" + std::string(text) + "'");
        part = detail::trim(part.substr(0, part.size() - 1));
      }
    }
    Rational value = part.empty() ? Rational(1) : Rational::parse(part);
    if (part.empty() && !imaginary)
      throw ContractViolation("malformed Gaussian rational: '" + std::string(text) + "'");
    if (negative) value = -value;
    if (imaginary)
      out.im_ += value;
    else
      out.re_ += value;
  };
  for (std::size_t k = 1; k < s.size(); ++k) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != '+' && s[k - 1] != '-') {
      flush(s.substr(start, k - start));
      start = k;
    }
  }
  flush(s.substr(start));
  return out;
}

}  // namespace psicalc
