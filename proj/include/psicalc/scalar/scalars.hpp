#pragma once

#include <concepts>

#include "psicalc/scalar/binomial.hpp"
#include "psicalc/scalar/cyclotomic.hpp"
#include "psicalc/scalar/gaussian.hpp"
#include "psicalc/scalar/rational.hpp"

namespace psicalc {

/// Exact coefficient field: closed under the field operations, with decidable
/// equality and a canonical text form.
template <class S>
concept ExactField = std::regular<S> && requires(const S& a, const S& b) {
  { a + b } -> std::convertible_to<S>;
  { a - b } -> std::convertible_to<S>;
  { a * b } -> std::convertible_to<S>;
  { -a } -> std::convertible_to<S>;
  { a.is_zero() } -> std::convertible_to<bool>;
  { a.inverse() } -> std::convertible_to<S>;
  { a.to_string() } -> std::convertible_to<std::string>;
};

static_assert(ExactField<Rational>);
static_assert(ExactField<GaussianRational>);
static_assert(ExactField<Cyclotomic>);

}  // namespace psicalc
