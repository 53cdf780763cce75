#pragma once

#include <cstdint>
#include <string>

#include "psicalc/scalar/rational.hpp"

namespace psicalc {

/// Symbol orders and exponents.
using Order = std::int64_t;

/// Generalized binomial coefficient n(n-1)...(n-j+1)/j! for any integer n and
/// j >= 0. Always integer valued.
inline Rational binom(Order n, Order j) {
  if (j < 0) throw ContractViolation("binom: negative lower index " + std::to_string(j));
  mpz_class num = 1;
  mpz_class den = 1;
  for (Order i = 0; i < j; ++i) {
    num *= mpz_class(static_cast<long>(n - i));
    den *= mpz_class(static_cast<long>(i + 1));
  }
  return Rational(mpq_class(num, den));
}

}  // namespace psicalc
