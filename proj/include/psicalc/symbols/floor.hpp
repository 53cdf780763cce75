#pragma once

#include <algorithm>
#include <optional>
#include <string>

#include "psicalc/scalar/binomial.hpp"

namespace psicalc {

/// Truncation floor of a formal series: coefficients strictly below it are
/// unknown. An empty floor stands for minus infinity (the series is exact).
using Floor = std::optional<Order>;

inline constexpr Floor exact_floor = std::nullopt;

/// Join of two floors (minus infinity is the neutral element).
inline Floor floor_max(Floor a, Floor b) {
  if (!a) return b;
  if (!b) return a;
  return std::max(*a, *b);
}

inline Floor floor_shift(Floor f, Order by) {
  if (!f) return f;
  return *f + by;
}

/// True when order n is certified under floor f.
inline bool certified(Floor f, Order n) { return !f || n >= *f; }

inline std::string floor_text(Floor f) { return f ? std::to_string(*f) : "-inf"; }

/// Floor certified for a product: floor(D1) + top(D2) joined with
/// floor(D2) + top(D1). Unknown coefficients of D1 sit below floor(D1) and
/// every expansion of xi^n b stays at or below n + top(D2), so no unknown term
/// reaches the returned order or above.
inline Floor product_floor(Floor f1, Order t1, Floor f2, Order t2) {
  return floor_max(floor_shift(f1, t2), floor_shift(f2, t1));
}

}  // namespace psicalc
