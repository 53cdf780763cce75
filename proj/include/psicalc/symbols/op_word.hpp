#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "psicalc/algebra/context.hpp"

namespace psicalc {

enum class OpLetter : char { sigma = 's', delta = 'd' };

/// A composition of sigma and delta, written left to right as applied
/// outermost to innermost: "ds" is delta(sigma(a)).
struct OpWord {
  std::vector<OpLetter> letters;

  [[nodiscard]] std::size_t degree() const { return letters.size(); }
  [[nodiscard]] std::size_t sigma_degree() const {
    std::size_t n = 0;
    for (auto l : letters) n += l == OpLetter::sigma;
    return n;
  }

  [[nodiscard]] std::string to_string() const {
    std::string out;
    for (auto l : letters) out += static_cast<char>(l);
    return out;
  }

  static OpWord parse(const std::string& text) {
    OpWord w;
    for (char c : text) {
      if (c == 's')
        w.letters.push_back(OpLetter::sigma);
      else if (c == 'd')
        w.letters.push_back(OpLetter::delta);
      else
        throw ContractViolation(std::string("OpWord letters are 's' and 'd', got '") + c + "'");
    }
    return w;
  }

  friend auto operator<=>(const OpWord&, const OpWord&) = default;
};

/// Applies the word to `a` (innermost letter first) using the context's sigma
/// and its first derivation.
template <AlgebraElement E>
E apply_word(const AlgebraContext<E>& ctx, const OpWord& w, E a) {
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    a = *it == OpLetter::sigma ? ctx.sigma(a) : ctx.delta(0, a);
  return a;
}

/// The noncommutative polynomial P_{i,n}(sigma, delta) giving the coefficient
/// of xi^i in xi^n a: all C(n, i) words of length n containing exactly i
/// letters sigma, built by P_{i,n+1} = sigma P_{i-1,n} + delta P_{i,n} from
/// P_{0,1} = {delta}, P_{1,1} = {sigma}. Words are returned sorted.
inline std::vector<OpWord> p_poly(Order i, Order n) {
  if (n < 1) throw ContractViolation("p_poly: n must be positive");
  if (i < 0 || i > n) throw ContractViolation("p_poly: need 0 <= i <= n");
  // table[k] holds P_{k,level}
  std::vector<std::vector<OpWord>> table(2);
  table[0] = {OpWord{{OpLetter::delta}}};
  table[1] = {OpWord{{OpLetter::sigma}}};
  for (Order level = 1; level < n; ++level) {
    std::vector<std::vector<OpWord>> next(static_cast<std::size_t>(level) + 2);
    for (Order k = 0; k <= level + 1; ++k) {
      auto& out = next[static_cast<std::size_t>(k)];
      if (k >= 1)
        for (const auto& w : table[static_cast<std::size_t>(k - 1)]) {
          OpWord x{{OpLetter::sigma}};
          x.letters.insert(x.letters.end(), w.letters.begin(), w.letters.end());
          out.push_back(std::move(x));
        }
      if (k <= level)
        for (const auto& w : table[static_cast<std::size_t>(k)]) {
          OpWord x{{OpLetter::delta}};
          x.letters.insert(x.letters.end(), w.letters.begin(), w.letters.end());
          out.push_back(std::move(x));
        }
    }
    table = std::move(next);
  }
  auto out = table[static_cast<std::size_t>(i)];
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace psicalc
