#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "psicalc/instances/contexts.hpp"
#include "psicalc/symbols/symbol1d.hpp"
#include "psicalc/symbols/symbol2d.hpp"

namespace psicalc {

/// Component index of quadrant (s, t), s, t in {1, 2}.
constexpr std::size_t quadrant_index(int s, int t) { return static_cast<std::size_t>((s - 1) * 2 + (t - 1)); }

/// Coefficient functions of a bi-singular operator restricted to the diagonal
/// and written in x-coordinates (z_j = e^{2 pi i x_j}): b0(z1, z2),
/// b1(z1, z2, z1), b2(z1, z2, z2), b12(z1, z2, z1, z2).
struct BisingularData {
  TrigPoly b0{2};
  TrigPoly b1{2};
  TrigPoly b2{2};
  TrigPoly b12{2};
};

/// Order-(0,0) symbol of the bi-singular operator: component (s, t) is
///   b0 - (-1)^s b1 - (-1)^t b2 + (-1)^{s+t} b12.
inline TupleElement principal_symbol(const BisingularData& d) {
  std::vector<TrigPoly> comps;
  for (int s = 1; s <= 2; ++s) {
    for (int t = 1; t <= 2; ++t) {
      const Rational sign_s = s % 2 == 0 ? Rational(1) : Rational(-1);
      const Rational sign_t = t % 2 == 0 ? Rational(1) : Rational(-1);
      comps.push_back(d.b0 - d.b1.scaled(sign_s) - d.b2.scaled(sign_t) + d.b12.scaled(sign_s * sign_t));
    }
  }
  return TupleElement(std::move(comps));
}

namespace detail {

inline void require_shape(const TrigContext& ctx, std::size_t components, int dim, const char* what) {
  const auto& one = ctx.one();
  if (one.size() != components || one.dim() != dim)
    throw ContextMismatch(std::string(what) + ": context " + ctx.name() + " has the wrong shape");
}

}  // namespace detail

/// sign(xi) as an order-0 symbol on circle2: coefficient (1, -1).
inline Symbol1D<TupleElement> hilbert_symbol(const TrigContextPtr& circle2) {
  detail::require_shape(*circle2, 2, 1, "hilbert_symbol");
  const TupleElement sign({TrigPoly::constant(1, GaussianRational(1)), TrigPoly::constant(1, GaussianRational(-1))});
  return Symbol1D<TupleElement>::constant(circle2, sign);
}

/// Toeplitz projection on circle2: keeps the xi > 0 component of every
/// coefficient.
inline Symbol1D<TupleElement> toeplitz_project(const Symbol1D<TupleElement>& d) {
  detail::require_shape(*d.context(), 2, 1, "toeplitz_project");
  return d.map_coefficients([](const TupleElement& a) { return TupleElement::in_component(2, 0, a.component(0)); });
}

/// Quarter-plane Toeplitz projection on torus4: keeps component (1,1).
inline Symbol2D<TupleElement> toeplitz_quadrant(const Symbol2D<TupleElement>& d) {
  detail::require_shape(*d.context(), 4, 2, "toeplitz_quadrant");
  return d.map_coefficients([](const TupleElement& a) {
    return TupleElement::in_component(4, quadrant_index(1, 1), a.component(quadrant_index(1, 1)));
  });
}

/// Res_{s,t} for the four quadrant traces, in order (1,1), (1,2), (2,1), (2,2).
inline std::array<GaussianRational, 4> residues(const Symbol2D<TupleElement>& d) {
  detail::require_shape(*d.context(), 4, 2, "residues");
  std::array<GaussianRational, 4> out;
  for (std::size_t i = 0; i < 4; ++i) out[i] = res2(d, i);
  return out;
}

namespace detail {

/// k^n as a rational, k != 0.
inline Rational integer_power(std::int64_t k, Order n) {
  Rational base(static_cast<long>(k));
  if (n < 0) base = base.inverse();
  Rational out(1);
  for (Order i = 0; i < (n < 0 ? -n : n); ++i) out *= base;
  return out;
}

/// Half-line components admissible for frequency k: {0} for k > 0, {1} for
/// k < 0, both for k = 0 (averaged). Single-copy algebras always use 0.
inline std::vector<std::size_t> half_lines(std::int64_t k, std::size_t copies) {
  if (copies == 1) return {0};
  if (k > 0) return {0};
  if (k < 0) return {1};
  return {0, 1};
}

}  // namespace detail

/// Applies the operator with (exact) symbol d to u = sum c_k e_k on the circle:
///   sum_k a^{(s)}(x) k^n c_k e_k,  s = 1 for k > 0, s = 2 for k < 0.
/// At k = 0 a term of nonzero degree contributes nothing and a degree-0 term
/// contributes the mean of its two components (so sign(0) = 0).
inline TrigPoly apply_operator(const Symbol1D<TupleElement>& d, const TrigPoly& u) {
  const auto& ctx = *d.context();
  if (ctx.one().dim() != 1 || u.dim() != 1) throw ContextMismatch("apply_operator: one-dimensional symbol and u expected");
  if (ctx.one().size() > 2) throw ContextMismatch("apply_operator: at most two half-line components");
  if (!d.is_exact()) throw ContractViolation("apply_operator: symbol has an uncertified tail");
  const std::size_t copies = ctx.one().size();
  TrigPoly out(1);
  for (const auto& [k, c] : u.terms()) {
    const std::int64_t freq = k[0];
    const TrigPoly mode = TrigPoly::mode(1, k, c);
    for (const auto& [n, a] : d.terms()) {
      if (freq == 0 && n != 0) continue;
      const auto lines = detail::half_lines(freq, copies);
      const Rational weight = (freq == 0 ? Rational(1) : detail::integer_power(freq, n)) /
                              Rational(static_cast<long>(lines.size()));
      for (auto s : lines) out += (a.component(s) * mode).scaled(weight);
    }
  }
  return out;
}

/// Two-variable version on torus4 (or the single-copy torus): the quadrant
/// component (s, t) is selected by (sign k1, sign k2); each axis with k_j = 0
/// follows the one-dimensional convention independently.
inline TrigPoly apply_operator(const Symbol2D<TupleElement>& d, const TrigPoly& u) {
  const auto& ctx = *d.context();
  if (ctx.one().dim() != 2 || u.dim() != 2) throw ContextMismatch("apply_operator: two-dimensional symbol and u expected");
  const std::size_t copies = ctx.one().size();
  if (copies != 1 && copies != 4) throw ContextMismatch("apply_operator: one or four quadrant components expected");
  if (!d.is_exact()) throw ContractViolation("apply_operator: symbol has an uncertified tail");
  const std::size_t per_axis = copies == 4 ? 2 : 1;
  TrigPoly out(2);
  for (const auto& [k, c] : u.terms()) {
    const TrigPoly mode = TrigPoly::mode(2, k, c);
    for (const auto& [mn, a] : d.terms()) {
      const auto [m, n] = mn;
      if ((k[0] == 0 && m != 0) || (k[1] == 0 && n != 0)) continue;
      const auto rows = detail::half_lines(k[0], per_axis);
      const auto cols = detail::half_lines(k[1], per_axis);
      Rational weight = Rational(1) / Rational(static_cast<long>(rows.size() * cols.size()));
      if (k[0] != 0) weight *= detail::integer_power(k[0], m);
      if (k[1] != 0) weight *= detail::integer_power(k[1], n);
      for (auto s : rows)
        for (auto t : cols) out += (a.component(copies == 4 ? s * 2 + t : 0) * mode).scaled(weight);
    }
  }
  return out;
}

}  // namespace psicalc
