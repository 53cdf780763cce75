#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "psicalc/algebra/context.hpp"
#include "psicalc/symbols/floor.hpp"

namespace psicalc {

using BiOrder = std::pair<Order, Order>;
using BiFloor = std::pair<Floor, Floor>;

/// Two-variable formal symbol  sum a_{m,n} xi1^m xi2^n  (m <= M, n <= N) over a
/// two-derivation context. A coefficient is certified when m >= floor_1 and
/// n >= floor_2; floors are tracked per axis.
template <AlgebraElement E>
class Symbol2D {
 public:
  using element_type = E;
  using term_map = std::map<BiOrder, E>;

  Symbol2D(ContextPtr<E> ctx, BiOrder tops, BiFloor floors = {exact_floor, exact_floor})
      : ctx_(std::move(ctx)), tops_(tops), floors_(floors) {
    if (!ctx_) throw ContractViolation("symbol without context");
    if (ctx_->delta_count() != 2)
      throw ContextMismatch("two-dimensional symbols need a context with two derivations (" + ctx_->name() + ")");
    if ((floors_.first && *floors_.first > tops_.first) || (floors_.second && *floors_.second > tops_.second))
      throw ContractViolation("symbol floor above top");
  }

  /// a xi1^m xi2^n.
  static Symbol2D monomial(ContextPtr<E> ctx, const E& a, Order m, Order n, BiFloor floors = {}) {
    Symbol2D out(std::move(ctx), {m, n}, floors);
    out.add(m, n, a);
    return out;
  }
  static Symbol2D xi(ContextPtr<E> ctx, Order m, Order n, BiFloor floors = {}) {
    const E one = ctx->one();
    return monomial(std::move(ctx), one, m, n, floors);
  }
  static Symbol2D constant(ContextPtr<E> ctx, const E& a) { return monomial(std::move(ctx), a, 0, 0); }

  [[nodiscard]] const ContextPtr<E>& context() const { return ctx_; }
  [[nodiscard]] const term_map& terms() const { return terms_; }
  [[nodiscard]] BiOrder tops() const { return tops_; }
  [[nodiscard]] BiFloor floors() const { return floors_; }
  [[nodiscard]] bool is_exact() const { return !floors_.first && !floors_.second; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }

  [[nodiscard]] bool is_certified(Order m, Order n) const {
    return certified(floors_.first, m) && certified(floors_.second, n);
  }

  /// Smallest stored order on an axis (0 = xi1, 1 = xi2).
  [[nodiscard]] std::optional<Order> lowest_order(int axis) const {
    std::optional<Order> out;
    for (const auto& [k, a] : terms_) {
      const Order v = axis == 0 ? k.first : k.second;
      if (!out || v < *out) out = v;
    }
    return out;
  }

  [[nodiscard]] E coefficient(Order m, Order n) const {
    if (!is_certified(m, n))
      throw UncertifiedError("coefficient of xi1^" + std::to_string(m) + " xi2^" + std::to_string(n) +
                             " is below the certified floors (" + floor_text(floors_.first) + ", " +
                             floor_text(floors_.second) + ")");
    auto it = terms_.find({m, n});
    return it == terms_.end() ? ctx_->zero() : it->second;
  }

  /// Adds a xi1^m xi2^n; silently drops uncertified orders.
  void add(Order m, Order n, const E& a) {
    if (m > tops_.first || n > tops_.second)
      throw ContractViolation("term (" + std::to_string(m) + "," + std::to_string(n) + ") above tops");
    if (!is_certified(m, n) || a.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace({m, n}, a);
    if (!inserted) {
      it->second = it->second + a;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  [[nodiscard]] Symbol2D truncated(Floor f1, Floor f2) const {
    const BiFloor nf{floor_max(floors_.first, f1), floor_max(floors_.second, f2)};
    Symbol2D out(ctx_, {std::max(tops_.first, nf.first.value_or(tops_.first)),
                        std::max(tops_.second, nf.second.value_or(tops_.second))},
                 nf);
    for (const auto& [k, a] : terms_) out.add(k.first, k.second, a);
    return out;
  }

  [[nodiscard]] Symbol2D scaled(const Rational& r) const {
    return map_coefficients([&](const E& a) { return a.scaled(r); });
  }

  template <class F>
  [[nodiscard]] Symbol2D map_coefficients(F&& f) const {
    Symbol2D out(ctx_, tops_, floors_);
    for (const auto& [k, a] : terms_) out.add(k.first, k.second, f(a));
    return out;
  }

  /// Equal coefficients at every (m, n) with m >= from.first, n >= from.second.
  [[nodiscard]] bool agrees_with(const Symbol2D& o, BiOrder from) const {
    if (!is_certified(from.first, from.second) || !o.is_certified(from.first, from.second))
      throw UncertifiedError("comparison below a certified floor");
    auto in_range = [&](const BiOrder& k) { return k.first >= from.first && k.second >= from.second; };
    for (const auto& [k, a] : terms_)
      if (in_range(k) && !(o.coefficient(k.first, k.second) == a)) return false;
    for (const auto& [k, b] : o.terms_)
      if (in_range(k) && !(coefficient(k.first, k.second) == b)) return false;
    return true;
  }

  [[nodiscard]] std::string to_string() const {
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!out.empty()) out += " + ";
      out += "(" + it->second.to_string() + ")*xi1^" + std::to_string(it->first.first) + "*xi2^" +
             std::to_string(it->first.second);
    }
    if (out.empty()) out = "0";
    return out + "  [floors (" + floor_text(floors_.first) + ", " + floor_text(floors_.second) + "), tops (" +
           std::to_string(tops_.first) + ", " + std::to_string(tops_.second) + ")]";
  }

  Symbol2D operator-() const { return scaled(Rational(-1)); }
  friend Symbol2D operator+(const Symbol2D& a, const Symbol2D& b) { return combine(a, b, false); }
  friend Symbol2D operator-(const Symbol2D& a, const Symbol2D& b) { return combine(a, b, true); }
  friend bool operator==(const Symbol2D& a, const Symbol2D& b) {
    return a.ctx_ == b.ctx_ && a.tops_ == b.tops_ && a.floors_ == b.floors_ && a.terms_ == b.terms_;
  }

 private:
  static Symbol2D combine(const Symbol2D& a, const Symbol2D& b, bool subtract) {
    if (a.ctx_ != b.ctx_) throw ContextMismatch("symbols belong to different contexts");
    const BiFloor f{floor_max(a.floors_.first, b.floors_.first), floor_max(a.floors_.second, b.floors_.second)};
    const BiOrder t{std::max({a.tops_.first, b.tops_.first, f.first.value_or(a.tops_.first)}),
                    std::max({a.tops_.second, b.tops_.second, f.second.value_or(a.tops_.second)})};
    Symbol2D out(a.ctx_, t, f);
    for (const auto& [k, c] : a.terms_) out.add(k.first, k.second, c);
    for (const auto& [k, c] : b.terms_) out.add(k.first, k.second, subtract ? -c : c);
    return out;
  }

  ContextPtr<E> ctx_;
  term_map terms_;
  BiOrder tops_;
  BiFloor floors_;
};

namespace detail {

template <AlgebraElement E>
void require_commuting_structure(const AlgebraContext<E>& ctx) {
  const auto& rep = ctx.report();
  if (!rep || !rep->structure_ok())
    throw HypothesisError("context " + ctx.name() +
                          ": sigma, delta_1, delta_2 have not been verified to be a commuting automorphism/"
                          "sigma-derivation family");
}

}  // namespace detail

/// Product in Psi(A, sigma, delta_1, delta_2):
///   sum C(m,j1) C(n,j2) a_{m,n} sigma^{m+n-j1-j2} delta_1^j1 delta_2^j2 (b_{p,q}) xi1^{m+p-j1} xi2^{n+q-j2}.
/// Floors per axis: max(floor_i(D1) + top_i(D2), floor_i(D2) + top_i(D1)),
/// joined with the optional limits.
template <AlgebraElement E>
Symbol2D<E> mul2(const Symbol2D<E>& d1, const Symbol2D<E>& d2, BiFloor limit = {}) {
  if (d1.context() != d2.context()) throw ContextMismatch("mul2: symbols belong to different contexts");
  const auto& ctx = d1.context();
  detail::require_commuting_structure(*ctx);
  const BiFloor f{floor_max(product_floor(d1.floors().first, d1.tops().first, d2.floors().first, d2.tops().first),
                            limit.first),
                  floor_max(product_floor(d1.floors().second, d1.tops().second, d2.floors().second, d2.tops().second),
                            limit.second)};
  if (!d2.is_zero()) {
    for (int axis = 0; axis < 2; ++axis) {
      const Floor fa = axis == 0 ? f.first : f.second;
      const auto low = d1.lowest_order(axis);
      if (!fa && low && *low < 0)
        throw UncertifiedError("mul2: the product has an infinite tail in xi" + std::to_string(axis + 1) +
                               "; supply a floor");
    }
  }
  const BiOrder top{d1.tops().first + d2.tops().first, d1.tops().second + d2.tops().second};
  Symbol2D<E> out(ctx, {std::max(top.first, f.first.value_or(top.first)), std::max(top.second, f.second.value_or(top.second))}, f);

  for (const auto& [pq, b] : d2.terms()) {
    const auto [p, q] = pq;
    // derivative table delta_1^j1 delta_2^j2 (b), filled lazily
    std::map<BiOrder, E> table;
    std::function<const E&(Order, Order)> derivative = [&](Order j1, Order j2) -> const E& {
      auto it = table.find({j1, j2});
      if (it != table.end()) return it->second;
      E v = j1 > 0 ? ctx->delta(0, derivative(j1 - 1, j2)) : (j2 > 0 ? ctx->delta(1, derivative(0, j2 - 1)) : b);
      return table.emplace(BiOrder{j1, j2}, std::move(v)).first->second;
    };
    for (const auto& [mn, a] : d1.terms()) {
      const auto [m, n] = mn;
      // j ranges: binom(m, j) vanishes for j > m >= 0; floors bound the rest
      const Order max_j1 = f.first ? m + p - *f.first : m;
      const Order max_j2 = f.second ? n + q - *f.second : n;
      const Order j1_end = m >= 0 ? std::min(max_j1, m) : max_j1;
      const Order j2_end = n >= 0 ? std::min(max_j2, n) : max_j2;
      for (Order j1 = 0; j1 <= j1_end; ++j1) {
        const Rational c1 = binom(m, j1);
        for (Order j2 = 0; j2 <= j2_end; ++j2) {
          const E& d = derivative(j1, j2);
          if (d.is_zero()) continue;
          const E term = a * ctx->sigma_pow(m + n - j1 - j2, d);
          out.add(m + p - j1, n + q - j2, term.scaled(c1 * binom(n, j2)));
        }
      }
    }
  }
  return out;
}

template <AlgebraElement E>
Symbol2D<E> commutator2(const Symbol2D<E>& d1, const Symbol2D<E>& d2, BiFloor limit = {}) {
  return mul2(d1, d2, limit) - mul2(d2, d1, limit);
}

/// Noncommutative residue tau(a_{-1,-1}) under the selected trace.
template <AlgebraElement E>
typename E::scalar_type res2(const Symbol2D<E>& d, std::size_t trace_index = 0) {
  const auto& ctx = *d.context();
  if (!ctx.hypotheses_checked())
    throw HypothesisError("context " + ctx.name() + " has not passed the hypothesis checker");
  if (trace_index >= ctx.trace_count())
    throw ContractViolation("trace index " + std::to_string(trace_index + 1) + " out of range");
  if (!d.is_certified(-1, -1)) throw UncertifiedError("Res: coefficient of xi1^-1 xi2^-1 is not certified");
  return ctx.trace(trace_index, d.coefficient(-1, -1));
}

template <class Scalar>
struct TraceComparison {
  Scalar lhs;
  Scalar rhs;
  [[nodiscard]] bool equal() const { return lhs == rhs; }
};

namespace detail {

/// Hypotheses under which Res is a trace, for the selected trace: sigma^2-twisted (or
/// sigma = id), delta-invariant, sigma-invariant, all verified by the checker.
template <AlgebraElement E>
void require_residue_trace_hypotheses(const AlgebraContext<E>& ctx, std::size_t trace_index) {
  if (!ctx.hypotheses_checked())
    throw HypothesisError("context " + ctx.name() + " has not passed the hypothesis checker");
  const auto& t = ctx.trace_spec(trace_index);
  const bool twist_ok = t.kind.twist_power == 2 || ctx.sigma_is_identity();
  if (!twist_ok || !t.kind.delta_invariant || !t.kind.sigma_invariant)
    throw HypothesisError("trace " + t.name + " does not satisfy the residue-trace hypotheses");
}

}  // namespace detail

/// Compares Res(a xi1^m xi2^n b xi1^p xi2^q) with Res(b xi1^p xi2^q a xi1^m xi2^n),
/// both computed by mul2 with floors deep enough to certify order (-1, -1).
template <AlgebraElement E>
TraceComparison<typename E::scalar_type> monomial_trace_check(const ContextPtr<E>& ctx, const E& a, const E& b,
                                                               Order m, Order n, Order p, Order q,
                                                               std::size_t trace_index = 0) {
  detail::require_residue_trace_hypotheses(*ctx, trace_index);
  auto magnitude = [](Order v) { return v < 0 ? -v : v; };
  const BiFloor floors{-1 - magnitude(m) - magnitude(p), -1 - magnitude(n) - magnitude(q)};
  const auto x = Symbol2D<E>::monomial(ctx, a, m, n, floors);
  const auto y = Symbol2D<E>::monomial(ctx, b, p, q, floors);
  return {res2(mul2(x, y), trace_index), res2(mul2(y, x), trace_index)};
}

/// Integration by parts: tau(delta^i(a) b) against (-1)^i tau(sigma^i(a) delta^i(b)).
template <AlgebraElement E>
TraceComparison<typename E::scalar_type> lemma_check(const AlgebraContext<E>& ctx, const E& a, const E& b,
                                                      std::size_t delta_index, Order i, std::size_t trace_index = 0) {
  if (i < 0) throw ContractViolation("lemma_check: negative power");
  const auto& t = ctx.trace_spec(trace_index);
  if (!t.kind.delta_invariant) throw HypothesisError("lemma_check: trace " + t.name + " is not delta-invariant");
  const auto& rep = ctx.report();
  const std::string commute = "delta" + std::to_string(delta_index + 1) + ".sigma_commute";
  const HypothesisCheck* c = rep ? rep->find(commute) : nullptr;
  if (!ctx.sigma_is_identity() && !(c && c->passed()))
    throw HypothesisError("lemma_check: sigma and delta" + std::to_string(delta_index + 1) +
                          " have not been verified to commute");
  const auto lhs = ctx.trace(trace_index, ctx.delta_pow(delta_index, i, a) * b);
  auto rhs = ctx.trace(trace_index, ctx.sigma_pow(i, a) * ctx.delta_pow(delta_index, i, b));
  if (i % 2 == 1) rhs = -rhs;
  return {lhs, rhs};
}

}  // namespace psicalc
