#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "psicalc/algebra/context.hpp"
#include "psicalc/symbols/floor.hpp"
#include "psicalc/symbols/op_word.hpp"

namespace psicalc {

/// Formal (twisted) pseudodifferential symbol  sum_{n <= top} a_n xi^n  over a
/// one-derivation context. Coefficients at orders in [floor, top] are exact;
/// those below the floor are unknown. No zero coefficient is stored.
template <AlgebraElement E>
class Symbol1D {
 public:
  using element_type = E;
  using term_map = std::map<Order, E>;

  Symbol1D(ContextPtr<E> ctx, Order top, Floor floor = exact_floor)
      : ctx_(std::move(ctx)), top_(top), floor_(floor) {
    if (!ctx_) throw ContractViolation("symbol without context");
    if (floor_ && *floor_ > top_)
      throw ContractViolation("symbol floor " + std::to_string(*floor_) + " above top " + std::to_string(top_));
  }

  /// a xi^n.
  static Symbol1D monomial(ContextPtr<E> ctx, const E& a, Order n, Floor floor = exact_floor) {
    Symbol1D out(std::move(ctx), n, floor);
    out.add(n, a);
    return out;
  }
  static Symbol1D xi(ContextPtr<E> ctx, Order n, Floor floor = exact_floor) {
    const E one = ctx->one();
    return monomial(std::move(ctx), one, n, floor);
  }
  static Symbol1D constant(ContextPtr<E> ctx, const E& a) { return monomial(std::move(ctx), a, 0); }

  [[nodiscard]] const ContextPtr<E>& context() const { return ctx_; }
  [[nodiscard]] const term_map& terms() const { return terms_; }
  [[nodiscard]] Order top() const { return top_; }
  [[nodiscard]] Floor floor() const { return floor_; }
  [[nodiscard]] bool is_exact() const { return !floor_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }

  /// Lowest order holding a stored coefficient.
  [[nodiscard]] std::optional<Order> lowest_order() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first;
  }

  [[nodiscard]] E coefficient(Order n) const {
    if (!certified(floor_, n))
      throw UncertifiedError("coefficient of xi^" + std::to_string(n) + " is below the certified floor " +
                             floor_text(floor_));
    auto it = terms_.find(n);
    return it == terms_.end() ? ctx_->zero() : it->second;
  }

  /// Adds a xi^n; n must lie in [floor, top].
  void add(Order n, const E& a) {
    if (n > top_) throw ContractViolation("term xi^" + std::to_string(n) + " above top " + std::to_string(top_));
    if (!certified(floor_, n)) return;
    if (a.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(n, a);
    if (!inserted) {
      it->second = it->second + a;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// Raises the floor to `f` (never lowers it), dropping coefficients below.
  [[nodiscard]] Symbol1D truncated(Order f) const {
    Symbol1D out(ctx_, std::max(top_, f), floor_max(floor_, f));
    for (const auto& [n, a] : terms_) out.add(n, a);
    return out;
  }

  [[nodiscard]] Symbol1D scaled(const Rational& r) const {
    Symbol1D out(ctx_, top_, floor_);
    for (const auto& [n, a] : terms_) out.add(n, a.scaled(r));
    return out;
  }

  /// Componentwise map of the coefficients (same orders, floor and top).
  template <class F>
  [[nodiscard]] Symbol1D map_coefficients(F&& f) const {
    Symbol1D out(ctx_, top_, floor_);
    for (const auto& [n, a] : terms_) out.add(n, f(a));
    return out;
  }

  /// Equal coefficients at every order >= from (both must be certified there).
  [[nodiscard]] bool agrees_with(const Symbol1D& o, Order from) const {
    if (!certified(floor_, from) || !certified(o.floor_, from))
      throw UncertifiedError("comparison below a certified floor");
    const Order hi = std::max(top_, o.top_);
    for (Order n = from; n <= hi; ++n)
      if (!(coefficient_or_zero(n) == o.coefficient_or_zero(n))) return false;
    return true;
  }

  [[nodiscard]] std::string to_string() const {
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!out.empty()) out += " + ";
      out += "(" + it->second.to_string() + ")*xi^" + std::to_string(it->first);
    }
    if (out.empty()) out = "0";
    return out + "  [floor " + floor_text(floor_) + ", top " + std::to_string(top_) + "]";
  }

  Symbol1D operator-() const { return scaled(Rational(-1)); }

  friend Symbol1D operator+(const Symbol1D& a, const Symbol1D& b) { return combine(a, b, false); }
  friend Symbol1D operator-(const Symbol1D& a, const Symbol1D& b) { return combine(a, b, true); }

  friend bool operator==(const Symbol1D& a, const Symbol1D& b) {
    return a.ctx_ == b.ctx_ && a.top_ == b.top_ && a.floor_ == b.floor_ && a.terms_ == b.terms_;
  }

 private:
  [[nodiscard]] E coefficient_or_zero(Order n) const {
    auto it = terms_.find(n);
    return it == terms_.end() ? ctx_->zero() : it->second;
  }

  static Symbol1D combine(const Symbol1D& a, const Symbol1D& b, bool subtract) {
    if (a.ctx_ != b.ctx_) throw ContextMismatch("symbols belong to different contexts");
    const Floor f = floor_max(a.floor_, b.floor_);
    Symbol1D out(a.ctx_, std::max({a.top_, b.top_, f.value_or(a.top_)}), f);
    for (const auto& [n, c] : a.terms_) out.add(n, c);
    for (const auto& [n, c] : b.terms_) out.add(n, subtract ? -c : c);
    return out;
  }

  ContextPtr<E> ctx_;
  term_map terms_;
  Order top_;
  Floor floor_;
};

namespace detail {

template <AlgebraElement E>
void require_one_delta(const AlgebraContext<E>& ctx) {
  if (ctx.delta_count() != 1)
    throw ContextMismatch("one-dimensional symbols need a context with exactly one derivation (" + ctx.name() + ")");
}

/// Coefficients c_i = (-1)^i sigma^-1 (delta sigma^-1)^i (a) of xi^{-1-i} in
/// xi^-1 a, for i = 0 .. count-1.
template <AlgebraElement E>
std::vector<E> xi_inverse_coefficients(const AlgebraContext<E>& ctx, const E& a, Order count) {
  std::vector<E> out;
  E t = a;  // (delta sigma^-1)^i (a)
  for (Order i = 0; i < count; ++i) {
    if (i > 0) t = ctx.delta(0, ctx.sigma_inv(t));
    E c = ctx.sigma_inv(t);
    out.push_back(i % 2 == 0 ? c : -c);
    if (t.is_zero()) break;
  }
  return out;
}

}  // namespace detail

/// xi^n a by the binomial rule  sum_j C(n, j) delta^j(a) xi^{n-j}, valid when
/// sigma = id. Terms below `floor` are dropped; the floor may only be omitted
/// for n >= 0.
template <AlgebraElement E>
Symbol1D<E> xi_pow_times_binomial(const ContextPtr<E>& ctx, Order n, const E& a, Floor floor) {
  detail::require_one_delta(*ctx);
  if (floor && *floor > n) throw ContractViolation("xi_pow_times: floor above n");
  if (!floor && n < 0) throw ContractViolation("xi_pow_times: negative power needs a finite floor");
  Symbol1D<E> out(ctx, n, floor);
  const Order last = floor ? n - *floor : n;  // largest j kept
  E d = a;
  for (Order j = 0; j <= last; ++j) {
    if (j > 0) d = ctx->delta(0, d);
    if (d.is_zero()) break;
    out.add(n - j, d.scaled(binom(n, j)));
  }
  return out;
}

/// xi^n a by repeated application of the one-step rules
///   xi a = sigma(a) xi + delta(a),
///   xi^-1 a = sum_i (-1)^i sigma^-1 (delta sigma^-1)^i (a) xi^{-1-i},
/// truncating at `floor` after every xi^-1 step. Valid for any context.
template <AlgebraElement E>
Symbol1D<E> xi_pow_times_iterative(const ContextPtr<E>& ctx, Order n, const E& a, Floor floor) {
  detail::require_one_delta(*ctx);
  if (floor && *floor > n) throw ContractViolation("xi_pow_times: floor above n");
  if (!floor && n < 0) throw ContractViolation("xi_pow_times: negative power needs a finite floor");
  std::map<Order, E> cur{{0, a}};
  auto accumulate = [](std::map<Order, E>& m, Order k, const E& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = m.try_emplace(k, c);
    if (!inserted) {
      it->second = it->second + c;
      if (it->second.is_zero()) m.erase(it);
    }
  };
  if (a.is_zero()) cur.clear();
  for (Order step = 0; step < (n >= 0 ? n : -n); ++step) {
    std::map<Order, E> next;
    for (const auto& [k, c] : cur) {
      if (n > 0) {
        accumulate(next, k + 1, ctx->sigma(c));
        accumulate(next, k, ctx->delta(0, c));
      } else {
        const Order count = std::max<Order>(0, k - *floor);  // keep k-1-i >= floor
        const auto coeffs = detail::xi_inverse_coefficients(*ctx, c, count);
        for (std::size_t i = 0; i < coeffs.size(); ++i) accumulate(next, k - 1 - static_cast<Order>(i), coeffs[i]);
      }
    }
    cur = std::move(next);
  }
  Symbol1D<E> out(ctx, n, floor);
  for (const auto& [k, c] : cur) out.add(k, c);
  return out;
}

/// Expansion of xi^n a as a symbol truncated at `floor`. Contexts with
/// sigma = id use the binomial rule; twisted contexts use the iterated
/// one-step rules.
template <AlgebraElement E>
Symbol1D<E> xi_pow_times(const ContextPtr<E>& ctx, Order n, const E& a, Floor floor) {
  if (ctx->sigma_is_identity()) return xi_pow_times_binomial(ctx, n, a, floor);
  return xi_pow_times_iterative(ctx, n, a, floor);
}

/// Which multi-index slot is applied first in
///   sigma^-1 (delta sigma^-1)^{i_n} ... sigma^-1 (delta sigma^-1)^{i_1} (a).
enum class MultiIndexReading { i1_innermost, i1_outermost };

/// xi^-n a (n > 0) through the closed multi-index sum over (i_1, ..., i_n)
///   (-1)^{|i|} sigma^-1 (delta sigma^-1)^{i_n} ... sigma^-1 (delta sigma^-1)^{i_1}(a) xi^{-n-|i|}.
/// Both readings of the index order sum over the same set of tuples.
template <AlgebraElement E>
Symbol1D<E> xi_neg_pow_times_multiindex(const ContextPtr<E>& ctx, Order n, const E& a, Order floor,
                                        MultiIndexReading reading = MultiIndexReading::i1_innermost) {
  detail::require_one_delta(*ctx);
  if (n <= 0) throw ContractViolation("multi-index formula needs n > 0");
  if (floor > -n) throw ContractViolation("xi_pow_times: floor above -n");
  const Order budget = -n - floor;  // max |i|
  Symbol1D<E> out(ctx, -n, floor);
  std::vector<Order> idx(static_cast<std::size_t>(n), 0);
  auto block = [&](const E& x, Order i) {  // sigma^-1 (delta sigma^-1)^i (x)
    E t = x;
    for (Order s = 0; s < i; ++s) t = ctx->delta(0, ctx->sigma_inv(t));
    return ctx->sigma_inv(t);
  };
  while (true) {
    Order total = 0;
    for (auto v : idx) total += v;
    if (total <= budget) {
      E t = a;
      if (reading == MultiIndexReading::i1_innermost)
        for (std::size_t s = 0; s < idx.size(); ++s) t = block(t, idx[s]);
      else
        for (std::size_t s = idx.size(); s-- > 0;) t = block(t, idx[s]);
      out.add(-n - total, total % 2 == 0 ? t : -t);
    }
    // odometer over tuples with entries in [0, budget]
    std::size_t pos = 0;
    while (pos < idx.size() && idx[pos] == budget) idx[pos++] = 0;
    if (pos == idx.size()) break;
    ++idx[pos];
  }
  return out;
}

/// Product in Psi(A, sigma, delta): the bilinear extension of xi^n b. The
/// result floor is product_floor(...) joined with `limit`; a product with an
/// infinite tail (negative orders on the left) needs a finite floor from one of
/// the two.
template <AlgebraElement E>
Symbol1D<E> mul(const Symbol1D<E>& d1, const Symbol1D<E>& d2, Floor limit = exact_floor) {
  if (d1.context() != d2.context()) throw ContextMismatch("mul: symbols belong to different contexts");
  const auto& ctx = d1.context();
  detail::require_one_delta(*ctx);
  const Floor f = floor_max(product_floor(d1.floor(), d1.top(), d2.floor(), d2.top()), limit);
  const Order top = d1.top() + d2.top();
  const bool left_negative = d1.lowest_order() && *d1.lowest_order() < 0;
  if (!f && left_negative && !d2.is_zero())
    throw UncertifiedError("mul: the product has an infinite tail; supply a floor");
  Symbol1D<E> out(ctx, f ? std::max(top, *f) : top, f);
  for (const auto& [n, a] : d1.terms()) {
    for (const auto& [m, b] : d2.terms()) {
      const Floor inner = floor_shift(f, -m);
      if (inner && *inner > n) continue;  // all of xi^n b lies below the floor
      const auto expansion = xi_pow_times(ctx, n, b, inner);
      for (const auto& [k, c] : expansion.terms()) out.add(k + m, a * c);
    }
  }
  return out;
}

/// [D1, D2] = D1 D2 - D2 D1, through the product code path.
template <AlgebraElement E>
Symbol1D<E> commutator(const Symbol1D<E>& d1, const Symbol1D<E>& d2, Floor limit = exact_floor) {
  return mul(d1, d2, limit) - mul(d2, d1, limit);
}

namespace detail {

template <AlgebraElement E>
const TraceSpec<E>& checked_trace(const AlgebraContext<E>& ctx, std::size_t trace_index) {
  if (!ctx.hypotheses_checked())
    throw HypothesisError("context " + ctx.name() + " has not passed the hypothesis checker");
  if (trace_index >= ctx.trace_count())
    throw ContractViolation("trace index " + std::to_string(trace_index + 1) + " out of range");
  return ctx.trace_spec(trace_index);
}

}  // namespace detail

/// Adler-Manin residue tau(a_{-1}); requires sigma = id and a delta-invariant
/// trace.
template <AlgebraElement E>
typename E::scalar_type res(const Symbol1D<E>& d, std::size_t trace_index = 0) {
  const auto& ctx = *d.context();
  const auto& t = detail::checked_trace(ctx, trace_index);
  if (!ctx.sigma_is_identity()) throw HypothesisError("res: twisted context; use res_sigma");
  if (t.kind.twist_power != 0 || !t.kind.delta_invariant)
    throw HypothesisError("res: trace " + t.name + " is not a delta-invariant trace");
  if (!certified(d.floor(), -1)) throw UncertifiedError("res: coefficient of xi^-1 is not certified");
  return t.apply(d.coefficient(-1));
}

/// Twisted residue tau(a_{-1}) for a delta-invariant sigma-twisted trace
/// tau(ab) = tau(sigma(b) a). tau o sigma = tau is not required.
template <AlgebraElement E>
typename E::scalar_type res_sigma(const Symbol1D<E>& d, std::size_t trace_index = 0) {
  const auto& ctx = *d.context();
  const auto& t = detail::checked_trace(ctx, trace_index);
  const bool twist_ok = t.kind.twist_power == 1 || ctx.sigma_is_identity();
  if (!twist_ok || !t.kind.delta_invariant)
    throw HypothesisError("res_sigma: trace " + t.name + " is not a delta-invariant sigma-twisted trace");
  if (!certified(d.floor(), -1)) throw UncertifiedError("res_sigma: coefficient of xi^-1 is not certified");
  return t.apply(d.coefficient(-1));
}

}  // namespace psicalc
