#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "psicalc/algebra/checker.hpp"
#include "psicalc/algebra/context.hpp"
#include "psicalc/instances/qtorus.hpp"
#include "psicalc/instances/tuple_element.hpp"

namespace psicalc {

using TrigContext = AlgebraContext<TupleElement>;
using TrigContextPtr = ContextPtr<TupleElement>;
using QTorusContext = AlgebraContext<QTorusElement>;
using QTorusContextPtr = ContextPtr<QTorusElement>;

/// Basis modes |k_j| <= bound in every component, plus the unit.
inline std::vector<TupleElement> trig_monomial_sample(std::size_t count, int dim, std::int64_t bound) {
  std::vector<TupleElement> out{TupleElement::unit(count, dim)};
  const std::int64_t bound2 = dim == 2 ? bound : 0;
  for (std::size_t c = 0; c < count; ++c)
    for (std::int64_t k1 = -bound; k1 <= bound; ++k1)
      for (std::int64_t k2 = -bound2; k2 <= bound2; ++k2)
        out.push_back(TupleElement::in_component(count, c, TrigPoly::mode(dim, {k1, k2})));
  return out;
}

/// sigma = id, delta_j = (2 pi i)^-1 d/dx_j componentwise, tau_c = constant
/// Fourier coefficient (= integral over the torus) of component c.
inline TrigContext::Spec trig_spec(std::string name, std::size_t count, int dim,
                                   std::vector<std::string> trace_names) {
  TrigContext::Spec spec;
  spec.name = std::move(name);
  spec.one = TupleElement::unit(count, dim);
  spec.zero = TupleElement::zero(count, dim);
  spec.sigma = [](const TupleElement& a) { return a; };
  spec.sigma_inv = [](const TupleElement& a) { return a; };
  spec.sigma_is_identity = true;
  for (int axis = 0; axis < dim; ++axis)
    spec.deltas.emplace_back([axis](const TupleElement& a) { return a.map([axis](const TrigPoly& p) { return p.partial(axis); }); });
  for (std::size_t c = 0; c < count; ++c)
    spec.traces.push_back({trace_names.at(c),
                           [c](const TupleElement& a) { return a.component(c).constant_coefficient(); },
                           TraceKind{0, true, true}});
  const std::int64_t bound = 2;
  spec.sample = trig_monomial_sample(count, dim, bound);
  spec.sample_description = "unit and all modes |k_j| <= " + std::to_string(bound) + " in each of " +
                            std::to_string(count) + " component(s)";
  return spec;
}

/// A = C(S^1) + C(S^1) with delta = d/dx and the traces tau_1, tau_2.
inline TrigContext::Spec circle2_spec() { return trig_spec("circle2", 2, 1, {"1", "2"}); }
/// A = C(T)^4 with delta_1, delta_2 and the four traces tau_{s,t}.
inline TrigContext::Spec torus4_spec() { return trig_spec("torus4", 4, 2, {"11", "12", "21", "22"}); }
/// Single copies C(S^1) and C(T).
inline TrigContext::Spec circle_spec() { return trig_spec("circle", 1, 1, {"1"}); }
inline TrigContext::Spec torus_spec() { return trig_spec("torus", 1, 2, {"1"}); }

inline TrigContextPtr make_circle2_context() { return finalize_context(TrigContext(circle2_spec())); }
inline TrigContextPtr make_torus4_context() { return finalize_context(TrigContext(torus4_spec())); }
inline TrigContextPtr make_circle_context() { return finalize_context(TrigContext(circle_spec())); }
inline TrigContextPtr make_torus_context() { return finalize_context(TrigContext(torus_spec())); }

struct QTorusParams {
  unsigned order = 2;  // q = zeta_N
  std::int64_t r = 1;  // W = U^r V^s
  std::int64_t s = 1;
  QTorusElement x1 = QTorusElement::monomial(2, 2, 0);
  QTorusElement x2 = QTorusElement::monomial(2, 0, 2);
};

/// W^k = (U^r V^s)^k as a normal-ordered element (k may be negative).
inline QTorusElement qtorus_w_power(unsigned order, std::int64_t r, std::int64_t s, std::int64_t k) {
  const QTorusElement w = QTorusElement::monomial(order, r, s);
  const QTorusElement base = k >= 0 ? w : w.monomial_inverse();
  QTorusElement out = QTorusElement::monomial(order, 0, 0);
  for (std::int64_t i = 0; i < (k >= 0 ? k : -k); ++i) out = out * base;
  return out;
}

/// Monomials U^m V^n with |m|, |n| <= bound.
inline std::vector<QTorusElement> qtorus_monomial_sample(unsigned order, std::int64_t bound) {
  std::vector<QTorusElement> out;
  for (std::int64_t m = -bound; m <= bound; ++m)
    for (std::int64_t n = -bound; n <= bound; ++n) out.push_back(QTorusElement::monomial(order, m, n));
  return out;
}

/// Quantum torus UV = qVU with the inner twist sigma = Ad(W), the inner
/// sigma-derivations delta_i(a) = x_i a - sigma(a) x_i, and the traces
/// tau_W2(a) = tau_0(a W^-2) (a sigma^2-trace) and tau_W1(a) = tau_0(a W^-1)
/// (a sigma-trace), tau_0 being the U^0 V^0 coefficient.
///
/// sigma is applied as literal conjugation; its closed form
/// sigma^k(U^m V^n) = q^{k(rn - sm)} U^m V^n is registered as the power map and
/// cross-checked against conjugation by the hypothesis checker.
inline QTorusContext::Spec qtorus_spec(const QTorusParams& p, std::size_t delta_count = 2) {
  const unsigned N = p.order;
  if (N == 0) throw ContractViolation("qtorus: N must be positive");
  if (p.x1.order() != N || p.x2.order() != N) throw ContextMismatch("qtorus: x1, x2 must live at the same root of unity");
  const auto n = static_cast<std::int64_t>(N);
  if ((2 * p.r) % n != 0 || (2 * p.s) % n != 0)
    throw HypothesisError("qtorus: W^2 not central (need N | 2r and N | 2s), N=" + std::to_string(N) +
                          " r=" + std::to_string(p.r) + " s=" + std::to_string(p.s));

  const QTorusElement w = qtorus_w_power(N, p.r, p.s, 1);
  const QTorusElement w_inv = qtorus_w_power(N, p.r, p.s, -1);
  const QTorusElement w_inv2 = qtorus_w_power(N, p.r, p.s, -2);
  const std::int64_t r = p.r;
  const std::int64_t s = p.s;

  QTorusContext::Spec spec;
  spec.name = "qtorus(N=" + std::to_string(N) + ",r=" + std::to_string(r) + ",s=" + std::to_string(s) + ")";
  spec.one = QTorusElement::monomial(N, 0, 0);
  spec.zero = QTorusElement(N);
  spec.sigma = [w, w_inv](const QTorusElement& a) { return w * a * w_inv; };
  spec.sigma_inv = [w, w_inv](const QTorusElement& a) { return w_inv * a * w; };
  spec.sigma_power = [N, r, s](Order k, const QTorusElement& a) {
    return a.diagonal([&](std::int64_t m, std::int64_t nn) { return root_of_unity_power(N, k * (r * nn - s * m)); });
  };
  auto sigma_closed = spec.sigma_power;
  const std::vector<QTorusElement> xs{p.x1, p.x2};
  for (std::size_t i = 0; i < delta_count; ++i) {
    const QTorusElement x = xs.at(i);
    spec.deltas.emplace_back([x, sigma_closed](const QTorusElement& a) { return x * a - sigma_closed(1, a) * x; });
  }
  // tau_0((x a - sigma(a) x) W^-2) = tau_0(x a W^-2) - tau_0(a W^-1 x W^-1) vanishes for all a iff x
  // commutes with W; tau_W1 is invariant under every inner sigma-derivation.
  bool x_fixed = true;
  for (std::size_t i = 0; i < delta_count; ++i) x_fixed = x_fixed && sigma_closed(1, xs[i]) == xs[i];
  spec.traces.push_back({"W2", [w_inv2](const QTorusElement& a) { return (a * w_inv2).constant_coefficient(); },
                         TraceKind{2, x_fixed, true}});
  spec.traces.push_back({"W1", [w_inv](const QTorusElement& a) { return (a * w_inv).constant_coefficient(); },
                         TraceKind{1, true, true}});
  const std::int64_t bound = 4;
  spec.sample = qtorus_monomial_sample(N, bound);
  spec.sample_description = "all monomials U^m V^n with |m|, |n| <= " + std::to_string(bound);
  return spec;
}

/// Default instance: N = 2 (q = -1), r = s = 1, x1 = U^2, x2 = V^2.
inline QTorusContextPtr make_qtorus_context(const QTorusParams& p = {}) {
  return finalize_context(QTorusContext(qtorus_spec(p)));
}

inline QTorusContextPtr make_qtorus_context(unsigned N, std::int64_t r, std::int64_t s, const QTorusElement& x1,
                                            const QTorusElement& x2) {
  return make_qtorus_context(QTorusParams{N, r, s, x1, x2});
}

/// One-derivation twisted context delta(a) = x a - sigma(a) x with an
/// arbitrary x; sigma and delta need not commute here.
inline QTorusContextPtr make_qtorus1d_context(unsigned N, std::int64_t r, std::int64_t s, const QTorusElement& x) {
  return finalize_context(QTorusContext(qtorus_spec(QTorusParams{N, r, s, x, x}, 1)));
}

}  // namespace psicalc
