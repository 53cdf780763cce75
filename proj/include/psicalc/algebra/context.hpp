#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "psicalc/scalar/scalars.hpp"

namespace psicalc {

/// An element of a concrete unital associative algebra over an exact field.
template <class E>
concept AlgebraElement = std::regular<E> && ExactField<typename E::scalar_type> &&
    requires(const E& a, const E& b, const Rational& r, const typename E::scalar_type& s) {
      { a + b } -> std::convertible_to<E>;
      { a - b } -> std::convertible_to<E>;
      { a * b } -> std::convertible_to<E>;
      { -a } -> std::convertible_to<E>;
      { a.scaled(r) } -> std::convertible_to<E>;
      { a.scaled(s) } -> std::convertible_to<E>;
      { a.is_zero() } -> std::convertible_to<bool>;
      { a.to_string() } -> std::convertible_to<std::string>;
    };

/// Declared properties of a trace functional: tau(ab) = tau(sigma^k(b) a) with
/// k = twist_power, tau o delta_i = 0, tau o sigma = tau.
struct TraceKind {
  int twist_power = 0;
  bool delta_invariant = true;
  bool sigma_invariant = true;
};

struct HypothesisCheck {
  std::string name;
  bool expected = true;  // declared value of the property
  bool holds = true;     // observed value on the sample
  std::size_t cases = 0;
  std::string witness;   // first counterexample, empty when the property holds

  [[nodiscard]] bool passed() const { return expected == holds; }
};

struct HypothesisReport {
  std::vector<HypothesisCheck> checks;
  std::string sample_description;

  [[nodiscard]] bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed(); });
  }

  [[nodiscard]] const HypothesisCheck* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }

  /// Checks whose name starts with the prefix all passed (vacuously true when
  /// there are none).
  [[nodiscard]] bool passed_with_prefix(const std::string& prefix) const {
    return std::all_of(checks.begin(), checks.end(), [&](const auto& c) {
      return c.name.rfind(prefix, 0) != 0 || c.passed();
    });
  }

  /// sigma is an automorphism, every delta is a sigma-derivation, and all maps
  /// pairwise commute where required.
  [[nodiscard]] bool structure_ok() const {
    return passed_with_prefix("sigma.") && passed_with_prefix("delta");
  }
};

template <AlgebraElement E>
struct TraceSpec {
  using scalar_type = typename E::scalar_type;
  std::string name;
  std::function<scalar_type(const E&)> apply;
  TraceKind kind;
};

/// The data (A, sigma, sigma^-1, delta_1[, delta_2], traces) every symbol is
/// defined relative to. Immutable once built; share it through ContextPtr.
template <AlgebraElement E>
class AlgebraContext {
 public:
  using element_type = E;
  using scalar_type = typename E::scalar_type;
  using Endomap = std::function<E(const E&)>;
  using PowerMap = std::function<E(Order, const E&)>;

  struct Spec {
    std::string name;
    E one;
    E zero;
    Endomap sigma;
    Endomap sigma_inv;
    PowerMap sigma_power;  // optional closed form of sigma^k, any integer k
    std::vector<Endomap> deltas;
    std::vector<TraceSpec<E>> traces;
    bool sigma_is_identity = false;
    std::vector<E> sample;  // spanning sample used by the hypothesis checker
    std::string sample_description;
  };

  explicit AlgebraContext(Spec spec) : spec_(std::move(spec)) {
    if (spec_.deltas.empty() || spec_.deltas.size() > 2)
      throw ContractViolation("a context carries one or two derivations");
    if (!spec_.sigma || !spec_.sigma_inv) throw ContractViolation("context requires sigma and sigma^-1");
  }

  [[nodiscard]] const std::string& name() const { return spec_.name; }
  [[nodiscard]] const E& one() const { return spec_.one; }
  [[nodiscard]] const E& zero() const { return spec_.zero; }
  [[nodiscard]] std::size_t delta_count() const { return spec_.deltas.size(); }
  [[nodiscard]] std::size_t trace_count() const { return spec_.traces.size(); }
  [[nodiscard]] const std::vector<TraceSpec<E>>& traces() const { return spec_.traces; }
  [[nodiscard]] const TraceSpec<E>& trace_spec(std::size_t i) const { return spec_.traces.at(i); }
  [[nodiscard]] bool sigma_is_identity() const { return spec_.sigma_is_identity; }
  [[nodiscard]] bool hypotheses_checked() const { return hypotheses_checked_; }
  [[nodiscard]] const std::optional<HypothesisReport>& report() const { return report_; }
  [[nodiscard]] const std::vector<E>& sample() const { return spec_.sample; }
  [[nodiscard]] const std::string& sample_description() const { return spec_.sample_description; }
  [[nodiscard]] const Spec& spec() const { return spec_; }

  [[nodiscard]] E sigma(const E& a) const { return spec_.sigma_is_identity ? a : spec_.sigma(a); }
  [[nodiscard]] E sigma_inv(const E& a) const { return spec_.sigma_is_identity ? a : spec_.sigma_inv(a); }

  /// sigma^k(a) for any integer k; negative powers go through sigma^-1.
  [[nodiscard]] E sigma_pow(Order k, const E& a) const {
    if (spec_.sigma_is_identity || k == 0) return a;
    if (spec_.sigma_power) return spec_.sigma_power(k, a);
    E out = a;
    if (k > 0)
      for (Order i = 0; i < k; ++i) out = spec_.sigma(out);
    else
      for (Order i = 0; i < -k; ++i) out = spec_.sigma_inv(out);
    return out;
  }

  /// The i-th derivation, 0-based.
  [[nodiscard]] E delta(std::size_t i, const E& a) const { return spec_.deltas.at(i)(a); }

  [[nodiscard]] E delta_pow(std::size_t i, Order j, const E& a) const {
    if (j < 0) throw ContractViolation("negative power of a derivation");
    E out = a;
    for (Order s = 0; s < j; ++s) out = delta(i, out);
    return out;
  }

  [[nodiscard]] scalar_type trace(std::size_t i, const E& a) const {
    if (i >= spec_.traces.size())
      throw ContractViolation("trace index " + std::to_string(i + 1) + " out of range");
    return spec_.traces[i].apply(a);
  }

  /// Resolves a trace selector: a trace name ("11", "W2", ...) or a 1-based
  /// index.
  [[nodiscard]] std::size_t trace_index(const std::string& selector) const {
    for (std::size_t i = 0; i < spec_.traces.size(); ++i)
      if (spec_.traces[i].name == selector) return i;
    if (!selector.empty() && std::all_of(selector.begin(), selector.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      const auto idx = std::stoul(selector);
      if (idx >= 1 && idx <= spec_.traces.size()) return idx - 1;
    }
    throw ContractViolation("unknown trace '" + selector + "' in context " + spec_.name);
  }

  /// Copy of this context carrying the given checker report.
  [[nodiscard]] AlgebraContext with_report(HypothesisReport report) const {
    AlgebraContext out(*this);
    out.hypotheses_checked_ = report.all_passed();
    out.report_ = std::move(report);
    return out;
  }

  /// Copy of this context keeping only the derivation `i` (0-based).
  [[nodiscard]] AlgebraContext restricted_to_delta(std::size_t i) const {
    Spec spec = spec_;
    spec.deltas = {spec_.deltas.at(i)};
    spec.name = spec_.name + "/delta" + std::to_string(i + 1);
    return AlgebraContext(std::move(spec));
  }

 private:
  Spec spec_;
  bool hypotheses_checked_ = false;
  std::optional<HypothesisReport> report_;
};

template <AlgebraElement E>
using ContextPtr = std::shared_ptr<const AlgebraContext<E>>;

/// i-fold composition of an endomap.
template <AlgebraElement E, class F>
E iterate(const F& map, Order i, E a) {
  if (i < 0) throw ContractViolation("iterate: negative count; use sigma_pow for inverse powers");
  for (Order s = 0; s < i; ++s) a = map(a);
  return a;
}

}  // namespace psicalc
