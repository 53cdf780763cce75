#pragma once

#include <functional>
#include <string>
#include <vector>

#include "psicalc/algebra/context.hpp"

namespace psicalc {

namespace detail {

template <AlgebraElement E>
class CheckRecorder {
 public:
  explicit CheckRecorder(HypothesisReport& report) : report_(report) {}

  /// Evaluates `holds` on every element of the sample.
  void unary(const std::string& name, const std::vector<E>& sample, bool expected,
             const std::function<bool(const E&)>& holds) {
    HypothesisCheck check{name, expected, true, 0, {}};
    for (const auto& a : sample) {
      ++check.cases;
      if (!holds(a)) {
        check.holds = false;
        check.witness = "a = " + a.to_string();
        break;
      }
    }
    report_.checks.push_back(std::move(check));
  }

  /// Evaluates `holds` on every ordered pair of sample elements.
  void binary(const std::string& name, const std::vector<E>& sample, bool expected,
              const std::function<bool(const E&, const E&)>& holds) {
    HypothesisCheck check{name, expected, true, 0, {}};
    for (const auto& a : sample) {
      for (const auto& b : sample) {
        ++check.cases;
        if (!holds(a, b)) {
          check.holds = false;
          check.witness = "a = " + a.to_string() + ", b = " + b.to_string();
          break;
        }
      }
      if (!check.holds) break;
    }
    report_.checks.push_back(std::move(check));
  }

 private:
  HypothesisReport& report_;
};

}  // namespace detail

/// Verifies, exactly on all elements and ordered pairs of `sample`, the
/// structural hypotheses of a context: sigma is a unital multiplicative
/// bijection, each delta obeys delta(ab) = delta(a) b + sigma(a) delta(b),
/// the maps pairwise commute when two derivations are present, and each trace
/// has exactly its declared twist, delta-invariance and sigma-invariance.
///
/// On basis-indexed instances a sample containing every basis monomial up to a
/// degree bound decides each bilinear identity on the span of those monomials.
template <AlgebraElement E>
HypothesisReport check_hypotheses(const AlgebraContext<E>& ctx, const std::vector<E>& sample) {
  if (sample.empty()) throw ContractViolation("check_hypotheses: empty sample");
  HypothesisReport report;
  report.sample_description = ctx.sample_description().empty()
                                  ? std::to_string(sample.size()) + " sample elements"
                                  : ctx.sample_description();
  detail::CheckRecorder<E> rec(report);
  const auto& spec = ctx.spec();
  const auto& sigma = spec.sigma;
  const auto& sigma_inv = spec.sigma_inv;

  if (spec.sigma_is_identity)
    rec.unary("sigma.identity", sample, true, [&](const E& a) { return sigma(a) == a; });
  rec.unary("sigma.unit", {ctx.one()}, true, [&](const E& a) { return sigma(a) == a; });
  rec.binary("sigma.multiplicative", sample, true,
             [&](const E& a, const E& b) { return sigma(a * b) == sigma(a) * sigma(b); });
  rec.unary("sigma.inverse", sample, true,
            [&](const E& a) { return sigma(sigma_inv(a)) == a && sigma_inv(sigma(a)) == a; });
  if (spec.sigma_power) {
    rec.unary("sigma.power", sample, true, [&](const E& a) {
      E up = a;
      E down = a;
      for (Order k = 1; k <= 3; ++k) {
        up = sigma(up);
        down = sigma_inv(down);
        if (spec.sigma_power(k, a) != up || spec.sigma_power(-k, a) != down) return false;
      }
      return spec.sigma_power(0, a) == a;
    });
  }

  for (std::size_t i = 0; i < ctx.delta_count(); ++i) {
    const std::string d = "delta" + std::to_string(i + 1);
    const auto& delta = spec.deltas[i];
    rec.binary(d + ".leibniz", sample, true, [&](const E& a, const E& b) {
      return delta(a * b) == delta(a) * b + sigma(a) * delta(b);
    });
    if (ctx.delta_count() == 2)
      rec.unary(d + ".sigma_commute", sample, true,
                [&](const E& a) { return delta(sigma(a)) == sigma(delta(a)); });
  }
  if (ctx.delta_count() == 2)
    rec.unary("delta12.commute", sample, true, [&](const E& a) {
      return spec.deltas[0](spec.deltas[1](a)) == spec.deltas[1](spec.deltas[0](a));
    });

  for (const auto& t : ctx.traces()) {
    const std::string prefix = "trace[" + t.name + "].";
    const int k = t.kind.twist_power;
    rec.binary(prefix + "twisted_trace(k=" + std::to_string(k) + ")", sample, true,
               [&](const E& a, const E& b) { return t.apply(a * b) == t.apply(ctx.sigma_pow(k, b) * a); });
    for (std::size_t i = 0; i < ctx.delta_count(); ++i) {
      const auto& delta = spec.deltas[i];
      rec.unary(prefix + "delta" + std::to_string(i + 1) + "_invariant", sample, t.kind.delta_invariant,
                [&](const E& a) { return t.apply(delta(a)).is_zero(); });
    }
    rec.unary(prefix + "sigma_invariant", sample, t.kind.sigma_invariant,
              [&](const E& a) { return t.apply(sigma(a)) == t.apply(a); });
  }
  return report;
}

template <AlgebraElement E>
HypothesisReport check_hypotheses(const AlgebraContext<E>& ctx) {
  return check_hypotheses(ctx, ctx.sample());
}

/// Runs the checker over the context's own sample and returns the verified
/// context. With `require_pass` a failing report raises HypothesisError naming
/// the first violated hypothesis and its witness.
template <AlgebraElement E>
ContextPtr<E> finalize_context(const AlgebraContext<E>& ctx, bool require_pass = true) {
  HypothesisReport report = check_hypotheses(ctx);
  if (require_pass && !report.all_passed()) {
    for (const auto& c : report.checks)
      if (!c.passed())
        throw HypothesisError("context " + ctx.name() + ": hypothesis " + c.name + " violated (" + c.witness + ")");
  }
  return std::make_shared<const AlgebraContext<E>>(ctx.with_report(std::move(report)));
}

}  // namespace psicalc
