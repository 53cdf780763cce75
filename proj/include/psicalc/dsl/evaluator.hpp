#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <type_traits>
#include <variant>

#include "psicalc/dsl/ast.hpp"
#include "psicalc/dsl/printer.hpp"
#include "psicalc/instances/contexts.hpp"
#include "psicalc/symbols/symbol1d.hpp"
#include "psicalc/symbols/symbol2d.hpp"

namespace psicalc::dsl {

/// The expression does not type-check against the active context.
class ExpressionTypeError : public ContextMismatch {
 public:
  using ContextMismatch::ContextMismatch;
};

/// Names and literals usable inside algebra-element expressions.
template <AlgebraElement E>
struct ElementEnv {
  E one;
  std::map<std::string, E> names;
  std::function<E(const Node&)> basis;      // empty when basis literals are not available
  std::function<E(const E&)> inverse;       // inverse of an invertible element, throws otherwise
};

inline bool is_element_expr(const Node& n) {
  if (n.kind == NodeKind::xi || n.kind == NodeKind::commutator || n.kind == NodeKind::call) return false;
  for (const auto& c : n.children)
    if (!is_element_expr(*c)) return false;
  return true;
}

template <AlgebraElement E>
E eval_element(const Node& n, const ElementEnv<E>& env) {
  switch (n.kind) {
    case NodeKind::scalar:
      return env.one.scaled(Rational::parse(n.text));
    case NodeKind::ident: {
      auto it = env.names.find(n.text);
      if (it == env.names.end()) throw ExpressionTypeError("unknown identifier '" + n.text + "'");
      return it->second;
    }
    case NodeKind::basis:
      if (!env.basis) throw ExpressionTypeError("basis literal " + print(n) + " is not available in this context");
      return env.basis(n);
    case NodeKind::add:
      return eval_element(*n.children[0], env) + eval_element(*n.children[1], env);
    case NodeKind::sub:
      return eval_element(*n.children[0], env) - eval_element(*n.children[1], env);
    case NodeKind::mul:
      return eval_element(*n.children[0], env) * eval_element(*n.children[1], env);
    case NodeKind::neg:
      return -eval_element(*n.children[0], env);
    case NodeKind::pow: {
      E base = eval_element(*n.children[0], env);
      if (n.exponent < 0) base = env.inverse(base);
      E out = env.one;
      for (std::int64_t k = 0; k < (n.exponent < 0 ? -n.exponent : n.exponent); ++k) out = out * base;
      return out;
    }
    default:
      throw ExpressionTypeError("'" + print(n) + "' is not an algebra element");
  }
}

// ---------------------------------------------------------------------------
// Element environments for the shipped instances

/// (c e_k)^-1 = c^-1 e_{-k}, componentwise; only single-mode components invert.
inline TrigPoly trig_inverse(const TrigPoly& p) {
  if (p.terms().size() != 1) throw ContractViolation("only single Fourier modes are invertible, got " + p.to_string());
  const auto& [k, c] = *p.terms().begin();
  return TrigPoly::mode(p.dim(), {-k[0], -k[1]}, c.inverse());
}

inline ElementEnv<TupleElement> trig_env(const TrigContext& ctx) {
  const std::size_t count = ctx.one().size();
  const int dim = ctx.one().dim();
  ElementEnv<TupleElement> env;
  env.one = ctx.one();
  env.names["unit"] = ctx.one();
  env.names["i"] = ctx.one().scaled(GaussianRational::i());
  env.basis = [count, dim](const Node& n) {
    if (static_cast<int>(n.frequency.size()) != dim)
      throw ExpressionTypeError("basis literal " + print(n) + " needs " + std::to_string(dim) + " frequency entries");
    Frequency k{n.frequency[0], dim == 2 ? n.frequency[1] : 0};
    const TrigPoly mode = TrigPoly::mode(dim, k);
    if (n.component.empty()) return TupleElement::diagonal(count, mode);
    auto bad = [&]() { return ExpressionTypeError("component " + print(n) + " does not exist in this context"); };
    for (auto c : n.component)
      if (c < 1 || c > 2) throw bad();
    std::size_t index = 0;
    if (count == 1) {
      for (auto c : n.component)
        if (c != 1) throw bad();
    } else if (count == 2) {
      if (n.component.size() != 1) throw bad();
      index = static_cast<std::size_t>(n.component[0] - 1);
    } else {
      if (n.component.size() != 2) throw bad();
      index = static_cast<std::size_t>((n.component[0] - 1) * 2 + (n.component[1] - 1));
    }
    return TupleElement::in_component(count, index, mode);
  };
  env.inverse = [](const TupleElement& a) { return a.map(trig_inverse); };
  return env;
}

inline ElementEnv<QTorusElement> qtorus_env(unsigned order) {
  ElementEnv<QTorusElement> env;
  env.one = QTorusElement::monomial(order, 0, 0);
  env.names["unit"] = env.one;
  env.names["q"] = QTorusElement::constant(order, Cyclotomic::root_power(order, 1));
  env.names["U"] = QTorusElement::monomial(order, 1, 0);
  env.names["V"] = QTorusElement::monomial(order, 0, 1);
  env.inverse = [](const QTorusElement& a) { return a.monomial_inverse(); };
  return env;
}

inline const std::vector<std::string>& reserved_names() {
  static const std::vector<std::string> names{"unit", "i", "q", "U", "V", "e", "xi", "xi1", "xi2", "res", "res_sigma", "Res"};
  return names;
}

// ---------------------------------------------------------------------------
// Symbol-level evaluation

/// Everything needed to evaluate expressions against one context: symbols are
/// one-dimensional (Dim = 1) or two-dimensional (Dim = 2).
template <AlgebraElement E, int Dim>
struct Workspace {
  using element_type = E;
  using Sym = std::conditional_t<Dim == 1, Symbol1D<E>, Symbol2D<E>>;
  using Scalar = typename E::scalar_type;
  using Value = std::variant<Sym, Scalar>;
  static constexpr int dimension = Dim;

  ContextPtr<E> ctx;
  ElementEnv<E> env;
  BiFloor floors{-8, -8};
};

namespace detail {

template <class W>
typename W::Sym xi_symbol(const W& w, const Node& n, Order power) {
  if constexpr (W::dimension == 1) {
    if (n.text == "xi2") throw ExpressionTypeError("xi2 is not available in a one-dimensional context");
    return W::Sym::xi(w.ctx, power);
  } else {
    if (n.text == "xi") throw ExpressionTypeError("two-dimensional contexts use xi1 and xi2, not xi");
    return n.text == "xi1" ? W::Sym::xi(w.ctx, power, 0) : W::Sym::xi(w.ctx, 0, power);
  }
}

}  // namespace detail

/// Product with the workspace floors applied only on axes where the left
/// factor has negative orders (an infinite tail); all other axes stay exact.
template <class W>
typename W::Sym product(const W& w, const typename W::Sym& a, const typename W::Sym& b) {
  if constexpr (W::dimension == 1) {
    const auto low = a.lowest_order();
    return mul(a, b, low && *low < 0 ? w.floors.first : exact_floor);
  } else {
    const auto low1 = a.lowest_order(0);
    const auto low2 = a.lowest_order(1);
    return mul2(a, b, BiFloor{low1 && *low1 < 0 ? w.floors.first : exact_floor,
                              low2 && *low2 < 0 ? w.floors.second : exact_floor});
  }
}

/// Trace used when no selector is given: the first declared trace that the
/// operation accepts.
template <class W>
std::size_t default_trace(const W& w, const std::string& op) {
  const auto& traces = w.ctx->traces();
  if (op == "res_sigma" && !w.ctx->sigma_is_identity())
    for (std::size_t i = 0; i < traces.size(); ++i)
      if (traces[i].kind.twist_power == 1) return i;
  return 0;
}

template <class W>
std::size_t select_trace(const W& w, const std::string& op, const std::string& selector) {
  if (selector.empty()) return default_trace(w, op);
  try {
    return w.ctx->trace_index(selector);
  } catch (const Error&) {
    throw ExpressionTypeError("context " + w.ctx->name() + " has no trace '" + selector + "'");
  }
}

/// Residue of a symbol. op is "res", "res_sigma" or "Res"; "auto" picks the
/// residue matching the workspace (Res in 2D, res or res_sigma in 1D).
template <class W>
typename W::Scalar residue(const W& w, const typename W::Sym& d, std::string op, const std::string& selector) {
  if constexpr (W::dimension == 1) {
    if (op == "auto") op = w.ctx->sigma_is_identity() ? "res" : "res_sigma";
    if (op == "Res") throw ExpressionTypeError("Res needs a two-dimensional context; use res or res_sigma");
    const std::size_t t = select_trace(w, op, selector);
    return op == "res" ? res(d, t) : res_sigma(d, t);
  } else {
    if (op != "Res" && op != "auto") throw ExpressionTypeError(op + " needs a one-dimensional context; use Res");
    return res2(d, select_trace(w, "Res", selector));
  }
}

/// Value of a tree built from numbers alone, as a scalar like `like`.
template <class Scalar>
std::optional<Scalar> numeric_value(const Node& n, const Scalar& like) {
  auto child = [&](std::size_t i) { return numeric_value(*n.children[i], like); };
  switch (n.kind) {
    case NodeKind::scalar:
      if constexpr (std::is_same_v<Scalar, Cyclotomic>) return Cyclotomic(like.order(), 1) * Rational::parse(n.text);
      else return Scalar(Rational::parse(n.text));
    case NodeKind::neg: {
      auto v = child(0);
      return v ? std::optional<Scalar>(-*v) : std::nullopt;
    }
    case NodeKind::add:
    case NodeKind::sub:
    case NodeKind::mul: {
      auto l = child(0), r = child(1);
      if (!l || !r) return std::nullopt;
      if (n.kind == NodeKind::add) return *l + *r;
      if (n.kind == NodeKind::sub) return *l - *r;
      return *l * *r;
    }
    default:
      return std::nullopt;
  }
}

template <class W>
typename W::Value evaluate(const W& w, const Node& n) {
  using Sym = typename W::Sym;
  using Scalar = typename W::Scalar;
  using Value = typename W::Value;
  if (is_element_expr(n)) return Sym::constant(w.ctx, eval_element(n, w.env));

  auto symbol = [&](const Node& c) -> Sym {
    Value v = evaluate(w, c);
    if (auto* s = std::get_if<Sym>(&v)) return *s;
    throw ExpressionTypeError("'" + print(c) + "' is a scalar where a symbol is expected");
  };

  switch (n.kind) {
    case NodeKind::xi:
      return detail::xi_symbol(w, n, 1);
    case NodeKind::pow: {
      const Node& base = *n.children[0];
      if (base.kind == NodeKind::xi) return detail::xi_symbol(w, base, n.exponent);
      if (n.exponent < 0) throw ExpressionTypeError("negative powers apply to xi and to invertible elements only");
      Value v = evaluate(w, base);
      if (auto* s = std::get_if<Scalar>(&v)) {
        Scalar out = Scalar(1);
        if constexpr (std::is_same_v<Scalar, Cyclotomic>) out = Cyclotomic(s->order(), 1);
        for (std::int64_t k = 0; k < n.exponent; ++k) out = out * *s;
        return out;
      }
      const Sym b = std::get<Sym>(v);
      Sym out = Sym::constant(w.ctx, w.env.one);
      for (std::int64_t k = 0; k < n.exponent; ++k) out = product(w, out, b);
      return out;
    }
    case NodeKind::neg: {
      Value v = evaluate(w, *n.children[0]);
      if (auto* s = std::get_if<Scalar>(&v)) return -*s;
      return -std::get<Sym>(v);
    }
    case NodeKind::add:
    case NodeKind::sub:
    case NodeKind::mul: {
      Value l = evaluate(w, *n.children[0]);
      Value r = evaluate(w, *n.children[1]);
      // plain numbers next to a residue value are scalars, not constant symbols
      if (const auto* s = std::get_if<Scalar>(&l)) {
        if (auto v = numeric_value(*n.children[1], *s)) r = *v;
      } else if (const auto* s2 = std::get_if<Scalar>(&r)) {
        if (auto v = numeric_value(*n.children[0], *s2)) l = *v;
      }
      const auto* ls = std::get_if<Scalar>(&l);
      const auto* rs = std::get_if<Scalar>(&r);
      if (ls && rs) {
        if (n.kind == NodeKind::add) return *ls + *rs;
        if (n.kind == NodeKind::sub) return *ls - *rs;
        return *ls * *rs;
      }
      if (n.kind == NodeKind::mul && (ls || rs)) {
        const Scalar c = ls ? *ls : *rs;
        return std::get<Sym>(ls ? r : l).map_coefficients([&](const typename W::element_type& a) { return a.scaled(c); });
      }
      if (ls || rs) throw ExpressionTypeError("cannot add a residue value to a symbol in '" + print(n) + "'");
      const Sym& a = std::get<Sym>(l);
      const Sym& b = std::get<Sym>(r);
      if (n.kind == NodeKind::add) return a + b;
      if (n.kind == NodeKind::sub) return a - b;
      return product(w, a, b);
    }
    case NodeKind::commutator: {
      const Sym a = symbol(*n.children[0]);
      const Sym b = symbol(*n.children[1]);
      return product(w, a, b) - product(w, b, a);
    }
    case NodeKind::call:
      return residue(w, symbol(*n.children[0]), n.text, n.option);
    default:
      break;
  }
  throw ExpressionTypeError("cannot evaluate '" + print(n) + "'");
}

template <class W>
typename W::Value evaluate(const W& w, const NodePtr& n) {
  return evaluate(w, *n);
}

}  // namespace psicalc::dsl
