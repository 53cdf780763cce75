#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "psicalc/bisingular.hpp"
#include "psicalc/dsl/context_file.hpp"

namespace psicalc::dsl {

using nlohmann::json;

// ---------------------------------------------------------------------------
// JSON views

inline std::vector<std::string> component_texts(const TupleElement& a) {
  std::vector<std::string> out;
  for (const auto& c : a.components()) out.push_back(c.to_string());
  return out;
}

inline std::vector<std::string> component_texts(const QTorusElement& a) { return {a.to_string()}; }

inline json floor_json(Floor f) { return f ? json(*f) : json(nullptr); }

template <AlgebraElement E>
json symbol_json(const Symbol1D<E>& d) {
  json terms = json::array();
  for (const auto& [n, a] : d.terms()) terms.push_back({{"order", {n}}, {"coefficient", component_texts(a)}});
  return {{"context", d.context()->name()}, {"dimension", 1},   {"top", {d.top()}},
          {"floor", {floor_json(d.floor())}}, {"exact", d.is_exact()}, {"terms", terms}};
}

template <AlgebraElement E>
json symbol_json(const Symbol2D<E>& d) {
  json terms = json::array();
  for (const auto& [k, a] : d.terms())
    terms.push_back({{"order", {k.first, k.second}}, {"coefficient", component_texts(a)}});
  return {{"context", d.context()->name()},
          {"dimension", 2},
          {"top", {d.tops().first, d.tops().second}},
          {"floor", {floor_json(d.floors().first), floor_json(d.floors().second)}},
          {"exact", d.is_exact()},
          {"terms", terms}};
}

inline json report_json(const std::string& context, const HypothesisReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name},
                      {"expected", c.expected},
                      {"holds", c.holds},
                      {"passed", c.passed()},
                      {"cases", c.cases},
                      {"witness", c.witness}});
  return {{"context", context}, {"sample", r.sample_description}, {"all_passed", r.all_passed()}, {"checks", checks}};
}

inline json trig_json(const TrigPoly& p) {
  json terms = json::array();
  for (const auto& [k, c] : p.terms()) {
    json freq = p.dim() == 1 ? json::array({k[0]}) : json::array({k[0], k[1]});
    terms.push_back({{"k", freq}, {"c", c.to_string()}});
  }
  return {{"terms", terms}};
}

// ---------------------------------------------------------------------------
// Errors

/// Exit status for an exception: 2 parse error, 3 context or hypothesis
/// error, 4 uncertified computation, 1 anything else.
inline int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return 2;
  if (dynamic_cast<const ContextMismatch*>(&e) || dynamic_cast<const HypothesisError*>(&e)) return 3;
  if (dynamic_cast<const UncertifiedError*>(&e)) return 4;
  return 1;
}

inline json error_json(const std::exception& e) {
  json err{{"message", e.what()}};
  if (const auto* p = dynamic_cast<const ParseError*>(&e)) {
    err["type"] = "parse_error";
    err["offset"] = p->offset();
    err["line"] = p->line();
    err["column"] = p->column();
    err["expected"] = p->expected();
  } else if (dynamic_cast<const ExpressionTypeError*>(&e)) {
    err["type"] = "type_error";
  } else if (dynamic_cast<const ContextMismatch*>(&e)) {
    err["type"] = "context_error";
  } else if (dynamic_cast<const HypothesisError*>(&e)) {
    err["type"] = "hypothesis_error";
  } else if (dynamic_cast<const UncertifiedError*>(&e)) {
    err["type"] = "uncertified";
  } else if (dynamic_cast<const ContractViolation*>(&e) || dynamic_cast<const DivisionByZero*>(&e)) {
    err["type"] = "contract_violation";
  } else {
    err["type"] = "error";
  }
  return {{"error", err}};
}

// ---------------------------------------------------------------------------
// Commands

struct CommandRequest {
  std::string command;  // mul, commutator, res, check, apply, principal
  std::optional<std::string> ctx_path;
  std::optional<json> ctx_json;  // used instead of ctx_path when set
  std::optional<std::string> floor;
  std::optional<std::string> trace;
  std::optional<std::string> u;
  std::map<std::string, std::string> bisingular;  // b0, b1, b2, b12
  std::vector<std::string> exprs;
};

struct CommandResult {
  int exit_code = 0;
  std::string output;  // one JSON document
};

namespace detail {

inline BiFloor parse_floor_option(const std::string& text) {
  const auto comma = text.find(',');
  try {
    std::size_t used = 0;
    const std::string a = text.substr(0, comma);
    const Order m = std::stoll(a, &used);
    if (used != a.size()) throw std::invalid_argument(a);
    if (comma == std::string::npos) return {m, m};
    const std::string b = text.substr(comma + 1);
    const Order n = std::stoll(b, &used);
    if (used != b.size()) throw std::invalid_argument(b);
    return {m, n};
  } catch (const std::logic_error&) {
    throw ContractViolation("--floor expects 'm' or 'm,n', got '" + text + "'");
  }
}

inline AnyWorkspace workspace_for(const CommandRequest& req, bool require_pass = true) {
  AnyWorkspace ws = req.ctx_json ? load_workspace(*req.ctx_json, require_pass)
                   : req.ctx_path ? load_workspace_file(*req.ctx_path, require_pass)
                                  : throw ContractViolation(req.command + " needs a context (--ctx)");
  if (req.floor) {
    const BiFloor f = parse_floor_option(*req.floor);
    std::visit([&](auto& w) { w.floors = f; }, ws);
  }
  return ws;
}

template <class W>
typename W::Sym symbol_of(const W& w, const std::string& text) {
  auto v = evaluate(w, parse(text));
  if (auto* s = std::get_if<typename W::Sym>(&v)) return *s;
  throw ExpressionTypeError("'" + text + "' evaluates to a scalar; a symbol is required");
}

/// u as a JSON object {"k": "c"} (one-dimensional) or {"k1,k2": "c"}.
inline TrigPoly parse_u(const std::string& text, int dim) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ContractViolation(std::string("--u is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ContractViolation("--u must map frequencies to coefficients");
  TrigPoly u(dim);
  for (const auto& [key, value] : j.items()) {
    if (!value.is_string()) throw ContractViolation("--u coefficient for '" + key + "' must be a string");
    Frequency k{0, 0};
    const auto comma = key.find(',');
    try {
      if ((comma == std::string::npos) != (dim == 1)) throw std::invalid_argument(key);
      std::size_t used = 0;
      const std::string first = key.substr(0, comma);
      k[0] = std::stoll(first, &used);
      if (used != first.size()) throw std::invalid_argument(key);
      if (dim == 2) {
        const std::string second = key.substr(comma + 1);
        k[1] = std::stoll(second, &used);
        if (used != second.size()) throw std::invalid_argument(key);
      }
    } catch (const std::logic_error&) {
      throw ContractViolation("--u frequency '" + key + "' does not match the context dimension");
    }
    u.add_term(k, GaussianRational::parse(value.get<std::string>()));
  }
  return u;
}

inline json run_principal(const CommandRequest& req) {
  const auto torus = make_torus_context();
  const auto env = trig_env(*torus);
  auto coefficient = [&](const char* name) {
    auto it = req.bisingular.find(name);
    if (it == req.bisingular.end()) return TrigPoly(2);
    return eval_element(*parse(it->second), env).component(0);
  };
  const BisingularData data{coefficient("b0"), coefficient("b1"), coefficient("b2"), coefficient("b12")};
  const TupleElement symbol = principal_symbol(data);
  return {{"labels", {"11", "12", "21", "22"}}, {"components", component_texts(symbol)}};
}

template <class W>
json run_in_workspace(const CommandRequest& req, const W& w) {
  const auto& cmd = req.command;
  if (cmd == "check") {
    const auto& rep = w.ctx->report();
    return report_json(w.ctx->name(), *rep);
  }
  if (cmd == "mul") {
    if (req.exprs.empty()) throw ContractViolation("mul needs at least one expression");
    auto acc = symbol_of(w, req.exprs.front());
    for (std::size_t i = 1; i < req.exprs.size(); ++i) acc = product(w, acc, symbol_of(w, req.exprs[i]));
    return symbol_json(acc);
  }
  if (cmd == "commutator") {
    if (req.exprs.size() != 2) throw ContractViolation("commutator needs exactly two expressions");
    const auto a = symbol_of(w, req.exprs[0]);
    const auto b = symbol_of(w, req.exprs[1]);
    return symbol_json(product(w, a, b) - product(w, b, a));
  }
  if (cmd == "res") {
    if (req.exprs.size() != 1) throw ContractViolation("res needs exactly one expression");
    auto v = evaluate(w, parse(req.exprs[0]));
    if (auto* s = std::get_if<typename W::Scalar>(&v)) {
      if (req.trace) throw ContractViolation("--trace given for an expression that already computes a residue");
      return {{"value", s->to_string()}};
    }
    return {{"value", residue(w, std::get<typename W::Sym>(v), "auto", req.trace.value_or("")).to_string()}};
  }
  if (cmd == "apply") {
    if constexpr (std::is_same_v<typename W::element_type, TupleElement>) {
      if (req.exprs.size() != 1) throw ContractViolation("apply needs exactly one expression");
      if (!req.u) throw ContractViolation("apply needs --u");
      const auto d = symbol_of(w, req.exprs[0]);
      return trig_json(apply_operator(d, parse_u(*req.u, W::dimension)));
    } else {
      throw ContextMismatch("apply acts on trigonometric polynomials; context " + w.ctx->name() + " is not one");
    }
  }
  throw ContractViolation("unknown command '" + cmd + "'");
}

}  // namespace detail

/// Runs one command and renders its JSON document (an error document and a
/// nonzero exit status on failure).
inline CommandResult run_command(const CommandRequest& req) {
  try {
    json out;
    if (req.command == "principal") {
      out = detail::run_principal(req);
    } else {
      const bool checking = req.command == "check";
      AnyWorkspace ws = detail::workspace_for(req, !checking);
      out = std::visit([&](const auto& w) { return detail::run_in_workspace(req, w); }, ws);
      if (checking && !out["all_passed"].get<bool>()) {
        out["error"] = {{"type", "hypothesis_error"}, {"message", "context fails the hypothesis checker"}};
        return {3, out.dump() + "\n"};
      }
    }
    return {0, out.dump() + "\n"};
  } catch (const std::exception& e) {
    return {exit_code_for(e), error_json(e).dump() + "\n"};
  }
}

}  // namespace psicalc::dsl
