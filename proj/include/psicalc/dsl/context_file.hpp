#pragma once

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <variant>

#include "json.hpp"
#include "psicalc/algebra/checker.hpp"
#include "psicalc/dsl/evaluator.hpp"
#include "psicalc/dsl/parser.hpp"

namespace psicalc::dsl {

/// Malformed or inconsistent context description.
class ContextFileError : public ContextMismatch {
 public:
  using ContextMismatch::ContextMismatch;
};

using TrigWorkspace1 = Workspace<TupleElement, 1>;
using TrigWorkspace2 = Workspace<TupleElement, 2>;
using QTorusWorkspace1 = Workspace<QTorusElement, 1>;
using QTorusWorkspace2 = Workspace<QTorusElement, 2>;
using AnyWorkspace = std::variant<TrigWorkspace1, TrigWorkspace2, QTorusWorkspace1, QTorusWorkspace2>;

/// Context file layout:
///   {"kind": "circle2" | "circle" | "torus4" | "torus" | "qtorus",
///    "N": 2, "r": 1, "s": 1, "x1": "U^2", "x2": "V^2", "dimension": 2,   (qtorus only)
///    "bindings": {"a": "e[1,0]@(1,1)", ...},
///    "floors": [-8, -8]}
/// Binding expressions may use the built-in names of the instance. With
/// require_pass the hypothesis checker must accept the context; otherwise the
/// (possibly failing) report is kept on the context for inspection.
inline AnyWorkspace load_workspace(const nlohmann::json& j, bool require_pass = true) {
  if (!j.is_object()) throw ContextFileError("context file must hold a JSON object");
  static const std::set<std::string> known{"kind", "N", "r", "s", "x1", "x2", "dimension", "bindings", "floors"};
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) throw ContextFileError("unknown context field '" + key + "'");
  if (!j.contains("kind") || !j["kind"].is_string()) throw ContextFileError("context file needs a string field 'kind'");
  const std::string kind = j["kind"].get<std::string>();
  const bool is_qtorus = kind == "qtorus";
  if (!is_qtorus)
    for (const char* key : {"N", "r", "s", "x1", "x2", "dimension"})
      if (j.contains(key)) throw ContextFileError(std::string("field '") + key + "' only applies to qtorus contexts");

  BiFloor floors{-8, -8};
  if (j.contains("floors")) {
    const auto& f = j["floors"];
    if (f.is_number_integer()) {
      floors = {f.get<Order>(), f.get<Order>()};
    } else if (f.is_array() && (f.size() == 1 || f.size() == 2) &&
               std::all_of(f.begin(), f.end(), [](const nlohmann::json& v) { return v.is_number_integer(); })) {
      floors = {f[0].get<Order>(), f[f.size() - 1].get<Order>()};
    } else {
      throw ContextFileError("'floors' must be an integer or a list of one or two integers");
    }
  }

  auto get_int = [&](const char* key, std::int64_t fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_integer()) throw ContextFileError(std::string("'") + key + "' must be an integer");
    return j[key].get<std::int64_t>();
  };

  auto bind = [&](auto& env) {
    if (!j.contains("bindings")) return;
    if (!j["bindings"].is_object()) throw ContextFileError("'bindings' must map names to expressions");
    auto base = env;
    for (const auto& [name, value] : j["bindings"].items()) {
      const auto& reserved = reserved_names();
      if (std::find(reserved.begin(), reserved.end(), name) != reserved.end())
        throw ContextFileError("binding '" + name + "' shadows a built-in name");
      const auto tree = parse(name);
      if (tree->kind != NodeKind::ident) throw ContextFileError("binding name '" + name + "' is not an identifier");
      if (!value.is_string()) throw ContextFileError("binding '" + name + "' must be an expression string");
      env.names[name] = eval_element(*parse(value.template get<std::string>()), base);
    }
  };

  auto trig = [&](TrigContext::Spec spec, int dim) -> AnyWorkspace {
    const auto ctx = finalize_context(TrigContext(std::move(spec)), require_pass);
    auto env = trig_env(*ctx);
    bind(env);
    if (dim == 1) return TrigWorkspace1{ctx, env, floors};
    return TrigWorkspace2{ctx, env, floors};
  };

  if (kind == "circle2") return trig(circle2_spec(), 1);
  if (kind == "circle") return trig(circle_spec(), 1);
  if (kind == "torus4") return trig(torus4_spec(), 2);
  if (kind == "torus") return trig(torus_spec(), 2);
  if (!is_qtorus)
    throw ContextFileError("unknown context kind '" + kind + "' (circle2, circle, torus4, torus, qtorus)");

  const std::int64_t order = get_int("N", 2);
  if (order < 1 || order > 1000) throw ContextFileError("'N' must lie in 1..1000");
  const auto N = static_cast<unsigned>(order);
  const std::int64_t dimension = get_int("dimension", 2);
  if (dimension != 1 && dimension != 2) throw ContextFileError("'dimension' must be 1 or 2");
  if (dimension == 1 && j.contains("x2")) throw ContextFileError("a one-dimensional qtorus takes only 'x1'");

  auto env = qtorus_env(N);
  auto element = [&](const char* key, const char* fallback) {
    if (j.contains(key) && !j[key].is_string()) throw ContextFileError(std::string("'") + key + "' must be an expression");
    return eval_element(*parse(j.contains(key) ? j[key].get<std::string>() : std::string(fallback)), env);
  };
  QTorusParams p{N, get_int("r", 1), get_int("s", 1), element("x1", "U^2"), element("x2", "V^2")};
  const auto ctx = finalize_context(QTorusContext(qtorus_spec(p, static_cast<std::size_t>(dimension))), require_pass);
  bind(env);
  if (dimension == 1) return QTorusWorkspace1{ctx, env, floors};
  return QTorusWorkspace2{ctx, env, floors};
}

inline nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ContextFileError("cannot open context file '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ContextFileError("context file '" + path + "' is not valid JSON: " + e.what());
  }
}

inline AnyWorkspace load_workspace_file(const std::string& path, bool require_pass = true) {
  return load_workspace(read_json_file(path), require_pass);
}

}  // namespace psicalc::dsl
