#pragma once

#include <string>

#include "psicalc/dsl/ast.hpp"

namespace psicalc::dsl {

namespace detail {

inline std::string int_list(const std::vector<std::int64_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

inline bool is_atomic(NodeKind k) {
  return k == NodeKind::scalar || k == NodeKind::ident || k == NodeKind::basis || k == NodeKind::xi ||
         k == NodeKind::commutator || k == NodeKind::call;
}

}  // namespace detail

/// Canonical text of an expression. Binary operations are fully parenthesized,
/// so the result parses back to the same tree.
inline std::string print(const Node& n) {
  switch (n.kind) {
    case NodeKind::scalar:
    case NodeKind::ident:
    case NodeKind::xi:
      return n.text;
    case NodeKind::basis: {
      std::string out = "e[" + detail::int_list(n.frequency) + "]";
      if (!n.component.empty()) out += "@(" + detail::int_list(n.component) + ")";
      return out;
    }
    case NodeKind::add:
      return "(" + print(*n.children[0]) + " + " + print(*n.children[1]) + ")";
    case NodeKind::sub:
      return "(" + print(*n.children[0]) + " - " + print(*n.children[1]) + ")";
    case NodeKind::mul:
      return "(" + print(*n.children[0]) + " * " + print(*n.children[1]) + ")";
    case NodeKind::neg:
      return "-" + print(*n.children[0]);
    case NodeKind::pow: {
      const Node& base = *n.children[0];
      const std::string b = detail::is_atomic(base.kind) ? print(base) : "(" + print(base) + ")";
      return b + "^" + std::to_string(n.exponent);
    }
    case NodeKind::commutator:
      return "[" + print(*n.children[0]) + ", " + print(*n.children[1]) + "]";
    case NodeKind::call: {
      std::string out = n.text + "(" + print(*n.children[0]);
      if (!n.option.empty()) out += ", t=\"" + n.option + "\"";
      return out + ")";
    }
  }
  return {};
}

inline std::string print(const NodePtr& n) { return print(*n); }

}  // namespace psicalc::dsl
