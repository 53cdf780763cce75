#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace psicalc::dsl {

enum class NodeKind {
  scalar,      // text: canonical rational "p" or "p/q"
  ident,       // text: name
  basis,       // ints: frequency (1 or 2 entries), component (0, 1 or 2 entries)
  xi,          // text: "xi", "xi1" or "xi2"
  add,
  sub,
  mul,
  neg,
  pow,         // children[0] raised to exponent
  commutator,
  call,        // text: function name; option: trace selector ("" if absent)
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  NodeKind kind;
  std::string text;
  std::vector<std::int64_t> frequency;
  std::vector<std::int64_t> component;
  std::int64_t exponent = 0;
  std::string option;
  std::vector<NodePtr> children;
  std::size_t offset = 0;  // source position, ignored by equality
};

/// Structural equality (source offsets are not compared).
inline bool same_tree(const Node& a, const Node& b) {
  if (a.kind != b.kind || a.text != b.text || a.frequency != b.frequency || a.component != b.component ||
      a.exponent != b.exponent || a.option != b.option || a.children.size() != b.children.size())
    return false;
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!same_tree(*a.children[i], *b.children[i])) return false;
  return true;
}

inline bool same_tree(const NodePtr& a, const NodePtr& b) { return same_tree(*a, *b); }

namespace make {

inline NodePtr leaf(NodeKind kind, std::string text, std::size_t offset = 0) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->text = std::move(text);
  n->offset = offset;
  return n;
}

inline NodePtr scalar(std::string text, std::size_t offset = 0) { return leaf(NodeKind::scalar, std::move(text), offset); }
inline NodePtr ident(std::string name, std::size_t offset = 0) { return leaf(NodeKind::ident, std::move(name), offset); }
inline NodePtr xi(std::string name, std::size_t offset = 0) { return leaf(NodeKind::xi, std::move(name), offset); }

inline NodePtr basis(std::vector<std::int64_t> frequency, std::vector<std::int64_t> component, std::size_t offset = 0) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::basis;
  n->frequency = std::move(frequency);
  n->component = std::move(component);
  n->offset = offset;
  return n;
}

inline NodePtr binary(NodeKind kind, NodePtr l, NodePtr r, std::size_t offset = 0) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->children = {std::move(l), std::move(r)};
  n->offset = offset;
  return n;
}

inline NodePtr neg(NodePtr x, std::size_t offset = 0) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::neg;
  n->children = {std::move(x)};
  n->offset = offset;
  return n;
}

inline NodePtr pow(NodePtr base, std::int64_t exponent, std::size_t offset = 0) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::pow;
  n->children = {std::move(base)};
  n->exponent = exponent;
  n->offset = offset;
  return n;
}

inline NodePtr call(std::string name, NodePtr arg, std::string option, std::size_t offset = 0) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::call;
  n->text = std::move(name);
  n->children = {std::move(arg)};
  n->option = std::move(option);
  n->offset = offset;
  return n;
}

}  // namespace make

}  // namespace psicalc::dsl
