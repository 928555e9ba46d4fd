#include <algorithm>
#include <limits>
#include <set>

#include "esym/errors.hpp"
#include "esym/formula.hpp"

namespace esym {

namespace {
constexpr NodeId kUnset = std::numeric_limits<NodeId>::max();
}

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::variable: return "variable";
    case NodeKind::constant: return "constant";
    case NodeKind::sum: return "sum";
    case NodeKind::product: return "product";
  }
  return "?";
}

std::size_t Graph::max_fan_in() const {
  std::size_t out = 0;
  for (const Node& n : nodes_) out = std::max<std::size_t>(out, n.child_count);
  return out;
}

// ---------------------------------------------------------------------------
// Formula

std::optional<NodeId> Formula::parent(NodeId id) const {
  if (id == output()) return std::nullopt;
  return parent_[id];
}

std::vector<VarId> Formula::variables(NodeId id) const {
  // Subtree of `id` occupies the contiguous id range [id - nodes_below + 1, id]
  // in post-order; walk it explicitly to stay independent of that layout.
  std::set<VarId> vars;
  std::vector<NodeId> stack{id};
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    if (kind(u) == NodeKind::variable) vars.insert(variable(u));
    for (NodeId c : children(u)) stack.push_back(c);
  }
  return {vars.begin(), vars.end()};
}

void Formula::annotate() {
  const std::size_t n = nodes_.size();
  formal_degree_.assign(n, 0);
  leaf_count_.assign(n, 0);
  parent_.assign(n, kUnset);
  for (NodeId id = 0; id < n; ++id) {
    switch (kind(id)) {
      case NodeKind::variable:
        formal_degree_[id] = 1;
        leaf_count_[id] = 1;
        break;
      case NodeKind::constant:
        formal_degree_[id] = 0;
        leaf_count_[id] = 1;
        break;
      case NodeKind::sum:
      case NodeKind::product: {
        std::int64_t d = 0;
        std::uint64_t leaves = 0;
        for (NodeId c : children(id)) {
          d = kind(id) == NodeKind::sum ? std::max(d, formal_degree_[c]) : d + formal_degree_[c];
          leaves += leaf_count_[c];
          parent_[c] = id;
        }
        formal_degree_[id] = d;
        leaf_count_[id] = leaves;
        break;
      }
    }
  }
  parent_[output()] = output();
}

bool Formula::annotations_consistent() const {
  Formula copy = *this;
  copy.annotate();
  return copy.formal_degree_ == formal_degree_ && copy.leaf_count_ == leaf_count_ && copy.parent_ == parent_;
}

// ---------------------------------------------------------------------------
// Circuit

std::vector<std::uint32_t> Circuit::fan_out() const {
  std::vector<std::uint32_t> out(node_count(), 0);
  for (NodeId e : edges_) ++out[e];
  return out;
}

bool Circuit::is_tree() const {
  const auto fo = fan_out();
  return std::all_of(fo.begin(), fo.end(), [](std::uint32_t f) { return f <= 1; });
}

Circuit Circuit::from_nodes(const std::vector<NodeSpec>& specs, std::size_t output) {
  if (output >= specs.size()) throw StructuralError("circuit output index out of range");
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto& s = specs[i];
    const bool leaf = s.kind == NodeKind::variable || s.kind == NodeKind::constant;
    if (leaf && !s.children.empty()) throw StructuralError("leaf node " + std::to_string(i) + " has children");
    if (!leaf && s.children.size() < 2) {
      throw StructuralError("node " + std::to_string(i) + " has fan-in below two");
    }
    for (std::size_t c : s.children) {
      if (c >= specs.size()) throw StructuralError("node " + std::to_string(i) + " references a missing child");
    }
  }

  enum class Mark : std::uint8_t { white, gray, black };
  std::vector<Mark> mark(specs.size(), Mark::white);
  std::vector<NodeId> built(specs.size(), kUnset);
  GraphBuilder b;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{output, 0}};
  mark[output] = Mark::gray;
  while (!stack.empty()) {
    auto& [u, next] = stack.back();
    const auto& kids = specs[u].children;
    if (next < kids.size()) {
      const std::size_t c = kids[next++];
      if (mark[c] == Mark::gray) throw StructuralError("cycle through node " + std::to_string(c));
      if (mark[c] == Mark::white) {
        mark[c] = Mark::gray;
        stack.emplace_back(c, 0);
      }
      continue;
    }
    const auto& s = specs[u];
    std::vector<NodeId> mapped;
    for (std::size_t c : kids) mapped.push_back(built[c]);
    switch (s.kind) {
      case NodeKind::variable: built[u] = b.variable(s.var); break;
      case NodeKind::constant: built[u] = b.constant(s.value); break;
      case NodeKind::sum: built[u] = b.sum(std::move(mapped)); break;
      case NodeKind::product: built[u] = b.product(std::move(mapped)); break;
    }
    mark[u] = Mark::black;
    stack.pop_back();
  }
  return b.circuit(built[output]);
}

// ---------------------------------------------------------------------------
// GraphBuilder

NodeId GraphBuilder::push(NodeKind kind, std::uint32_t payload, std::span<const NodeId> children) {
  const auto id = static_cast<NodeId>(nodes_.size());
  for (NodeId c : children) {
    if (c >= id) throw StructuralError("builder child id " + std::to_string(c) + " does not exist yet");
  }
  nodes_.push_back({kind, payload, static_cast<std::uint32_t>(edges_.size()),
                    static_cast<std::uint32_t>(children.size())});
  edges_.insert(edges_.end(), children.begin(), children.end());
  return id;
}

NodeId GraphBuilder::variable(VarId var) { return push(NodeKind::variable, var, {}); }

NodeId GraphBuilder::constant(const Rational& value) {
  constants_.push_back(value);
  return push(NodeKind::constant, static_cast<std::uint32_t>(constants_.size() - 1), {});
}

NodeId GraphBuilder::sum(std::vector<NodeId> children) {
  if (children.empty()) throw StructuralError("sum node without children");
  if (children.size() == 1) return children.front();
  return push(NodeKind::sum, 0, children);
}

NodeId GraphBuilder::product(std::vector<NodeId> children) {
  if (children.empty()) throw StructuralError("product node without children");
  if (children.size() == 1) return children.front();
  return push(NodeKind::product, 0, children);
}

NodeId GraphBuilder::graft(const Graph& g, NodeId root) {
  std::vector<NodeId> mapped(root + 1, kUnset);
  std::vector<std::pair<NodeId, std::size_t>> stack{{root, 0}};
  while (!stack.empty()) {
    auto& [u, next] = stack.back();
    const auto kids = g.children(u);
    if (next < kids.size()) {
      const NodeId c = kids[next++];
      if (mapped[c] == kUnset) stack.emplace_back(c, 0);
      continue;
    }
    if (mapped[u] == kUnset) {
      switch (g.kind(u)) {
        case NodeKind::variable: mapped[u] = variable(g.variable(u)); break;
        case NodeKind::constant: mapped[u] = constant(g.constant(u)); break;
        case NodeKind::sum:
        case NodeKind::product: {
          std::vector<NodeId> ch;
          ch.reserve(kids.size());
          for (NodeId c : kids) ch.push_back(mapped[c]);
          mapped[u] = push(g.kind(u), 0, ch);
          break;
        }
      }
    }
    stack.pop_back();
  }
  return mapped[root];
}

template <class G>
void GraphBuilder::extract(NodeId root, G& out) const {
  constexpr bool kTree = std::is_same_v<G, Formula>;
  if (root >= nodes_.size()) throw StructuralError("builder root does not exist");
  std::vector<NodeId> mapped(root + 1, kUnset);
  std::vector<bool> entered(root + 1, false);
  std::vector<std::pair<NodeId, std::size_t>> stack{{root, 0}};
  entered[root] = true;
  while (!stack.empty()) {
    auto& [u, next] = stack.back();
    const Graph::Node& node = nodes_[u];
    if (next < node.child_count) {
      const NodeId c = edges_[node.first_child + next++];
      if (entered[c]) {
        if constexpr (kTree) {
          throw StructuralError("node shared by two parents; not a formula");
        }
        continue;
      }
      entered[c] = true;
      stack.emplace_back(c, 0);
      continue;
    }
    const auto new_id = static_cast<NodeId>(out.nodes_.size());
    Graph::Node copy = node;
    if (node.kind == NodeKind::constant) {
      out.constants_.push_back(constants_[node.payload]);
      copy.payload = static_cast<std::uint32_t>(out.constants_.size() - 1);
    }
    copy.first_child = static_cast<std::uint32_t>(out.edges_.size());
    for (std::uint32_t i = 0; i < node.child_count; ++i) {
      out.edges_.push_back(mapped[edges_[node.first_child + i]]);
    }
    out.nodes_.push_back(copy);
    mapped[u] = new_id;
    stack.pop_back();
  }
}

Formula GraphBuilder::formula(NodeId root) const {
  Formula f;
  extract(root, f);
  f.annotate();
  return f;
}

Circuit GraphBuilder::circuit(NodeId root) const {
  Circuit c;
  extract(root, c);
  return c;
}

Formula variable_formula(VarId var) {
  GraphBuilder b;
  return b.formula(b.variable(var));
}

Formula constant_formula(const Rational& value) {
  GraphBuilder b;
  return b.formula(b.constant(value));
}

}  // namespace esym
