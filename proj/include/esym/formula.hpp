#pragma once

// Arithmetic formula / circuit IR.
//
// Both are stored as a flat node array in topological order (children have
// smaller ids than their parents) with a single designated output, which is
// always the last node. A Formula additionally guarantees that every node
// except the output has exactly one parent; a Circuit may share nodes.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "esym/polynomial.hpp"
#include "esym/rational.hpp"

namespace esym {

using NodeId = std::uint32_t;

enum class NodeKind : std::uint8_t { variable, constant, sum, product };

std::string_view to_string(NodeKind kind);

class GraphBuilder;

class Graph {
 public:
  std::size_t node_count() const { return nodes_.size(); }
  NodeId output() const { return static_cast<NodeId>(nodes_.size() - 1); }

  NodeKind kind(NodeId id) const { return nodes_[id].kind; }
  bool is_leaf(NodeId id) const { return kind(id) == NodeKind::variable || kind(id) == NodeKind::constant; }
  /// Only valid for variable leaves.
  VarId variable(NodeId id) const { return nodes_[id].payload; }
  /// Only valid for constant leaves.
  const Rational& constant(NodeId id) const { return constants_[nodes_[id].payload]; }
  std::span<const NodeId> children(NodeId id) const {
    const Node& n = nodes_[id];
    return {edges_.data() + n.first_child, n.child_count};
  }
  std::size_t max_fan_in() const;

 protected:
  Graph() = default;
  friend class GraphBuilder;

  struct Node {
    NodeKind kind;
    std::uint32_t payload;  // variable id or constant index
    std::uint32_t first_child;
    std::uint32_t child_count;
  };

  std::vector<Node> nodes_;
  std::vector<NodeId> edges_;
  std::vector<Rational> constants_;
};

/// A tree-shaped graph. Caches formal degree, subtree leaf count and parent
/// links per node.
class Formula : public Graph {
 public:
  /// Formal degree: 0 at constants, 1 at variables, max at sums, sum at products.
  std::int64_t formal_degree(NodeId id) const { return formal_degree_[id]; }
  /// Number of leaves below (and including) the node.
  std::uint64_t leaf_count(NodeId id) const { return leaf_count_[id]; }
  std::optional<NodeId> parent(NodeId id) const;
  /// Size of the formula = number of leaves.
  std::uint64_t size() const { return leaf_count_.back(); }
  /// Distinct variables of the subformula at `id`, ascending.
  std::vector<VarId> variables(NodeId id) const;

  /// Recomputes every cached annotation from scratch and compares.
  bool annotations_consistent() const;

 private:
  friend class GraphBuilder;
  void annotate();

  std::vector<std::int64_t> formal_degree_;
  std::vector<std::uint64_t> leaf_count_;
  std::vector<NodeId> parent_;  // output's parent is itself
};

/// A DAG-shaped graph.
class Circuit : public Graph {
 public:
  struct NodeSpec {
    NodeKind kind = NodeKind::constant;
    VarId var = 0;
    Rational value;
    std::vector<std::size_t> children;  // indices into the node list, any order
  };

  /// Builds a circuit from an arbitrary node list. Rejects cycles and
  /// sum/product nodes with fewer than two children (StructuralError).
  /// Nodes not reachable from `output` are dropped.
  static Circuit from_nodes(const std::vector<NodeSpec>& nodes, std::size_t output);

  /// Number of nodes that use `id` as a child.
  std::vector<std::uint32_t> fan_out() const;
  bool is_tree() const;

 private:
  friend class GraphBuilder;
};

/// Incremental construction. Node ids returned here are builder-local; the
/// final Formula/Circuit is renumbered to contain only the cone of the root.
class GraphBuilder {
 public:
  NodeId variable(VarId var);
  NodeId constant(const Rational& value);
  /// A sum node. One child collapses to that child; zero children throws.
  NodeId sum(std::vector<NodeId> children);
  /// A product node. One child collapses to that child; zero children throws.
  NodeId product(std::vector<NodeId> children);
  /// Copies the cone of `root` in `g`. Shared nodes of a circuit stay shared.
  NodeId graft(const Graph& g, NodeId root);
  NodeId graft(const Graph& g) { return graft(g, g.output()); }

  NodeKind kind(NodeId id) const { return nodes_[id].kind; }
  const Rational& constant_value(NodeId id) const { return constants_[nodes_[id].payload]; }

  /// Throws StructuralError if a node in the cone of `root` has two parents.
  Formula formula(NodeId root) const;
  Circuit circuit(NodeId root) const;

 private:
  NodeId push(NodeKind kind, std::uint32_t payload, std::span<const NodeId> children);
  template <class G>
  void extract(NodeId root, G& out) const;

  std::vector<Graph::Node> nodes_;
  std::vector<NodeId> edges_;
  std::vector<Rational> constants_;
};

// ---------------------------------------------------------------------------
// Analysis

struct Shape {
  std::uint64_t size = 0;  // leaves (each leaf node once)
  std::uint32_t depth = 0;
  std::uint32_t product_depth = 0;
  std::int64_t formal_degree = 0;
  std::vector<VarId> variables;
};

Shape analyze(const Graph& g);

Polynomial expand(const Graph& g, RingMode mode = RingMode::commutative);
/// Polynomial of every node, indexed by node id.
std::vector<Polynomial> expand_all(const Graph& g, RingMode mode = RingMode::commutative);
/// Throws MissingVariableError when the point does not cover a variable.
Rational eval(const Graph& g, const std::map<VarId, Rational>& point);

struct PropertyReport {
  bool homogeneous = true;
  bool w_homogeneous = true;
  bool multilinear = true;
  bool syntactically_multilinear = true;
  bool monotone = true;
  /// Every sum node's children share one formal degree.
  bool sum_degrees_consistent = true;

  std::optional<NodeId> first_non_homogeneous;
  std::optional<NodeId> first_non_w_homogeneous;
  std::optional<NodeId> first_non_multilinear;
  std::optional<NodeId> first_non_syntactically_multilinear;
  std::optional<NodeId> first_negative_constant;
  std::optional<NodeId> first_inconsistent_sum;
};

/// Per-node checks by full expansion of every node. Without a weighting the
/// w-homogeneity check uses w = 1.
PropertyReport verify_properties(const Graph& g, const Weighting* w = nullptr);

// ---------------------------------------------------------------------------
// Transforms

/// Left-deep fan-in-2 rewrite over the stored child order.
Formula binarize(const Formula& f);
Circuit binarize(const Circuit& c);

/// Replaces each occurrence of variable i by a fresh copy of substitutes[i].
Formula substitute(const Formula& f, const std::map<VarId, Formula>& substitutes);

/// The subformula rooted at `node`.
Formula subformula(const Formula& f, NodeId node);
/// f with the subtree at `node` replaced by the constant `alpha`.
Formula restrict(const Formula& f, NodeId node, const Rational& alpha);

/// Removes zero constants: products with a zero child become 0, sums drop
/// zero children. The result is the single leaf 0 only when it computes 0
/// structurally.
Formula prune_zeros(const Formula& f);
bool is_zero_leaf(const Formula& f);

/// Replaces every constant a by |a|.
Formula abs_constants(const Formula& f);

/// Unfolds a circuit into a formula (copies shared nodes). Exponential in the
/// worst case; intended for trees and small circuits.
Formula unfold(const Circuit& c);

/// Leaves + structure equality (same kinds, payloads and child order).
bool structurally_equal(const Graph& a, const Graph& b);

/// S-expression form, see docs/FORMATS.md.
std::string serialize(const Graph& g);
Formula parse_formula(std::string_view text);

/// Convenience leaves-only constructors.
Formula variable_formula(VarId var);
Formula constant_formula(const Rational& value);

}  // namespace esym
