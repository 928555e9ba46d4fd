#include <algorithm>
#include <limits>

#include "esym/errors.hpp"
#include "esym/formula.hpp"

namespace esym {

namespace {

std::int64_t saturating_add(std::int64_t a, std::int64_t b) {
  constexpr auto kMax = std::numeric_limits<std::int64_t>::max();
  return a > kMax - b ? kMax : a + b;
}

// Number of parents of each node; the output gets one extra so it is never released.
std::vector<std::uint32_t> use_counts(const Graph& g) {
  std::vector<std::uint32_t> uses(g.node_count(), 0);
  for (NodeId id = 0; id < g.node_count(); ++id) {
    for (NodeId c : g.children(id)) ++uses[c];
  }
  ++uses[g.output()];
  return uses;
}

// Bottom-up expansion that hands each finished node polynomial to `visit`
// and frees child polynomials once their last parent is done.
template <class Visit>
Polynomial expand_streaming(const Graph& g, RingMode mode, Visit&& visit) {
  std::vector<std::uint32_t> remaining = use_counts(g);
  std::vector<Polynomial> value(g.node_count(), Polynomial(mode));
  for (NodeId id = 0; id < g.node_count(); ++id) {
    Polynomial p(mode);
    switch (g.kind(id)) {
      case NodeKind::variable: p = Polynomial::variable(g.variable(id), mode); break;
      case NodeKind::constant: p = Polynomial::constant(g.constant(id), mode); break;
      case NodeKind::sum:
        for (NodeId c : g.children(id)) p += value[c];
        break;
      case NodeKind::product: {
        const auto kids = g.children(id);
        p = value[kids[0]];
        for (std::size_t i = 1; i < kids.size(); ++i) p = p * value[kids[i]];
        break;
      }
    }
    for (NodeId c : g.children(id)) {
      if (--remaining[c] == 0) value[c] = Polynomial(mode);
    }
    visit(id, p);
    value[id] = std::move(p);
  }
  return std::move(value[g.output()]);
}

}  // namespace

Shape analyze(const Graph& g) {
  Shape shape;
  const std::size_t n = g.node_count();
  std::vector<std::uint32_t> depth(n, 0), pdepth(n, 0);
  std::vector<std::int64_t> degree(n, 0);
  std::vector<VarId> vars;
  for (NodeId id = 0; id < n; ++id) {
    switch (g.kind(id)) {
      case NodeKind::variable:
        ++shape.size;
        degree[id] = 1;
        vars.push_back(g.variable(id));
        break;
      case NodeKind::constant: ++shape.size; break;
      case NodeKind::sum:
      case NodeKind::product: {
        const bool is_product = g.kind(id) == NodeKind::product;
        for (NodeId c : g.children(id)) {
          depth[id] = std::max(depth[id], depth[c] + 1);
          pdepth[id] = std::max(pdepth[id], pdepth[c]);
          degree[id] = is_product ? saturating_add(degree[id], degree[c]) : std::max(degree[id], degree[c]);
        }
        if (is_product) ++pdepth[id];
        break;
      }
    }
  }
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  shape.depth = depth[g.output()];
  shape.product_depth = pdepth[g.output()];
  shape.formal_degree = degree[g.output()];
  shape.variables = std::move(vars);
  return shape;
}

Polynomial expand(const Graph& g, RingMode mode) {
  return expand_streaming(g, mode, [](NodeId, const Polynomial&) {});
}

std::vector<Polynomial> expand_all(const Graph& g, RingMode mode) {
  std::vector<Polynomial> all(g.node_count(), Polynomial(mode));
  expand_streaming(g, mode, [&](NodeId id, const Polynomial& p) { all[id] = p; });
  return all;
}

Rational eval(const Graph& g, const std::map<VarId, Rational>& point) {
  std::vector<Rational> value(g.node_count());
  for (NodeId id = 0; id < g.node_count(); ++id) {
    switch (g.kind(id)) {
      case NodeKind::variable: {
        auto it = point.find(g.variable(id));
        if (it == point.end()) throw MissingVariableError("evaluation point misses variable", g.variable(id));
        value[id] = it->second;
        break;
      }
      case NodeKind::constant: value[id] = g.constant(id); break;
      case NodeKind::sum:
        value[id] = 0;
        for (NodeId c : g.children(id)) value[id] += value[c];
        break;
      case NodeKind::product:
        value[id] = 1;
        for (NodeId c : g.children(id)) value[id] *= value[c];
        break;
    }
  }
  return value[g.output()];
}

PropertyReport verify_properties(const Graph& g, const Weighting* w) {
  PropertyReport r;
  const Weighting unit = Weighting::unit();
  const Weighting& weights = w ? *w : unit;

  auto fail = [](bool& flag, std::optional<NodeId>& first, NodeId id) {
    if (flag) first = id;
    flag = false;
  };

  // Structural checks: constants, sum-degree consistency, syntactic multilinearity.
  const std::size_t n = g.node_count();
  std::vector<std::int64_t> degree(n, 0);
  std::vector<std::vector<VarId>> vars(n);
  std::vector<std::uint32_t> remaining = use_counts(g);
  for (NodeId id = 0; id < n; ++id) {
    switch (g.kind(id)) {
      case NodeKind::variable:
        degree[id] = 1;
        vars[id] = {g.variable(id)};
        break;
      case NodeKind::constant:
        if (g.constant(id) < 0) fail(r.monotone, r.first_negative_constant, id);
        break;
      case NodeKind::sum:
      case NodeKind::product: {
        const auto kids = g.children(id);
        const bool is_product = g.kind(id) == NodeKind::product;
        std::vector<VarId> merged;
        bool disjoint = true;
        for (NodeId c : kids) {
          degree[id] = is_product ? saturating_add(degree[id], degree[c]) : std::max(degree[id], degree[c]);
          std::vector<VarId> next;
          next.reserve(merged.size() + vars[c].size());
          std::set_union(merged.begin(), merged.end(), vars[c].begin(), vars[c].end(), std::back_inserter(next));
          if (is_product && next.size() != merged.size() + vars[c].size()) disjoint = false;
          merged = std::move(next);
        }
        if (!is_product) {
          for (NodeId c : kids) {
            if (degree[c] != degree[kids[0]]) {
              fail(r.sum_degrees_consistent, r.first_inconsistent_sum, id);
              break;
            }
          }
        }
        if (!disjoint) fail(r.syntactically_multilinear, r.first_non_syntactically_multilinear, id);
        vars[id] = std::move(merged);
        for (NodeId c : kids) {
          if (--remaining[c] == 0) std::vector<VarId>().swap(vars[c]);
        }
        break;
      }
    }
  }

  // Semantic checks by expansion of every node.
  expand_streaming(g, RingMode::commutative, [&](NodeId id, const Polynomial& p) {
    const PolyProps props = poly_props(p);
    if (!props.is_homogeneous) fail(r.homogeneous, r.first_non_homogeneous, id);
    if (!props.is_multilinear) fail(r.multilinear, r.first_non_multilinear, id);
    if (!is_w_homogeneous(p, weights)) fail(r.w_homogeneous, r.first_non_w_homogeneous, id);
  });
  return r;
}

}  // namespace esym
