#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <unordered_map>

#include "esym/constructions.hpp"
#include "esym/errors.hpp"

namespace esym {

std::vector<std::uint64_t> w_degrees(const Graph& g, const Weighting& w) {
  std::vector<std::uint64_t> deg(g.node_count(), 0);
  for (NodeId u = 0; u < g.node_count(); ++u) {
    switch (g.kind(u)) {
      case NodeKind::variable: deg[u] = w.weight(g.variable(u)); break;
      case NodeKind::constant: deg[u] = 0; break;
      case NodeKind::sum: {
        const auto kids = g.children(u);
        deg[u] = deg[kids[0]];
        for (NodeId c : kids) {
          if (deg[c] != deg[u]) {
            throw PreconditionError("not w-homogeneous at node " + std::to_string(u) + ": sum of w-degrees " +
                                    std::to_string(deg[u]) + " and " + std::to_string(deg[c]));
          }
        }
        break;
      }
      case NodeKind::product:
        for (NodeId c : g.children(u)) deg[u] += deg[c];
        break;
    }
  }
  return deg;
}

Circuit normalize(const Circuit& c, const Weighting& w) {
  const std::vector<Polynomial> polys = expand_all(c);
  GraphBuilder b;
  std::vector<std::optional<NodeId>> mapped(c.node_count());
  for (NodeId u = 0; u < c.node_count(); ++u) {
    if (polys[u].is_zero()) continue;
    if (!is_w_homogeneous(polys[u], w)) {
      throw PreconditionError("circuit is not w-homogeneous at node " + std::to_string(u));
    }
    switch (c.kind(u)) {
      case NodeKind::variable: mapped[u] = b.variable(c.variable(u)); break;
      case NodeKind::constant: mapped[u] = b.constant(c.constant(u)); break;
      case NodeKind::sum:
      case NodeKind::product: {
        std::vector<NodeId> kids;
        for (NodeId k : c.children(u)) {
          if (mapped[k]) kids.push_back(*mapped[k]);
        }
        mapped[u] = c.kind(u) == NodeKind::sum ? b.sum(std::move(kids)) : b.product(std::move(kids));
        break;
      }
    }
  }
  const auto root = mapped[c.output()];
  return b.circuit(root ? *root : b.constant(Rational(0)));
}

std::vector<NodeId> frontier(const Circuit& c, const Weighting& w) {
  const std::vector<std::uint64_t> deg = w_degrees(c, w);
  const std::uint64_t k = deg[c.output()];
  if (k < 2) throw PreconditionError("frontier needs output w-degree k >= 2 (k=" + std::to_string(k) + ")");
  std::vector<NodeId> out;
  for (NodeId u = 0; u < c.node_count(); ++u) {
    if (2 * deg[u] <= k) continue;
    if (c.kind(u) == NodeKind::variable) {
      out.push_back(u);
    } else if (c.kind(u) == NodeKind::product) {
      bool light = true;
      for (NodeId ch : c.children(u)) light = light && 2 * deg[ch] <= k;
      if (light) out.push_back(u);
    }
  }
  if (out.empty()) throw StructuralError("empty frontier; is the circuit normalized?");
  return out;
}

Circuit gate_quotient(const Circuit& c, NodeId v) {
  if (v >= c.node_count()) throw PreconditionError("gate " + std::to_string(v) + " out of range");
  GraphBuilder b;
  std::vector<NodeId> orig(c.node_count());
  enum class Q { zero, one, node };
  struct Entry {
    Q tag = Q::zero;
    NodeId id = 0;
  };
  std::vector<Entry> q(c.node_count());

  for (NodeId u = 0; u < c.node_count(); ++u) {
    const auto kids = c.children(u);
    switch (c.kind(u)) {
      case NodeKind::variable: orig[u] = b.variable(c.variable(u)); break;
      case NodeKind::constant: orig[u] = b.constant(c.constant(u)); break;
      case NodeKind::sum:
      case NodeKind::product: {
        std::vector<NodeId> mapped;
        for (NodeId k : kids) mapped.push_back(orig[k]);
        orig[u] = c.kind(u) == NodeKind::sum ? b.sum(std::move(mapped)) : b.product(std::move(mapped));
        break;
      }
    }
    if (u == v) {
      q[u] = {Q::one, 0};
      continue;
    }
    if (c.kind(u) == NodeKind::sum) {
      std::vector<NodeId> parts;
      for (NodeId k : kids) {
        if (q[k].tag == Q::one) parts.push_back(b.constant(Rational(1)));
        if (q[k].tag == Q::node) parts.push_back(q[k].id);
      }
      if (!parts.empty()) q[u] = {Q::node, b.sum(std::move(parts))};
    } else if (c.kind(u) == NodeKind::product) {
      std::optional<std::size_t> anc;
      for (std::size_t i = 0; i < kids.size(); ++i) {
        if (q[kids[i]].tag == Q::zero) continue;
        if (anc) {
          throw InvariantViolation("gate " + std::to_string(v) + " lies below two factors of product " + std::to_string(u));
        }
        anc = i;
      }
      if (!anc) continue;
      std::vector<NodeId> factors;
      if (q[kids[*anc]].tag == Q::node) factors.push_back(q[kids[*anc]].id);
      for (std::size_t i = 0; i < kids.size(); ++i) {
        if (i != *anc) factors.push_back(orig[kids[i]]);
      }
      q[u] = {Q::node, b.product(std::move(factors))};
    }
  }
  const Entry& root = q[c.output()];
  if (root.tag == Q::zero) return b.circuit(b.constant(Rational(0)));
  if (root.tag == Q::one) return b.circuit(b.constant(Rational(1)));
  return b.circuit(root.id);
}

FrontierIdentity frontier_identity(const Circuit& c, const Weighting& w) {
  FrontierIdentity out;
  out.circuit = expand(c);
  const Circuit cn = binarize(normalize(c, w));
  const std::vector<std::uint64_t> deg = w_degrees(cn, w);
  if (deg[cn.output()] < 2) {
    out.decomposed = expand(cn);
    return out;
  }
  const std::vector<Polynomial> polys = expand_all(cn);
  const std::vector<NodeId> gates = frontier(cn, w);
  out.frontier_size = gates.size();
  for (NodeId v : gates) {
    Polynomial term = expand(gate_quotient(cn, v));
    if (cn.kind(v) == NodeKind::variable) {
      term = term * polys[v];
    } else {
      for (NodeId ch : cn.children(v)) term = term * polys[ch];
    }
    out.decomposed = out.decomposed + term;
  }
  return out;
}

namespace {

// Recursive balancing over normalized fan-in-2 circuits. Sub-problems are
// memoized by a canonical id so shared cones are only converted once.
class Balancer {
 public:
  explicit Balancer(const Weighting& w) : w_(w) {}

  Formula run(const Circuit& g) {
    const std::uint32_t key = canonical_id(g);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Formula f = convert(g);
    memo_.emplace(key, f);
    return f;
  }

 private:
  std::uint32_t canonical_id(const Graph& g) {
    std::vector<std::uint32_t> ids(g.node_count());
    for (NodeId u = 0; u < g.node_count(); ++u) {
      std::string key;
      switch (g.kind(u)) {
        case NodeKind::variable: key = "v" + std::to_string(g.variable(u)); break;
        case NodeKind::constant: key = "c" + to_string(g.constant(u)); break;
        case NodeKind::sum:
        case NodeKind::product:
          key = g.kind(u) == NodeKind::sum ? "+(" : "*(";
          for (NodeId ch : g.children(u)) key += std::to_string(ids[ch]) + ",";
          key += ")";
          break;
      }
      ids[u] = table_.try_emplace(std::move(key), static_cast<std::uint32_t>(table_.size())).first->second;
    }
    return ids[g.output()];
  }

  static Circuit cone(const Circuit& g, NodeId root) {
    GraphBuilder b;
    return b.circuit(b.graft(g, root));
  }

  static bool is_zero_constant(const Graph& g) {
    return g.kind(g.output()) == NodeKind::constant && g.constant(g.output()) == 0;
  }

  // A polynomial of w-degree <= 1 as a flat sum of scaled leaves.
  static Formula flatten(const Polynomial& p) {
    if (p.is_zero()) return constant_formula(Rational(0));
    GraphBuilder b;
    std::vector<NodeId> terms;
    for (const auto& [m, coeff] : p.terms()) {
      if (m.powers().empty()) {
        terms.push_back(b.constant(coeff));
        continue;
      }
      const NodeId x = b.variable(m.powers()[0].var);
      terms.push_back(coeff == 1 ? x : b.product({b.constant(coeff), x}));
    }
    return b.formula(b.sum(std::move(terms)));
  }

  Formula convert(const Circuit& g) {
    if (is_zero_constant(g)) return constant_formula(Rational(0));
    if (g.is_tree()) return unfold(g);
    const std::vector<std::uint64_t> deg = w_degrees(g, w_);
    if (deg[g.output()] <= 1) return flatten(expand(g));

    GraphBuilder b;
    std::vector<NodeId> terms;
    for (NodeId v : frontier(g, w_)) {
      const Formula h = run(binarize(normalize(gate_quotient(g, v), w_)));
      if (is_zero_leaf(h)) continue;
      std::vector<NodeId> factors;
      const bool unit = h.kind(h.output()) == NodeKind::constant && h.constant(h.output()) == 1;
      if (!unit) factors.push_back(b.graft(h));
      if (g.kind(v) == NodeKind::variable) {
        factors.push_back(b.variable(g.variable(v)));
      } else {
        for (NodeId ch : g.children(v)) factors.push_back(b.graft(run(cone(g, ch))));
      }
      terms.push_back(b.product(std::move(factors)));
    }
    if (terms.empty()) return constant_formula(Rational(0));
    return b.formula(b.sum(std::move(terms)));
  }

  const Weighting& w_;
  std::unordered_map<std::string, std::uint32_t> table_;
  std::map<std::uint32_t, Formula> memo_;
};

}  // namespace

Formula circuit_to_formula(const Circuit& c, const Weighting& w) {
  Balancer balancer(w);
  return balancer.run(binarize(normalize(c, w)));
}

}  // namespace esym

namespace esym {

bool within_balance_bound(std::uint64_t size, std::uint64_t s, std::uint64_t k) {
  const long double kk = static_cast<long double>(std::max<std::uint64_t>(k, 2));
  const long double exponent = kBalanceExponentA * std::log2(kk) + kBalanceExponentB;
  return std::log2(static_cast<long double>(size)) <= exponent * std::log2(static_cast<long double>(s) * kk);
}

}  // namespace esym
