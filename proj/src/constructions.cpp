#include "esym/constructions.hpp"

#include <functional>
#include <optional>

#include "esym/errors.hpp"

namespace esym {

namespace {

void require_n(unsigned n) {
  if (n == 0) throw PreconditionError("n must be at least 1");
}

void require_k_le_n(unsigned n, unsigned k) {
  require_n(n);
  if (k > n) {
    throw PreconditionError("k > n (k=" + std::to_string(k) + ", n=" + std::to_string(n) + "): S^k_n is 0 and out of scope");
  }
}

// x_j^i as a product of i leaves (a single leaf when i == 1), optionally scaled.
NodeId power_product(GraphBuilder& b, VarId var, unsigned i, const Rational& scale) {
  std::vector<NodeId> factors;
  if (scale != 1) factors.push_back(b.constant(scale));
  for (unsigned r = 0; r < i; ++r) factors.push_back(b.variable(var));
  return b.product(std::move(factors));
}

NodeId power_sum(GraphBuilder& b, unsigned n, unsigned i, const Rational& scale = Rational(1)) {
  std::vector<NodeId> terms;
  for (VarId j = 1; j <= n; ++j) terms.push_back(power_product(b, j, i, scale));
  return b.sum(std::move(terms));
}

}  // namespace

InterpolationPlan interpolation_coefficients(unsigned n, unsigned k) {
  if (k > n) throw PreconditionError("interpolation row k must be at most n");
  InterpolationPlan plan{n, k, {}, {}};
  // N(t) = prod_{m=1}^{n+1} (t - m), lowest coefficient first.
  std::vector<Rational> N{Rational(1)};
  for (unsigned m = 1; m <= n + 1; ++m) {
    std::vector<Rational> next(N.size() + 1);
    for (std::size_t i = 0; i < N.size(); ++i) {
      next[i + 1] += N[i];
      next[i] -= N[i] * m;
    }
    N = std::move(next);
  }
  for (unsigned j = 1; j <= n + 1; ++j) {
    // Q(t) = N(t) / (t - j) by synthetic division; Q has degree n.
    std::vector<Rational> Q(n + 1);
    Q[n] = N[n + 1];
    for (unsigned i = n; i >= 1; --i) Q[i - 1] = N[i] + Q[i] * j;
    Rational denom = 1;
    for (unsigned m = 1; m <= n + 1; ++m) {
      if (m != j) denom *= Rational(static_cast<long>(j) - static_cast<long>(m));
    }
    plan.points.emplace_back(j);
    plan.coefficients.push_back(Q[k] / denom);
  }
  return plan;
}

bool plan_residual_zero(const InterpolationPlan& plan) {
  for (unsigned i = 0; i <= plan.n; ++i) {
    Rational acc = 0;
    for (std::size_t j = 0; j < plan.points.size(); ++j) {
      Rational power = 1;
      for (unsigned e = 0; e < i; ++e) power *= plan.points[j];
      acc += plan.coefficients[j] * power;
    }
    if (acc != (i == plan.k ? 1 : 0)) return false;
  }
  return true;
}

Formula ben_or(unsigned n, unsigned k) {
  require_k_le_n(n, k);
  const InterpolationPlan plan = interpolation_coefficients(n, k);
  GraphBuilder b;
  std::vector<NodeId> terms;
  for (std::size_t j = 0; j < plan.points.size(); ++j) {
    if (plan.coefficients[j] == 0) continue;
    const Rational& t = plan.points[j];
    Rational scale = plan.coefficients[j];
    for (unsigned i = 0; i < n; ++i) scale *= t;
    std::vector<NodeId> factors{b.constant(scale)};
    const Rational shift = 1 / t;
    for (VarId i = 1; i <= n; ++i) factors.push_back(b.sum({b.variable(i), b.constant(shift)}));
    terms.push_back(b.product(std::move(factors)));
  }
  return b.formula(b.sum(std::move(terms)));
}

Formula power_sum_formula(unsigned n, unsigned i) {
  require_n(n);
  if (i == 0) throw PreconditionError("power sum exponent must be at least 1");
  GraphBuilder b;
  return b.formula(power_sum(b, n, i));
}

Circuit newton_circuit(unsigned k) {
  GraphBuilder b;
  if (k == 0) return b.circuit(b.constant(Rational(1)));
  std::vector<NodeId> z(k + 1);
  z[1] = b.variable(1);
  for (unsigned m = 1; m < k; ++m) {
    std::vector<NodeId> terms;
    for (unsigned i = 1; i <= m + 1; ++i) {
      const Rational c(i % 2 == 1 ? 1 : -1, m + 1);
      std::vector<NodeId> factors{b.constant(c), b.variable(i)};
      if (i <= m) factors.push_back(z[m + 1 - i]);
      terms.push_back(b.product(std::move(factors)));
    }
    z[m + 1] = b.sum(std::move(terms));
  }
  return b.circuit(z[k]);
}

Formula newton_homogeneous_formula(unsigned n, unsigned k) {
  require_k_le_n(n, k);
  if (k == 0) return constant_formula(Rational(1));
  const Weighting w = Weighting::by_index(k);
  const Formula z = circuit_to_formula(newton_circuit(k), w);
  const std::vector<std::uint64_t> deg = w_degrees(z, w);

  // Push a pending scale toward the leaves: sums distribute it, products
  // absorb their constant children into it and hand it to one factor, and a
  // y_i leaf turns into sum_j scale * x_j^i.
  GraphBuilder b;
  std::function<std::optional<NodeId>(NodeId, const Rational&)> place =
      [&](NodeId u, const Rational& scale) -> std::optional<NodeId> {
    if (scale == 0) return std::nullopt;
    switch (z.kind(u)) {
      case NodeKind::variable: return power_sum(b, n, z.variable(u), scale);
      case NodeKind::constant: return b.constant(scale * z.constant(u));
      case NodeKind::sum: {
        std::vector<NodeId> kids;
        for (NodeId c : z.children(u)) {
          if (auto id = place(c, scale)) kids.push_back(*id);
        }
        if (kids.empty()) return std::nullopt;
        return b.sum(std::move(kids));
      }
      case NodeKind::product: {
        Rational folded = scale;
        for (NodeId c : z.children(u)) {
          if (deg[c] == 0) folded *= eval(subformula(z, c), {});
        }
        std::vector<NodeId> kids;
        bool first = true;
        for (NodeId c : z.children(u)) {
          if (deg[c] == 0) continue;
          auto id = place(c, first ? folded : Rational(1));
          if (!id) return std::nullopt;
          kids.push_back(*id);
          first = false;
        }
        if (kids.empty()) return b.constant(folded);
        return b.product(std::move(kids));
      }
    }
    return std::nullopt;
  };
  const auto root = place(z.output(), Rational(1));
  return root ? b.formula(*root) : constant_formula(Rational(0));
}

Formula depth4_formula(unsigned n, unsigned k) {
  require_k_le_n(n, k);
  if (k == 0) return constant_formula(Rational(1));
  GraphBuilder b;
  std::vector<NodeId> terms;
  const Polynomial z = newton_Z(k);
  for (const auto& [monomial, coeff] : z.terms()) {
    std::vector<NodeId> factors{b.constant(coeff)};
    for (const Power& p : monomial.powers()) {
      for (unsigned e = 0; e < p.exp; ++e) factors.push_back(power_sum(b, n, p.var));
    }
    terms.push_back(b.product(std::move(factors)));
  }
  return b.formula(b.sum(std::move(terms)));
}

Formula monotone_dc(unsigned n, unsigned k) {
  require_k_le_n(n, k);
  if (k == 0) return constant_formula(Rational(1));
  unsigned padded = 1;
  while (padded < n) padded *= 2;

  GraphBuilder b;
  enum class Special { none, zero, one };
  struct Part {
    Special special = Special::none;
    NodeId id = 0;
  };
  // S^j over the block [lo, lo + size) intersected with [1, n].
  std::function<Part(unsigned, unsigned, unsigned)> build = [&](unsigned lo, unsigned size, unsigned j) -> Part {
    const unsigned real = lo > n ? 0 : std::min(size, n - lo + 1);
    if (j == 0) return {Special::one, 0};
    if (j > real) return {Special::zero, 0};
    if (j == 1) {
      std::vector<NodeId> leaves;
      for (unsigned v = lo; v < lo + real; ++v) leaves.push_back(b.variable(v));
      return {Special::none, b.sum(std::move(leaves))};
    }
    const unsigned half = size / 2;
    std::vector<NodeId> terms;
    for (unsigned i = 0; i <= j; ++i) {
      const Part left = build(lo, half, i);
      if (left.special == Special::zero) continue;
      const Part right = build(lo + half, half, j - i);
      if (right.special == Special::zero) continue;
      std::vector<NodeId> factors;
      if (left.special == Special::none) factors.push_back(left.id);
      if (right.special == Special::none) factors.push_back(right.id);
      terms.push_back(b.product(std::move(factors)));
    }
    return {Special::none, b.sum(std::move(terms))};
  };
  return b.formula(build(1, padded, k).id);
}

}  // namespace esym
