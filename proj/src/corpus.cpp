#include "esym/corpus.hpp"

#include <algorithm>
#include <numeric>

#include "esym/errors.hpp"

namespace esym::corpus {

namespace {

unsigned uniform(Rng& rng, unsigned lo, unsigned hi) { return std::uniform_int_distribution<unsigned>(lo, hi)(rng); }

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

Rational small_constant(Rng& rng) {
  static const Rational kValues[] = {Rational(-2), Rational(-1), Rational(1), Rational(2), Rational(3), Rational(1, 2),
                                     Rational(-3, 2)};
  return kValues[uniform(rng, 0, std::size(kValues) - 1)];
}

// Random composition of `total` into `parts` positive integers, each at least `floor`.
std::vector<unsigned> composition(Rng& rng, unsigned total, unsigned parts, const std::vector<unsigned>& floor) {
  std::vector<unsigned> out(floor.begin(), floor.end());
  unsigned spare = total - std::accumulate(floor.begin(), floor.end(), 0u);
  while (spare-- > 0) ++out[uniform(rng, 0, parts - 1)];
  return out;
}

NodeId general_node(Rng& rng, GraphBuilder& b, const GeneralParams& p, unsigned budget) {
  if (budget <= 1 || coin(rng, 0.2)) {
    if (coin(rng, 0.8)) return b.variable(uniform(rng, 1, p.vars));
    return b.constant(small_constant(rng));
  }
  const unsigned fan = uniform(rng, 2, std::min(p.max_fan_in, budget));
  const auto shares = composition(rng, budget, fan, std::vector<unsigned>(fan, 1));
  std::vector<NodeId> kids;
  for (unsigned s : shares) kids.push_back(general_node(rng, b, p, s));
  return coin(rng, 0.5) ? b.sum(std::move(kids)) : b.product(std::move(kids));
}

// Degree `deg` over the variables in `pool` (|pool| >= deg) using at most `budget` >= deg leaves.
NodeId hm_node(Rng& rng, GraphBuilder& b, unsigned deg, std::vector<VarId> pool, unsigned budget) {
  std::shuffle(pool.begin(), pool.end(), rng);
  if (deg == 1) {
    if (budget >= 2 && coin(rng, 0.35)) {
      const unsigned left = uniform(rng, 1, budget - 1);
      return b.sum({hm_node(rng, b, 1, pool, left), hm_node(rng, b, 1, pool, budget - left)});
    }
    if (budget >= 2 && coin(rng, 0.15)) return b.product({b.constant(small_constant(rng)), b.variable(pool[0])});
    return b.variable(pool[0]);
  }
  if (budget >= 2 * deg && coin(rng, 0.3)) {
    const unsigned left = uniform(rng, deg, budget - deg);
    return b.sum({hm_node(rng, b, deg, pool, left), hm_node(rng, b, deg, pool, budget - left)});
  }
  const unsigned a = uniform(rng, 1, deg - 1);
  const unsigned cut = uniform(rng, a, static_cast<unsigned>(pool.size()) - (deg - a));
  const unsigned left = uniform(rng, a, budget - (deg - a));
  std::vector<VarId> lpool(pool.begin(), pool.begin() + cut), rpool(pool.begin() + cut, pool.end());
  return b.product({hm_node(rng, b, a, std::move(lpool), left), hm_node(rng, b, deg - a, std::move(rpool), budget - left)});
}

// Product-depth `depth`, degree `deg`, over a pool of 2*deg variables. Every
// two-term sum spends one fork, which caps the expansion at 2^forks monomials.
NodeId bd_node(Rng& rng, GraphBuilder& b, unsigned deg, unsigned depth, std::span<const VarId> pool, unsigned& forks) {
  auto fork = [&](double p) {
    if (forks == 0 || !coin(rng, p)) return false;
    --forks;
    return true;
  };
  if (deg == 1) {
    if (fork(0.15)) return b.sum({b.variable(pool[0]), b.variable(pool[1])});
    return b.variable(pool[coin(rng, 0.5) ? 0 : 1]);
  }
  const unsigned terms = fork(0.3) ? 2 : 1;
  std::vector<NodeId> summands;
  for (unsigned t = 0; t < terms; ++t) {
    std::vector<unsigned> parts;
    if (depth <= 1) {
      parts.assign(deg, 1);
    } else {
      const unsigned m = uniform(rng, 2, std::min(deg, 6u));
      parts = composition(rng, deg, m, std::vector<unsigned>(m, 1));
    }
    std::vector<NodeId> factors;
    std::size_t offset = 0;
    for (unsigned part : parts) {
      factors.push_back(bd_node(rng, b, part, depth - 1, pool.subspan(offset, 2 * part), forks));
      offset += 2 * part;
    }
    summands.push_back(b.product(std::move(factors)));
  }
  return b.sum(std::move(summands));
}

}  // namespace

Formula general(Rng& rng, const GeneralParams& params) {
  if (params.vars == 0 || params.max_fan_in < 2) throw PreconditionError("general corpus needs vars >= 1, fan-in >= 2");
  GraphBuilder b;
  return b.formula(general_node(rng, b, params, uniform(rng, 1, std::max(1u, params.max_leaves))));
}

Formula homogeneous_multilinear(Rng& rng, unsigned degree, unsigned vars, unsigned max_leaves) {
  if (degree == 0 || vars < degree || max_leaves < degree) {
    throw PreconditionError("homogeneous corpus needs 1 <= degree <= vars and degree <= max_leaves");
  }
  std::vector<VarId> pool(vars);
  std::iota(pool.begin(), pool.end(), 1u);
  GraphBuilder b;
  return b.formula(hm_node(rng, b, degree, std::move(pool), max_leaves));
}

Formula balanced_corpus_item(Rng& rng) {
  const unsigned degree = uniform(rng, 2, 8);
  const unsigned vars = uniform(rng, degree, 16);
  return homogeneous_multilinear(rng, degree, vars, uniform(rng, degree, 80));
}

Formula bounded_depth(Rng& rng, unsigned degree, unsigned depth) {
  if (degree == 0 || depth == 0) throw PreconditionError("bounded-depth corpus needs degree >= 1 and depth >= 1");
  std::vector<VarId> pool(2 * degree);
  std::iota(pool.begin(), pool.end(), 1u);
  std::shuffle(pool.begin(), pool.end(), rng);
  GraphBuilder b;
  unsigned forks = kBoundedDepthForks;
  return b.formula(bd_node(rng, b, degree, depth, pool, forks));
}

Circuit w_homogeneous_circuit(Rng& rng, unsigned w_degree, unsigned vars, unsigned gates) {
  if (w_degree == 0 || vars == 0) throw PreconditionError("circuit corpus needs w_degree >= 1 and vars >= 1");
  GraphBuilder b;
  std::vector<std::vector<NodeId>> by_degree(w_degree + 1);
  for (unsigned i = 1; i <= std::min(vars, w_degree); ++i) by_degree[i].push_back(b.variable(i));
  for (int i = 0; i < 2; ++i) by_degree[0].push_back(b.constant(small_constant(rng)));

  auto pick = [&](unsigned d) { return by_degree[d][uniform(rng, 0, by_degree[d].size() - 1)]; };
  auto nonempty_at_most = [&](unsigned hi, unsigned lo) {
    std::vector<unsigned> ds;
    for (unsigned d = lo; d <= hi; ++d) {
      if (!by_degree[d].empty()) ds.push_back(d);
    }
    return ds;
  };

  for (unsigned g = 0; g < gates; ++g) {
    if (coin(rng, 0.5)) {
      const auto ds = nonempty_at_most(w_degree, 1);
      const unsigned d = ds[uniform(rng, 0, ds.size() - 1)];
      by_degree[d].push_back(b.sum({pick(d), pick(d)}));
    } else {
      const auto first = nonempty_at_most(w_degree, 0);
      const unsigned da = first[uniform(rng, 0, first.size() - 1)];
      const auto second = nonempty_at_most(w_degree - da, da == 0 ? 1 : 0);
      if (second.empty()) continue;
      const unsigned db = second[uniform(rng, 0, second.size() - 1)];
      by_degree[da + db].push_back(b.product({pick(da), pick(db)}));
    }
  }

  // Guarantee a gate of the target degree by splitting it into products.
  auto make = [&](auto&& self, unsigned d) -> NodeId {
    if (!by_degree[d].empty()) return pick(d);
    const unsigned a = uniform(rng, 1, d - 1);
    const NodeId id = b.product({self(self, a), self(self, d - a)});
    by_degree[d].push_back(id);
    return id;
  };
  const NodeId first = make(make, w_degree);
  const NodeId root = coin(rng, 0.5) ? b.sum({first, pick(w_degree)}) : first;
  return b.circuit(root);
}

}  // namespace esym::corpus
