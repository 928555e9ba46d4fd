#pragma once

// Formulas for the elementary symmetric polynomials S^k_n, and the
// circuit-to-formula balancing pass used by the homogeneous construction.
//
// Every construction takes n >= 1 and returns the constant 1 for k = 0;
// k > n is rejected with PreconditionError.

#include <cstdint>
#include <vector>

#include "esym/formula.hpp"
#include "esym/polynomial.hpp"

namespace esym {

/// S^k_n = sum_j c_j f_j with f_t = prod_i (x_i t + 1) at t = 1..n+1.
struct InterpolationPlan {
  unsigned n = 0;
  unsigned k = 0;
  std::vector<Rational> points;        // t_j = j
  std::vector<Rational> coefficients;  // c_{k,j}
};

/// c_{k,j} = [t^k] L_j(t) for the Lagrange basis L_j on the points 1..n+1.
InterpolationPlan interpolation_coefficients(unsigned n, unsigned k);
/// sum_j c_j t_j^i == [i == k] for every 0 <= i <= n, exactly.
bool plan_residual_zero(const InterpolationPlan& plan);

/// sum_j (c_j j^n) * prod_i (x_i + 1/j): product-depth 1, (n+1)(2n+1) leaves
/// at most. Factors are multiplied in index order, so the formula is also
/// correct over ordered monomials.
Formula ben_or(unsigned n, unsigned k);

/// x_1^i + ... + x_n^i as a sum of n products of i leaves; size i*n.
Formula power_sum_formula(unsigned n, unsigned i);

/// Z_0..Z_k as a circuit over y_1..y_k: Z_{m+1} = sum_i c_i y_i Z_{m+1-i} with
/// c_i = (-1)^(i+1)/(m+1), the Z_0 factor and the unit constant of Z_1
/// elided. Each use gets its own y leaf, so the leaf count is k(k+1) <= 2k^2.
Circuit newton_circuit(unsigned k);
constexpr unsigned kNewtonCircuitLeafConstant = 2;

// ---------------------------------------------------------------------------
// Circuit-to-formula

/// Per-node w-degree of a structurally w-homogeneous graph: w(x) at variables,
/// 0 at constants, the shared child degree at sums, the sum at products.
/// Throws PreconditionError naming the first sum whose children disagree.
std::vector<std::uint64_t> w_degrees(const Graph& g, const Weighting& w);

/// Replaces every gate computing 0 by the constant 0, prunes the zeros and
/// checks that every remaining gate computes a w-homogeneous polynomial
/// (PreconditionError naming the node otherwise). Afterwards formal and true
/// w-degrees agree at every node. A zero circuit becomes the constant 0.
Circuit normalize(const Circuit& c, const Weighting& w);

/// Gates v with w-deg(v) > k/2 whose children all have w-degree <= k/2, where
/// k is the output w-degree. Input variables of weight > k/2 are included:
/// they have no children and the identity uses v itself in place of v1*v2.
/// Requires a normalized fan-in-2 circuit with k >= 2.
std::vector<NodeId> frontier(const Circuit& c, const Weighting& w);

/// The coefficient of z in the output once gate v is replaced by a fresh
/// variable z, built as a circuit of derived gates over the original ones.
/// Its leaf count is at most that of c plus one.
Circuit gate_quotient(const Circuit& c, NodeId v);

/// expand(c) and sum over frontier gates of h_v * v1 * v2, for checking the
/// decomposition identity.
struct FrontierIdentity {
  Polynomial circuit;
  Polynomial decomposed;
  std::size_t frontier_size = 0;
};
FrontierIdentity frontier_identity(const Circuit& c, const Weighting& w);

/// A w-homogeneous formula computing the same polynomial as c. The input is
/// normalized and binarized first. Size is at most (s k')^(a log2 k' + b)
/// with s the node count of c, k' = max(k, 2) and the constants below, pinned from measurements on
/// newton_circuit(k <= 12) and the random circuit corpus.
Formula circuit_to_formula(const Circuit& c, const Weighting& w);
constexpr double kBalanceExponentA = 0.5;
constexpr double kBalanceExponentB = 1.0;
/// size <= (s k')^(a log2 k' + b), compared in log space.
bool within_balance_bound(std::uint64_t size, std::uint64_t s, std::uint64_t k);

// ---------------------------------------------------------------------------

/// Z_k(P^1_n, ..., P^k_n) with Z_k from circuit_to_formula(newton_circuit(k)).
/// Constants are folded into the power-sum products they scale, so every
/// leaf is replicated per variable and the size is exactly linear in n.
Formula newton_homogeneous_formula(unsigned n, unsigned k);

/// sum over the monomials c y_{i_1}...y_{i_m} of Z_k of
/// c * P^{i_1}_n * ... * P^{i_m}_n; product-depth 2, size p(k)(kn + 1).
Formula depth4_formula(unsigned n, unsigned k);

/// Divide and conquer over halves of the variables padded to a power of two:
/// S^k(L u R) = sum_i S^i(L) S^(k-i)(R), with S^0 factors dropped and
/// empty blocks pruned. Monotone, syntactically multilinear, homogeneous.
Formula monotone_dc(unsigned n, unsigned k);

}  // namespace esym
