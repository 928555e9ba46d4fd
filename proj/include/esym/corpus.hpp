#pragma once

// Seeded random formula and circuit generators used by the property suites.
// Every generator is a pure function of the engine state it is handed.

#include <random>

#include "esym/formula.hpp"

namespace esym::corpus {

using Rng = std::mt19937_64;

/// Unconstrained formula: random sums/products of fan-in 2..max_fan_in over
/// x1..x_vars and small rational constants.
struct GeneralParams {
  unsigned max_leaves = 16;
  unsigned vars = 4;
  unsigned max_fan_in = 3;
};
Formula general(Rng& rng, const GeneralParams& params = {});

/// Homogeneous, syntactically multilinear, fan-in-2 formula of the given
/// degree over x1..x_vars (vars >= degree), with at most max_leaves leaves.
Formula homogeneous_multilinear(Rng& rng, unsigned degree, unsigned vars, unsigned max_leaves);

/// The decomposition corpus: degree 2..8, at most 16 variables, size <= 80.
Formula balanced_corpus_item(Rng& rng);

/// Homogeneous, syntactically multilinear formula of product-depth at most
/// `depth` and the given degree: alternating sums and products whose bottom
/// layer is sums of variables. At most kBoundedDepthForks two-term sums, so
/// the expansion has at most 2^kBoundedDepthForks monomials.
constexpr unsigned kBoundedDepthForks = 10;
Formula bounded_depth(Rng& rng, unsigned degree, unsigned depth);

/// A w-homogeneous fan-in-2 circuit over y1..y_vars with w(y_i) = i and the
/// given output w-degree; nodes are shared freely.
Circuit w_homogeneous_circuit(Rng& rng, unsigned w_degree, unsigned vars, unsigned gates);

}  // namespace esym::corpus
