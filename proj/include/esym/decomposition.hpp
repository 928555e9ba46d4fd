#pragma once

// Sum-of-products decompositions of homogeneous formulas, with certificates
// that can be re-checked from scratch against the source formula.
//
// Parts are carried as lists of expanded factor polynomials. Node degrees are
// true degrees (of the expanded subformula); nodes computing 0 have none and
// are never chosen.

#include <cstdint>
#include <vector>

#include "esym/bounds.hpp"
#include "esym/formula.hpp"
#include "esym/polynomial.hpp"

namespace esym {

struct Factorization {
  std::vector<Polynomial> factors;
  std::vector<std::uint64_t> degrees;
  /// Balanced: variables of the last factor. Form: fewest variables of any factor.
  std::uint64_t minvar = 0;

  Polynomial product() const;
};

enum class CertificateKind { balanced, form };

struct DecompositionCertificate {
  CertificateKind kind = CertificateKind::balanced;
  std::vector<Factorization> parts;
  std::uint64_t source_size = 0;
  std::uint64_t minvar_sum = 0;
  unsigned q = 0;   // form only
  Rational ell;     // form only: k (2q)^-d
};

/// Phi = h * Phi_w + Phi_(w=0) at a node w.
struct Split {
  NodeId node = 0;
  Formula at_w;       // Phi_w
  Formula remainder;  // Phi_(w=0), zeros pruned
  Polynomial h;
};
/// Computes h by exact division; InvariantViolation if it is not exact.
Split split_at(const Formula& phi, NodeId w);

/// The node reached by walking down from the root through children of degree
/// >= 2k/3 and stopping at a product whose children are all below 2k/3; the
/// larger child of that product (the first on a tie). Requires fan-in <= 2 and
/// degree k >= 2.
NodeId find_split_node(const Formula& phi);

/// Requires a homogeneous formula of degree >= 1. Fan-in above 2 is binarized
/// first, which leaves the size unchanged.
DecompositionCertificate balanced_decompose(const Formula& phi);
BoundReport validate_balanced(const DecompositionCertificate& cert, const Formula& phi);

/// A product node w with deg(w) >= k r^(1-d) and every child below deg(w)/r.
/// Requires product-depth <= d and k r^-d > 1.
NodeId find_deep_product_node(const Formula& phi, const Rational& r, unsigned d);

/// Every part is in (q, k (2q)^-d)-form. Requires a multilinear homogeneous
/// formula of product-depth <= d, q >= 2 and k (2q)^-d > 1.
DecompositionCertificate form_decompose(const Formula& phi, unsigned q, unsigned d);
BoundReport validate_form(const DecompositionCertificate& cert, const Formula& phi, unsigned q, const Rational& ell);

/// k (2q)^-d.
Rational form_degree(unsigned k, unsigned q, unsigned d);

}  // namespace esym
