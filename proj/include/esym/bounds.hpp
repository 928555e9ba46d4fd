#pragma once

// Evaluators for the monomial-count estimates, the size lower bounds they
// imply for S^k_n, the monotone divide-and-conquer upper bound and the
// partition function. Real-valued quantities are Intervals; upper bounds are
// compared through their upper endpoint and lower bounds through their lower
// endpoint, so a reported pass never depends on rounding luck.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "esym/interval.hpp"
#include "esym/rational.hpp"

namespace esym {

struct BoundConstants {
  /// c = 1/(8 log2 3): at least log2(k)/(2 log2 3) factors of degree >= sqrt(k)
  /// give (k_1...k_p)^(-1/2) <= k^(-log2(k)/(8 log2 3)).
  Interval c_balanced() const;
};

struct BoundReport {
  std::string name;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::string bound;     // decimal, rounded in the conservative direction
  std::string compared;  // the quantity held against the bound; empty if none
  bool pass = true;
  bool trivial = false;
  std::vector<std::string> failures;

  void fail(std::string why) {
    pass = false;
    failures.push_back(std::move(why));
  }
};

/// Checks prod C(n_i, k_i) <= 3 sqrt(k) (k_1...k_p)^(-1/2) C(n, k) exactly
/// (by squaring both sides). Throws PreconditionError naming the violated
/// hypothesis: equal lengths, k_i >= 1, n >= 2k.
BoundReport composition_check(const std::vector<unsigned>& n_parts, const std::vector<unsigned>& k_parts);

struct SweepResult {
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  std::vector<std::string> first_failures;  // at most a handful
};

/// Every composition of every 1 <= k <= k_max into positive parts, paired with
/// every composition of every 2k <= n <= n_max into the same number of
/// nonnegative parts.
SweepResult composition_sweep(unsigned n_max, unsigned k_max);

/// 3 k^(-c log k + 3/2) C(n,k) minvar / n. Requires n >= 2k >= 2.
Interval balanced_monomial_bound(unsigned k, unsigned n, std::uint64_t minvar);
/// 3 k^(-c log k + 3/2) C(n,k) s / n. Requires n >= 2k >= 2 and s >= 1.
Interval formula_monomial_bound(std::uint64_t s, unsigned k, unsigned n);
/// 3 k^(3/2) l^(-(p-1)/2) C(n,k) minvar / n. Requires 2k <= n, p >= 2, l >= 2.
Interval formed_monomial_bound(unsigned k, unsigned n, unsigned p, const Rational& l, std::uint64_t minvar);
/// 6 k^(3/2) 2^(-k^(1/d)/8) C(n,k) s / n. Requires n >= 2k and k^(1/d) >= 8.
Interval const_depth_monomial_bound(std::uint64_t s, unsigned k, unsigned n, unsigned d);

/// True iff k^(1/d) >= 8, decided exactly as k >= 8^d.
bool const_depth_hypothesis(unsigned k, unsigned d);

struct LowerBound {
  Interval value;        // the raw inverted bound
  BigInt certified;      // max(n, floor(raw)), what a caller may rely on
  bool trivial = false;  // raw bound below n, or hypothesis not met
};

/// s >= n k^(c log k - 3/2) / 3 for multilinear homogeneous formulas.
/// Requires k >= 1 and n >= 2k.
LowerBound lower_bound_size(unsigned n, unsigned k);
/// s >= n 2^(k^(1/d)/8) / (6 k^(3/2)) for product-depth d. Requires k >= 1,
/// d >= 1 and n >= 2k; k^(1/d) < 8 gives the trivial bound.
LowerBound lower_bound_size_depth(unsigned n, unsigned k, unsigned d);

/// 2n n^(log((k-1)/log(2n) + 1)) (log(2n)/(k-1) + 1)^(k-1), logs base 2. Requires k >= 2.
Interval monotone_upper_bound(unsigned n, unsigned k);

/// g(n,k) = n^(1+alpha) / (1 - 2^-alpha)^(k-1).
Interval g_function(const Interval& alpha, std::uint64_t n, unsigned k);
/// alpha = log2(1 + (k-1)/log2 n). Requires n >= 2, k >= 2.
Interval proof_alpha(std::uint64_t n, unsigned k);
/// Checks g(2m, j) >= 2 sum_{i<=j} g(m, i) for powers of two m with 2m <= n_max
/// and 1 <= j <= k_max, and g(m, 1) >= m for powers of two m <= n_max.
BoundReport g_recurrence_check(const Interval& alpha, std::uint64_t n_max, unsigned k_max);

/// p(k) by Euler's pentagonal recurrence.
BigInt partition_function(unsigned k);
/// p(k) by the bounded-part dynamic program.
BigInt partition_function_dp(unsigned k);

}  // namespace esym
