#pragma once

// Exact sparse multivariate polynomials over the rationals, with commutative
// or ordered (noncommutative) monomials, and brute-force oracles for the
// elementary symmetric polynomials, power sums and the Newton polynomials Z_k.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "esym/rational.hpp"

namespace esym {

using VarId = std::uint32_t;

enum class RingMode { commutative, noncommutative };

std::string_view to_string(RingMode mode);

struct Power {
  VarId var = 0;
  std::uint32_t exp = 0;
  auto operator<=>(const Power&) const = default;
};

/// A monomial as a list of (variable, exponent) runs.
///
/// Commutative monomials keep the runs sorted by variable with each variable
/// appearing once. Ordered monomials keep the word as written, with adjacent
/// repeats of one variable folded into a single run (x1 x1 x2 = [(1,2),(2,1)]),
/// so the same variable may appear in several non-adjacent runs.
/// Comparison is lexicographic over the run list in both modes.
class Monomial {
 public:
  Monomial() = default;

  static Monomial variable(VarId var, std::uint32_t exp = 1);
  /// Normalizes `powers` for `mode`: commutative input is sorted and merged,
  /// ordered input only has adjacent runs folded. Zero exponents are dropped.
  static Monomial from_powers(std::vector<Power> powers, RingMode mode);

  std::span<const Power> powers() const { return powers_; }
  bool is_one() const { return powers_.empty(); }
  std::uint32_t degree() const;
  std::uint32_t degree_in(VarId var) const;
  /// Every variable occurs with total degree at most one.
  bool is_multilinear() const;
  /// Distinct variables, ascending.
  std::vector<VarId> variables() const;

  Monomial multiply(const Monomial& rhs, RingMode mode) const;

  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;

 private:
  std::vector<Power> powers_;
};

/// Positive integer weights w(x); w-degree of a monomial is the weighted sum of
/// its exponents. A default weight, when set, covers every unlisted variable.
class Weighting {
 public:
  Weighting() = default;
  explicit Weighting(std::map<VarId, std::uint32_t> weights, std::optional<std::uint32_t> default_weight = {});

  /// w(x) = 1 for every variable.
  static Weighting unit();
  /// w(x_i) = i for i = 1..k.
  static Weighting by_index(unsigned k);

  /// Throws MissingVariableError for an uncovered variable.
  std::uint32_t weight(VarId var) const;
  bool covers(VarId var) const;
  std::uint64_t degree(const Monomial& monomial) const;

 private:
  std::map<VarId, std::uint32_t> weights_;
  std::optional<std::uint32_t> default_weight_;
};

class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational>;

  explicit Polynomial(RingMode mode = RingMode::commutative) : mode_(mode) {}

  static Polynomial constant(const Rational& value, RingMode mode = RingMode::commutative);
  static Polynomial variable(VarId var, RingMode mode = RingMode::commutative);
  static Polynomial monomial(const Monomial& m, const Rational& coefficient, RingMode mode = RingMode::commutative);

  RingMode mode() const { return mode_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t monomial_count() const { return terms_.size(); }
  Rational coefficient(const Monomial& m) const;

  /// Adds c·m to the polynomial, dropping the term if it cancels.
  void add_term(const Monomial& m, const Rational& c);

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Polynomial& rhs);
  Polynomial operator-() const;

  friend Polynomial operator+(Polynomial lhs, const Polynomial& rhs) { return lhs += rhs; }
  friend Polynomial operator-(Polynomial lhs, const Polynomial& rhs) { return lhs -= rhs; }
  friend Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs);

  Polynomial scaled(const Rational& c) const;

  /// Total degree; nullopt stands for the degree of the zero polynomial (-inf).
  std::optional<std::uint32_t> degree() const;
  /// Distinct variables, ascending.
  std::vector<VarId> variables() const;

  /// Evaluates at a point. Ordered monomials are evaluated as commutative
  /// products, which is what a rational point sees.
  Rational evaluate(const std::map<VarId, Rational>& point) const;

  bool operator==(const Polynomial& rhs) const { return mode_ == rhs.mode_ && terms_ == rhs.terms_; }

 private:
  void require_same_mode(const Polynomial& rhs) const;

  RingMode mode_;
  Terms terms_;
};

Polynomial scale(const Polynomial& p, const Rational& c);

/// Replaces each variable by a polynomial. Every variable of f must be covered.
Polynomial compose(const Polynomial& f, const std::map<VarId, Polynomial>& substitutes);

/// Exact quotient num/den when den divides num, nullopt otherwise.
/// Commutative mode only; den must be nonzero.
std::optional<Polynomial> divide_exact(const Polynomial& num, const Polynomial& den);

struct PolyProps {
  std::optional<std::uint32_t> degree;  // nullopt: zero polynomial
  std::size_t monomial_count = 0;
  bool is_homogeneous = true;
  bool is_multilinear = true;
  std::set<std::uint64_t> w_degree_set;  // empty unless a weighting was given
};

/// Throws MissingVariableError when `w` misses a variable of f.
PolyProps poly_props(const Polynomial& f, const Weighting* w = nullptr);

bool is_w_homogeneous(const Polynomial& f, const Weighting& w);
/// w-degree of a nonzero w-homogeneous polynomial; nullopt for zero.
std::optional<std::uint64_t> w_degree(const Polynomial& f, const Weighting& w);

/// Identical monomial supports.
bool weakly_equivalent(const Polynomial& f, const Polynomial& g);

// Oracles. S^k_n by subset enumeration, and by the recurrence
// S^k_n = S^k_{n-1} + S^{k-1}_{n-1} x_n (x_n appended on the right, which keeps
// ordered monomials increasing).
Polynomial oracle_S(unsigned n, unsigned k, RingMode mode = RingMode::commutative);
Polynomial oracle_S_recurrence(unsigned n, unsigned k, RingMode mode = RingMode::commutative);
/// P^k_n = x_1^k + ... + x_n^k.
Polynomial oracle_P(unsigned n, unsigned k);
/// Z_k over variables 1..k (read y_i = x_i), from Z_0 = 1 and
/// Z_{m+1} = (y_1 Z_m - y_2 Z_{m-1} + ... + (-1)^m y_{m+1} Z_0) / (m+1).
Polynomial newton_Z(unsigned k);

// Text form, see docs/FORMATS.md.
std::string to_string(const Polynomial& p);
Polynomial parse_polynomial(std::string_view text, RingMode mode = RingMode::commutative);

}  // namespace esym
