#include <doctest.h>

#include <random>

#include "esym/errors.hpp"
#include "esym/polynomial.hpp"

using namespace esym;

namespace {

Polynomial x(VarId v, RingMode mode = RingMode::commutative) { return Polynomial::variable(v, mode); }
Polynomial c(long v, RingMode mode = RingMode::commutative) { return Polynomial::constant(Rational(v), mode); }

Polynomial random_poly(std::mt19937_64& rng, RingMode mode) {
  std::uniform_int_distribution<int> terms(0, 4), var(1, 3), deg(0, 3), coef(-3, 3);
  Polynomial p(mode);
  for (int t = terms(rng); t > 0; --t) {
    std::vector<Power> powers;
    for (int d = deg(rng); d > 0; --d) powers.push_back({static_cast<VarId>(var(rng)), 1});
    p.add_term(Monomial::from_powers(powers, mode), Rational(coef(rng)));
  }
  return p;
}

// Partitions of k counted by direct enumeration of nonincreasing part lists.
unsigned long count_partitions(unsigned k, unsigned max_part) {
  if (k == 0) return 1;
  unsigned long total = 0;
  for (unsigned part = std::min(k, max_part); part >= 1; --part) total += count_partitions(k - part, part);
  return total;
}

}  // namespace

TEST_CASE("ring operations") {
  CHECK((x(1) + -x(1)).is_zero());
  CHECK((x(1) + c(1)) * (x(1) - c(1)) == parse_polynomial("1/1*x1^2 + -1/1"));

  const auto nc = RingMode::noncommutative;
  const Polynomial p = (x(1, nc) + x(2, nc)) * x(1, nc);
  CHECK(p.monomial_count() == 2);
  CHECK(p.coefficient(Monomial::from_powers({{1, 2}}, nc)) == 1);
  CHECK(p.coefficient(Monomial::from_powers({{2, 1}, {1, 1}}, nc)) == 1);
  CHECK(p.coefficient(Monomial::from_powers({{1, 1}, {2, 1}}, nc)) == 0);

  CHECK_THROWS_AS(x(1) + x(1, nc), ModeMismatchError);
  CHECK_THROWS_AS(x(1) * x(1, nc), ModeMismatchError);
  CHECK(scale(x(1) + c(2), Rational(1, 2)) == parse_polynomial("1/2*x1 + 1/1"));
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937_64 rng(7);
  for (RingMode mode : {RingMode::commutative, RingMode::noncommutative}) {
    for (int trial = 0; trial < 200; ++trial) {
      const Polynomial a = random_poly(rng, mode), b = random_poly(rng, mode), d = random_poly(rng, mode);
      CHECK((a + b) + d == a + (b + d));
      CHECK(a + b == b + a);
      CHECK((a * b) * d == a * (b * d));
      CHECK(a * (b + d) == a * b + a * d);
      CHECK((b + d) * a == b * a + d * a);
      if (mode == RingMode::commutative) CHECK(a * b == b * a);
    }
  }
  // Ordered products genuinely differ.
  const auto nc = RingMode::noncommutative;
  CHECK(x(1, nc) * x(2, nc) != x(2, nc) * x(1, nc));
}

TEST_CASE("oracle_S examples") {
  CHECK(oracle_S(3, 2) == parse_polynomial("1/1*x1*x2 + 1/1*x1*x3 + 1/1*x2*x3"));
  CHECK(oracle_S(5, 0) == c(1));
  CHECK(oracle_S(4, 5).is_zero());
}

TEST_CASE("oracle_S enumeration agrees with the recurrence") {
  for (RingMode mode : {RingMode::commutative, RingMode::noncommutative}) {
    for (unsigned n = 1; n <= 10; ++n) {
      for (unsigned k = 0; k <= n; ++k) CHECK(oracle_S(n, k, mode) == oracle_S_recurrence(n, k, mode));
    }
  }
}

TEST_CASE("oracle_S has binomially many unit terms") {
  for (unsigned n = 1; n <= 12; ++n) {
    for (unsigned k = 0; k <= n; ++k) {
      const Polynomial s = oracle_S(n, k);
      CHECK(BigInt(static_cast<unsigned long>(s.monomial_count())) == binomial(n, k));
      for (const auto& [m, coeff] : s.terms()) CHECK(coeff == 1);
    }
  }
}

TEST_CASE("oracle_P") {
  CHECK(oracle_P(2, 3) == parse_polynomial("1/1*x1^3 + 1/1*x2^3"));
  CHECK(oracle_P(1, 1) == x(1));
  CHECK(oracle_P(3, 2) == parse_polynomial("1/1*x1^2 + 1/1*x2^2 + 1/1*x3^2"));
  CHECK_THROWS_AS(oracle_P(3, 0), PreconditionError);
}

TEST_CASE("newton_Z small cases") {
  CHECK(newton_Z(0) == c(1));
  CHECK(newton_Z(1) == x(1));
  // Z_2 = (y1 Z_1 - y2 Z_0) / 2
  CHECK(newton_Z(2) == scale(x(1) * x(1) - x(2), Rational(1, 2)));
  // Z_3 = (y1 Z_2 - y2 Z_1 + y3) / 3
  const Polynomial z3 = scale(x(1) * x(1) * x(1) - c(3) * x(1) * x(2) + c(2) * x(3), Rational(1, 6));
  CHECK(newton_Z(3) == z3);
  CHECK(newton_Z(3).monomial_count() == 3);
}

TEST_CASE("newton_Z term count is the partition count") {
  for (unsigned k = 0; k <= 20; ++k) {
    CHECK(newton_Z(k).monomial_count() == count_partitions(k, k));
    CHECK(is_w_homogeneous(newton_Z(k), Weighting::by_index(std::max(k, 1u))));
  }
}

TEST_CASE("Newton identity reproduces S") {
  for (unsigned n = 1; n <= 8; ++n) {
    std::map<VarId, Polynomial> subs;
    for (unsigned i = 1; i <= n; ++i) subs.emplace(i, oracle_P(n, i));
    for (unsigned k = 1; k <= n; ++k) CHECK(compose(newton_Z(k), subs) == oracle_S(n, k));
  }
}

TEST_CASE("weak equivalence") {
  CHECK(weakly_equivalent(x(1) * x(2) + x(3), c(5) * x(1) * x(2) - c(2) * x(3)));
  CHECK_FALSE(weakly_equivalent(x(1), x(2)));
  CHECK(weakly_equivalent(Polynomial(), Polynomial()));
  CHECK_THROWS_AS(weakly_equivalent(x(1), x(1, RingMode::noncommutative)), ModeMismatchError);
}

TEST_CASE("poly_props") {
  const PolyProps a = poly_props(x(1) * x(2) + x(3) * x(3));
  CHECK(a.degree == 2u);
  CHECK(a.monomial_count == 2);
  CHECK(a.is_homogeneous);
  CHECK_FALSE(a.is_multilinear);

  const Weighting w = Weighting::by_index(4);
  CHECK(poly_props(newton_Z(4), &w).w_degree_set == std::set<std::uint64_t>{4});
  CHECK(poly_props(c(3), &w).w_degree_set == std::set<std::uint64_t>{0});

  const PolyProps zero = poly_props(Polynomial());
  CHECK_FALSE(zero.degree.has_value());
  CHECK(zero.monomial_count == 0);
  CHECK(zero.is_homogeneous);
  CHECK(zero.is_multilinear);

  try {
    poly_props(x(9), &w);
    FAIL("expected MissingVariableError");
  } catch (const MissingVariableError& e) {
    CHECK(e.variable() == 9);
  }
  CHECK_FALSE(poly_props(x(1) * x(1, RingMode::commutative) + x(2)).is_homogeneous);
}

TEST_CASE("ordered monomials fold adjacent repeats only") {
  const auto nc = RingMode::noncommutative;
  const Monomial m = Monomial::from_powers({{1, 1}, {1, 1}, {2, 1}, {1, 1}}, nc);
  CHECK(m.powers().size() == 3);
  CHECK(m.degree() == 4);
  CHECK(m.degree_in(1) == 3);
  CHECK_FALSE(m.is_multilinear());
  CHECK(Monomial::from_powers({{2, 1}, {1, 1}}, RingMode::commutative) ==
        Monomial::from_powers({{1, 1}, {2, 1}}, RingMode::commutative));
}

TEST_CASE("weighting validation") {
  CHECK_THROWS_AS(Weighting(std::map<VarId, std::uint32_t>{{1, 0}}), PreconditionError);
  const Weighting w(std::map<VarId, std::uint32_t>{{1, 2}}, 5u);
  CHECK(w.weight(1) == 2);
  CHECK(w.weight(77) == 5);
  CHECK(w.degree(Monomial::from_powers({{1, 2}, {3, 1}}, RingMode::commutative)) == 9);
  CHECK_THROWS_AS(Weighting(std::map<VarId, std::uint32_t>{{1, 1}}).weight(2), MissingVariableError);
  CHECK(Weighting::unit().weight(12345) == 1);
}

TEST_CASE("exact division") {
  const auto q = divide_exact(x(1) * x(1) - c(1), x(1) - c(1));
  REQUIRE(q.has_value());
  CHECK(*q == x(1) + c(1));
  CHECK_FALSE(divide_exact(x(1) * x(1) + c(1), x(1) - c(1)).has_value());
  CHECK_FALSE(divide_exact(x(2), x(1)).has_value());
  CHECK(divide_exact(Polynomial(), x(1)) == Polynomial());

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Polynomial a = random_poly(rng, RingMode::commutative);
    const Polynomial b = random_poly(rng, RingMode::commutative);
    if (b.is_zero()) continue;
    const auto back = divide_exact(a * b, b);
    REQUIRE(back.has_value());
    CHECK(*back == a);
  }
}

TEST_CASE("evaluation is a homomorphism") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> val(-5, 5);
  for (int trial = 0; trial < 100; ++trial) {
    const Polynomial a = random_poly(rng, RingMode::commutative), b = random_poly(rng, RingMode::commutative);
    const std::map<VarId, Rational> pt{{1, val(rng)}, {2, Rational(val(rng)) / 3}, {3, val(rng)}};
    CHECK((a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt));
    CHECK((a + b).evaluate(pt) == a.evaluate(pt) + b.evaluate(pt));
  }
  CHECK_THROWS_AS(x(4).evaluate({}), MissingVariableError);
}

TEST_CASE("text form round trip") {
  std::mt19937_64 rng(5);
  for (RingMode mode : {RingMode::commutative, RingMode::noncommutative}) {
    for (int trial = 0; trial < 200; ++trial) {
      const Polynomial p = random_poly(rng, mode);
      CHECK(parse_polynomial(to_string(p), mode) == p);
    }
  }
  CHECK(to_string(Polynomial()) == "0");
  CHECK(parse_polynomial("0").is_zero());
  CHECK_THROWS_AS(parse_polynomial("1/1*x1 +"), ParseError);
  try {
    parse_polynomial("1/1*x1 + 2/0*x2");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() > 1);
  }
}

TEST_CASE("rationals") {
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(parse_rational("-0") == 0);
  CHECK(to_string(Rational(3, 1)) == "3");
  CHECK(to_fraction_string(Rational(3, 1)) == "3/1");
  CHECK_THROWS_AS(parse_rational("1/0"), PreconditionError);
  CHECK_THROWS_AS(parse_rational("1.5"), PreconditionError);
  CHECK(binomial(10, 3) == 120);
}
