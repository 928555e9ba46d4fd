#include <doctest.h>

#include "esym/bounds.hpp"
#include "esym/constructions.hpp"
#include "esym/corpus.hpp"
#include "esym/errors.hpp"

using namespace esym;

namespace {

Polynomial P(std::string_view text) { return parse_polynomial(text); }

Circuit C(std::string_view text) {
  GraphBuilder b;
  return b.circuit(b.graft(parse_formula(text)));
}

const Weighting kUnit = Weighting::unit();

std::uint64_t outer_terms(const Formula& f) {
  return f.kind(f.output()) == NodeKind::sum ? f.children(f.output()).size() : 1;
}

}  // namespace

TEST_CASE("interpolation coefficients") {
  CHECK(interpolation_coefficients(1, 1).coefficients == std::vector<Rational>{Rational(-1), Rational(1)});
  CHECK(interpolation_coefficients(1, 0).coefficients == std::vector<Rational>{Rational(2), Rational(-1)});
  for (unsigned n = 0; n <= 8; ++n) {
    for (unsigned k = 0; k <= n; ++k) CHECK(plan_residual_zero(interpolation_coefficients(n, k)));
  }
  InterpolationPlan bad = interpolation_coefficients(3, 1);
  bad.coefficients[0] += 1;
  CHECK_FALSE(plan_residual_zero(bad));
  CHECK_THROWS_AS(interpolation_coefficients(2, 3), PreconditionError);
}

TEST_CASE("ben_or examples") {
  CHECK(expand(ben_or(1, 1)) == P("1/1*x1"));
  CHECK(expand(ben_or(3, 0)) == P("1/1"));
  const Formula f = ben_or(4, 2);
  CHECK(expand(f) == oracle_S(4, 2));
  const PropertyReport r = verify_properties(f);
  CHECK(r.multilinear);
  CHECK_FALSE(r.homogeneous);
  CHECK_THROWS_AS(ben_or(2, 3), PreconditionError);
  CHECK_THROWS_AS(ben_or(0, 0), PreconditionError);
}

TEST_CASE("power sums") {
  const Formula a = power_sum_formula(3, 1);
  CHECK(serialize(a) == serialize(parse_formula("(+ x1 x2 x3)")));
  CHECK(a.size() == 3);
  CHECK(power_sum_formula(2, 3).size() == 6);
  CHECK(expand(power_sum_formula(5, 4)) == oracle_P(5, 4));
}

TEST_CASE("newton circuit") {
  CHECK(expand(newton_circuit(0)) == P("1/1"));
  CHECK(expand(newton_circuit(1)) == P("1/1*x1"));
  CHECK(expand(newton_circuit(3)) == P("1/6*x1^3 + -1/2*x1*x2 + 1/3*x3"));
  for (unsigned k = 1; k <= 10; ++k) {
    const Circuit c = newton_circuit(k);
    const Weighting w = Weighting::by_index(k);
    CHECK(expand(c) == newton_Z(k));
    CHECK(verify_properties(c, &w).w_homogeneous);
    CHECK(analyze(c).size <= kNewtonCircuitLeafConstant * k * k);
  }
}

TEST_CASE("frontier examples") {
  const Circuit single = C("(* (* x1 x2) (* x3 x4))");
  CHECK(frontier(single, kUnit) == std::vector<NodeId>{single.output()});
  CHECK(expand(gate_quotient(single, single.output())) == P("1/1"));

  const Circuit two = C("(+ (* x1 x2) (* x3 x4))");
  const auto v = frontier(two, kUnit);
  CHECK(v.size() == 2);
  for (NodeId g : v) CHECK(expand(gate_quotient(two, g)) == P("1/1"));
  const FrontierIdentity id = frontier_identity(two, kUnit);
  CHECK(id.circuit == id.decomposed);
  CHECK(id.frontier_size == 2);

  CHECK_THROWS_AS(frontier(C("(+ x1 x2)"), kUnit), PreconditionError);
  CHECK_THROWS_AS(normalize(C("(+ x1 (* x1 x2))"), kUnit), PreconditionError);
  CHECK_THROWS_AS(w_degrees(C("(+ x1 (* x1 x2))"), kUnit), PreconditionError);
}

TEST_CASE("normalize prunes zero gates") {
  const Circuit c = C("(+ (* x1 x2) (* x1 (+ x2 (* -1 x2))) (* 0 x3 x3))");
  const Circuit n = normalize(c, kUnit);
  CHECK(expand(n) == expand(c));
  CHECK(analyze(n).size == 2);
  CHECK(expand(normalize(C("(+ x1 (* -1 x1))"), kUnit)).is_zero());
}

TEST_CASE("gate quotient") {
  // x1 x2 appears inside two sums, so its quotient collects both paths.
  GraphBuilder b;
  const NodeId v = b.product({b.variable(1), b.variable(2)});
  const NodeId s1 = b.sum({v, b.product({b.variable(3), b.variable(4)})});
  const NodeId root = b.product({s1, b.sum({b.variable(5), b.variable(6)})});
  const Circuit c = b.circuit(root);
  const std::vector<Polynomial> polys = expand_all(c);
  NodeId gate = 0;
  for (NodeId u = 0; u < c.node_count(); ++u) {
    if (polys[u] == P("1/1*x1*x2")) gate = u;
  }
  CHECK(expand(gate_quotient(c, gate)) == P("1/1*x5 + 1/1*x6"));
  CHECK(analyze(gate_quotient(c, gate)).size <= analyze(c).size + 1);

  // A gate reached through both factors of one product breaks the invariant.
  GraphBuilder sq;
  const NodeId x = sq.sum({sq.variable(1), sq.variable(2)});
  const Circuit squared = sq.circuit(sq.product({x, x}));
  CHECK_THROWS_AS(gate_quotient(squared, 2), InvariantViolation);
}

TEST_CASE("frontier identity on Newton circuits and random circuits") {
  for (unsigned k = 2; k <= 8; ++k) {
    const FrontierIdentity id = frontier_identity(newton_circuit(k), Weighting::by_index(k));
    CHECK_MESSAGE(id.circuit == id.decomposed, "k=" << k);
    CHECK(id.frontier_size > 0);
  }
  CHECK(frontier_identity(newton_circuit(6), Weighting::by_index(6)).decomposed == newton_Z(6));

  corpus::Rng rng(20240611);
  std::uniform_int_distribution<unsigned> deg(2, 8), gates(6, 30);
  for (int i = 0; i < 50; ++i) {
    const unsigned d = deg(rng);
    const Circuit c = corpus::w_homogeneous_circuit(rng, d, d, gates(rng));
    const Weighting w = Weighting::by_index(d);
    const FrontierIdentity id = frontier_identity(c, w);
    CHECK_MESSAGE(id.circuit == id.decomposed, serialize(c));
    const Formula f = circuit_to_formula(c, w);
    CHECK_MESSAGE(expand(f) == expand(c), serialize(c));
    CHECK(verify_properties(f, &w).w_homogeneous);
    CHECK(within_balance_bound(f.size(), c.node_count(), d));
  }
}

TEST_CASE("circuit_to_formula") {
  CHECK(expand(circuit_to_formula(newton_circuit(2), Weighting::by_index(2))) == P("1/2*x1^2 + -1/2*x2"));
  const Circuit linear = C("(+ x1 (* 3 x2) x3)");
  CHECK(circuit_to_formula(linear, kUnit).size() <= analyze(linear).size);
  CHECK(expand(circuit_to_formula(C("(+ x1 (* -1 x1))"), kUnit)).is_zero());
  for (unsigned k = 1; k <= 10; ++k) {
    const Weighting w = Weighting::by_index(k);
    const Circuit c = newton_circuit(k);
    const Formula f = circuit_to_formula(c, w);
    if (k <= 8) {
      CHECK(expand(f) == newton_Z(k));
      CHECK(verify_properties(f, &w).w_homogeneous);
    }
    CHECK_MESSAGE(within_balance_bound(f.size(), c.node_count(), k), "k=" << k << " size=" << f.size());
  }
  CHECK_FALSE(within_balance_bound(1000000, 5, 2));
}

TEST_CASE("oracle equivalence and certificates on the grid") {
  for (unsigned n = 1; n <= 10; ++n) {
    for (unsigned k = 1; k <= n; ++k) {
      const Polynomial s = oracle_S(n, k);
      const Formula bo = ben_or(n, k), nh = newton_homogeneous_formula(n, k), d4 = depth4_formula(n, k),
                    dc = monotone_dc(n, k);
      CHECK(expand(bo) == s);
      CHECK(expand(nh) == s);
      CHECK(expand(d4) == s);
      CHECK(expand(dc) == s);

      CHECK(analyze(bo).product_depth == 1);
      CHECK(verify_properties(bo).multilinear);
      CHECK(verify_properties(nh).homogeneous);
      CHECK(verify_properties(d4).homogeneous);
      CHECK(analyze(d4).product_depth <= 2);
      const PropertyReport m = verify_properties(dc);
      CHECK((m.monotone && m.multilinear && m.homogeneous && m.syntactically_multilinear));
    }
  }
}

TEST_CASE("size certificates") {
  for (unsigned n = 1; n <= 64; ++n) CHECK(ben_or(n, n / 2).size() <= 4ull * (n + 1) * (n + 1));
  for (unsigned k = 1; k <= 10; ++k) {
    for (unsigned n = k; n <= 64; n += 7) {
      CHECK(BigInt(static_cast<unsigned long>(depth4_formula(n, k).size())) <= partition_function(k) * (k * n + 1));
    }
  }
  for (unsigned k = 2; k <= 8; ++k) {
    for (unsigned n = 2 * k; n <= 64; ++n) {
      CHECK_MESSAGE(monotone_upper_bound(n, k).ceil_hi() >= monotone_dc(n, k).size(), "n=" << n << " k=" << k);
    }
  }
  for (unsigned k = 2; k <= 4; ++k) {
    for (unsigned n : {8u, 16u}) CHECK(newton_homogeneous_formula(2 * n, k).size() == 2 * newton_homogeneous_formula(n, k).size());
  }
  CHECK(outer_terms(depth4_formula(8, 4)) == 5);
  CHECK(analyze(depth4_formula(8, 4)).product_depth == 2);
}

TEST_CASE("construction examples") {
  CHECK(expand(newton_homogeneous_formula(2, 2)) == P("1/1*x1*x2"));
  CHECK(verify_properties(newton_homogeneous_formula(6, 3)).homogeneous);
  CHECK(expand(depth4_formula(3, 2)) == oracle_S(3, 2));
  const Formula dc = monotone_dc(2, 2);
  CHECK(dc.size() == 2);
  CHECK(expand(dc) == P("1/1*x1*x2"));
  CHECK(BigInt(static_cast<unsigned long>(monotone_dc(4, 2).size())) <= monotone_upper_bound(4, 2).ceil_hi());
  CHECK(verify_properties(monotone_dc(8, 3)).monotone);
  CHECK(monotone_dc(5, 1).size() == 5);
  for (auto build : {ben_or, newton_homogeneous_formula, depth4_formula, monotone_dc}) {
    CHECK(expand(build(4, 0)) == P("1/1"));
    CHECK_THROWS_AS(build(3, 4), PreconditionError);
    CHECK_THROWS_AS(build(0, 0), PreconditionError);
  }
}

TEST_CASE("depth-four formula round trip") {
  const Formula f = depth4_formula(3, 2);
  const Formula back = parse_formula(serialize(f));
  CHECK(structurally_equal(f, back));
  CHECK(serialize(back) == serialize(f));
}

TEST_CASE("noncommutative expansion") {
  for (unsigned n = 1; n <= 8; ++n) {
    for (unsigned k = 1; k <= n; ++k) {
      const Polynomial s = oracle_S(n, k, RingMode::noncommutative);
      CHECK(expand(ben_or(n, k), RingMode::noncommutative) == s);
      CHECK(expand(monotone_dc(n, k), RingMode::noncommutative) == s);
    }
  }
}

TEST_CASE("constructions are deterministic") {
  CHECK(serialize(newton_homogeneous_formula(7, 5)) == serialize(newton_homogeneous_formula(7, 5)));
  CHECK(serialize(monotone_dc(13, 4)) == serialize(monotone_dc(13, 4)));
}
