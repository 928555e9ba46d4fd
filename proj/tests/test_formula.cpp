#include <doctest.h>

#include "esym/corpus.hpp"
#include "esym/errors.hpp"
#include "esym/formula.hpp"

using namespace esym;

namespace {

Formula F(std::string_view text) { return parse_formula(text); }
Polynomial P(std::string_view text, RingMode mode = RingMode::commutative) { return parse_polynomial(text, mode); }

std::uint64_t count_leaves(const Graph& g) {
  std::uint64_t n = 0;
  for (NodeId id = 0; id < g.node_count(); ++id) n += g.is_leaf(id) ? 1 : 0;
  return n;
}

std::map<VarId, Rational> random_point(corpus::Rng& rng, unsigned vars) {
  std::uniform_int_distribution<int> num(-7, 7), den(1, 4);
  std::map<VarId, Rational> pt;
  for (VarId v = 1; v <= vars; ++v) {
    Rational r(num(rng), den(rng));
    r.canonicalize();
    pt[v] = r;
  }
  return pt;
}

}  // namespace

TEST_CASE("analyze") {
  const Shape s = analyze(F("(* (+ x1 x2) (+ x3 x4))"));
  CHECK(s.size == 4);
  CHECK(s.depth == 2);
  CHECK(s.product_depth == 1);
  CHECK(s.formal_degree == 2);
  CHECK(s.variables == std::vector<VarId>{1, 2, 3, 4});

  const Shape c = analyze(F("7"));
  CHECK(c.size == 1);
  CHECK(c.depth == 0);
  CHECK(c.product_depth == 0);
  CHECK(c.formal_degree == 0);
}

TEST_CASE("expand and eval") {
  CHECK(expand(F("(* (+ x1 1) (+ x1 -1))")) == P("1/1*x1^2 + -1/1"));
  const auto nc = RingMode::noncommutative;
  CHECK(expand(F("(* (+ x1 x2) x1)"), nc) == P("1/1*x1^2 + 1/1*x2*x1", nc));
  CHECK(eval(F("(* (+ x1 x2) x1)"), {{1, 2}, {2, 3}}) == 10);
  try {
    eval(F("(+ x1 x5)"), {{1, 2}});
    FAIL("expected MissingVariableError");
  } catch (const MissingVariableError& e) {
    CHECK(e.variable() == 5);
  }
}

TEST_CASE("eval agrees with expand-then-evaluate") {
  corpus::Rng rng(101);
  for (int trial = 0; trial < 500; ++trial) {
    const Formula f = corpus::general(rng, {60, 5, 3});
    const Polynomial p = expand(f);
    for (int i = 0; i < 5; ++i) {
      const auto pt = random_point(rng, 5);
      CHECK(eval(f, pt) == p.evaluate(pt));
    }
  }
}

TEST_CASE("circuits share expansions and reject cycles") {
  using S = Circuit::NodeSpec;
  std::vector<S> specs(4);
  specs[0] = {NodeKind::variable, 1, 0, {}};
  specs[1] = {NodeKind::variable, 2, 0, {}};
  specs[2] = {NodeKind::sum, 0, 0, {0, 1}};
  specs[3] = {NodeKind::product, 0, 0, {2, 2}};
  const Circuit c = Circuit::from_nodes(specs, 3);
  CHECK_FALSE(c.is_tree());
  CHECK(analyze(c).size == 2);
  CHECK(expand(c) == P("1/1*x1^2 + 2/1*x1*x2 + 1/1*x2^2"));
  CHECK(unfold(c).size() == 4);
  CHECK(expand(unfold(c)) == expand(c));

  specs[2].children = {0, 3};
  CHECK_THROWS_AS(Circuit::from_nodes(specs, 3), StructuralError);
  specs[2].children = {0};
  CHECK_THROWS_AS(Circuit::from_nodes(specs, 3), StructuralError);
}

TEST_CASE("builder refuses shared nodes in formulas") {
  GraphBuilder b;
  const NodeId x = b.variable(1);
  const NodeId s = b.sum({x, x});
  CHECK_THROWS_AS(b.formula(s), StructuralError);
  CHECK_NOTHROW(b.circuit(s));
  CHECK(b.sum({x}) == x);
  CHECK_THROWS_AS(b.product({}), StructuralError);
}

TEST_CASE("verify_properties") {
  const PropertyReport r = verify_properties(F("(+ (* x1 x2) (* x3 x4))"));
  CHECK(r.homogeneous);
  CHECK(r.w_homogeneous);
  CHECK(r.multilinear);
  CHECK(r.syntactically_multilinear);
  CHECK(r.monotone);

  const Formula sq = F("(* x1 x1)");
  const PropertyReport q = verify_properties(sq);
  CHECK_FALSE(q.multilinear);
  CHECK_FALSE(q.syntactically_multilinear);
  CHECK(q.homogeneous);
  CHECK(q.first_non_multilinear == sq.output());

  const PropertyReport m = verify_properties(F("(+ (* -1 x1) 1)"));
  CHECK_FALSE(m.monotone);
  CHECK_FALSE(m.homogeneous);
  CHECK_FALSE(m.sum_degrees_consistent);

  const Weighting w = Weighting::by_index(2);
  CHECK(verify_properties(F("(+ (* x1 x1) x2)"), &w).w_homogeneous);
  CHECK_FALSE(verify_properties(F("(+ (* x1 x1) x2)")).w_homogeneous);
}

TEST_CASE("property checks imply polynomial properties on the corpus") {
  corpus::Rng rng(202);
  for (int trial = 0; trial < 300; ++trial) {
    const Formula f = trial % 2 ? corpus::general(rng, {20, 4, 3}) : corpus::balanced_corpus_item(rng);
    const PropertyReport r = verify_properties(f);
    const PolyProps p = poly_props(expand(f));
    if (r.homogeneous) CHECK(p.is_homogeneous);
    if (r.multilinear) CHECK(p.is_multilinear);
    if (r.syntactically_multilinear) CHECK(r.multilinear);
    CHECK(f.annotations_consistent());
  }
}

TEST_CASE("binarize") {
  const Formula s = binarize(F("(+ x1 x2 x3)"));
  CHECK(structurally_equal(s, F("(+ (+ x1 x2) x3)")));
  const Formula p = binarize(F("(* x1 x2 x3 x4)"));
  CHECK(structurally_equal(p, F("(* (* (* x1 x2) x3) x4)")));
  CHECK(p.size() == 4);

  corpus::Rng rng(303);
  for (int trial = 0; trial < 200; ++trial) {
    const Formula f = corpus::general(rng, {30, 4, 5});
    const Formula b = binarize(f);
    CHECK(b.max_fan_in() <= 2);
    CHECK(expand(b, RingMode::noncommutative) == expand(f, RingMode::noncommutative));
    CHECK(analyze(b).size == count_leaves(f));
    const PropertyReport rf = verify_properties(f), rb = verify_properties(b);
    if (rf.homogeneous) CHECK(rb.homogeneous);
    if (rf.multilinear) CHECK(rb.multilinear);
    CHECK(rb.monotone == rf.monotone);
  }
}

TEST_CASE("substitute") {
  // (y1*y1 - y2)/2 with y1 = x1+x2 and y2 = x1^2+x2^2 is x1*x2.
  const Formula z2 = F("(+ (* 1/2 x1 x1) (* -1/2 x2))");
  const Formula sub = substitute(z2, {{1, F("(+ x1 x2)")}, {2, F("(+ (* x1 x1) (* x2 x2))")}});
  CHECK(expand(sub) == P("1/1*x1*x2"));
  CHECK(verify_properties(sub).homogeneous);

  const Formula any = F("(* (+ x3 2) x4)");
  CHECK(structurally_equal(substitute(F("x1"), {{1, any}}), any));
  CHECK_THROWS_AS(substitute(F("(+ x1 x2)"), {{1, any}}), MissingVariableError);
}

TEST_CASE("restrict and subformula") {
  const Formula f = F("(+ (* x1 x2) x3)");
  const NodeId prod = f.children(f.output())[0];
  CHECK(expand(restrict(f, prod, Rational(0))) == P("1/1*x3"));
  CHECK(expand(subformula(f, prod)) == P("1/1*x1*x2"));
  CHECK(structurally_equal(restrict(f, f.output(), Rational(5)), F("5")));
  CHECK_THROWS_AS(restrict(f, 99, Rational(0)), PreconditionError);

  // Size accounting of a split: s_w + s_(w=0) <= s + 1 with w counted as a leaf.
  corpus::Rng rng(404);
  for (int trial = 0; trial < 100; ++trial) {
    const Formula g = corpus::balanced_corpus_item(rng);
    for (NodeId w = 0; w < g.node_count(); ++w) {
      const Formula zero = restrict(g, w, Rational(0));
      CHECK(subformula(g, w).size() + zero.size() == g.size() + 1);
    }
  }
}

TEST_CASE("prune_zeros") {
  CHECK(structurally_equal(prune_zeros(F("(+ (* 0 x1) x2)")), F("x2")));
  CHECK(is_zero_leaf(prune_zeros(F("(* (+ 0 0) x1)"))));
  CHECK(structurally_equal(prune_zeros(F("(+ x1 x2)")), F("(+ x1 x2)")));
}

TEST_CASE("abs_constants") {
  CHECK(structurally_equal(abs_constants(F("(* -3 x1)")), F("(* 3 x1)")));
  const Formula mono = F("(+ (* 2 x1) x2)");
  CHECK(structurally_equal(abs_constants(mono), mono));

  corpus::Rng rng(505);
  for (int trial = 0; trial < 200; ++trial) {
    const Formula f = corpus::balanced_corpus_item(rng);
    const Formula a = abs_constants(f);
    CHECK(verify_properties(a).monotone);
    CHECK(a.size() == f.size());
    // Multilinear input: every monomial survives.
    const Polynomial pf = expand(f), pa = expand(a);
    for (const auto& [m, coeff] : pf.terms()) CHECK(pa.coefficient(m) != 0);
  }
}

TEST_CASE("s-expression form") {
  CHECK(serialize(F("x1")) == "x1");
  CHECK(serialize(F("(*   (+ x1\n x2) 3/2)")) == "(* (+ x1 x2) 3/2)");
  CHECK(serialize(F("6/4")) == "3/2");

  corpus::Rng rng(606);
  for (int trial = 0; trial < 500; ++trial) {
    const Formula f = corpus::general(rng, {40, 6, 4});
    CHECK(structurally_equal(parse_formula(serialize(f)), f));
  }
}

TEST_CASE("parse errors carry locations") {
  auto error_of = [](std::string_view text) -> ParseError {
    try {
      parse_formula(text);
    } catch (const ParseError& e) {
      return e;
    }
    FAIL("expected ParseError");
    return ParseError(0, 0, "", "");
  };
  const ParseError a = error_of("(+ x1)");
  CHECK(a.line() == 1);
  CHECK(a.column() == 6);
  const ParseError b = error_of("(+ x1\n  y2)");
  CHECK(b.line() == 2);
  CHECK(b.column() == 3);
  CHECK(error_of("(- x1 x2)").expected() == "'+' or '*'");
  CHECK(error_of("(+ x1 x2").expected() == "formula or ')'");
  CHECK(error_of("x1 x2").expected() == "end of input");
  CHECK(error_of("1/0").column() == 1);
  CHECK(error_of(")").line() == 1);
}
