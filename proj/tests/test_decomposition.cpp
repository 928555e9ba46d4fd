#include <doctest.h>

#include <algorithm>

#include "esym/bounds.hpp"
#include "esym/constructions.hpp"
#include "esym/corpus.hpp"
#include "esym/decomposition.hpp"
#include "esym/errors.hpp"

using namespace esym;

namespace {

Formula F(std::string_view text) { return parse_formula(text); }
Polynomial P(std::string_view text) { return parse_polynomial(text); }

unsigned bound_n(const Formula& phi, unsigned k) {
  const auto vars = analyze(phi).variables;
  return std::max<unsigned>(vars.empty() ? 0 : vars.back(), 2 * k);
}

BigInt count(const Polynomial& f) { return BigInt(static_cast<unsigned long>(f.monomial_count())); }

std::uint32_t degree(const Formula& phi) { return *expand(phi).degree(); }

}  // namespace

TEST_CASE("split node examples") {
  const Formula a = F("(* (* x1 x2) (* x3 x4))");
  const NodeId w = find_split_node(a);
  CHECK(expand(subformula(a, w)) == P("1/1*x1*x2"));

  const Formula b = F("(* x1 (* x2 (* x3 x4)))");
  CHECK(expand(subformula(b, find_split_node(b))) == P("1/1*x3*x4"));

  CHECK_THROWS_AS(find_split_node(F("(+ x1 x2)")), PreconditionError);
  CHECK_THROWS_AS(find_split_node(F("(* x1 x2 x3)")), PreconditionError);

  corpus::Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const Formula phi = corpus::balanced_corpus_item(rng);
    const auto deg = expand(phi).degree();
    if (!deg || *deg < 2) continue;  // constants can cancel a whole item
    const std::uint32_t k = *deg;
    const std::uint32_t got = *expand(subformula(phi, find_split_node(phi))).degree();
    CHECK(3 * got >= k);
    CHECK(3 * got < 2 * k);
  }
}

TEST_CASE("restriction identity") {
  corpus::Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    const Formula phi = corpus::balanced_corpus_item(rng);
    if (expand(phi).degree().value_or(0) < 2) continue;
    const Split s = split_at(phi, find_split_node(phi));
    CHECK(s.h * expand(s.at_w) + expand(s.remainder) == expand(phi));
    CHECK(s.at_w.size() + (is_zero_leaf(s.remainder) ? 0 : s.remainder.size()) <= phi.size());
  }
}

TEST_CASE("balanced decomposition examples") {
  const Formula sum = F("(+ x1 x2)");
  const DecompositionCertificate one = balanced_decompose(sum);
  REQUIRE(one.parts.size() == 1);
  CHECK(one.parts[0].factors.size() == 1);
  CHECK(one.minvar_sum == 2);
  CHECK(validate_balanced(one, sum).pass);

  const Formula prod = F("(* x1 x2)");
  const DecompositionCertificate two = balanced_decompose(prod);
  REQUIRE(two.parts.size() == 1);
  CHECK(two.parts[0].degrees == std::vector<std::uint64_t>{1, 1});
  CHECK(two.parts[0].minvar == 1);
  CHECK(validate_balanced(two, prod).pass);

  const Formula dc = monotone_dc(4, 2);
  const BoundReport r = validate_balanced(balanced_decompose(dc), dc);
  CHECK(r.pass);

  CHECK_THROWS_AS(balanced_decompose(F("(+ x1 (* x1 x2))")), PreconditionError);
  CHECK_THROWS_AS(balanced_decompose(F("3")), PreconditionError);
}

TEST_CASE("balanced certificates reject tampering") {
  const Formula phi = monotone_dc(6, 3);
  const DecompositionCertificate good = balanced_decompose(phi);
  REQUIRE(validate_balanced(good, phi).pass);

  DecompositionCertificate bumped = good;
  bumped.parts[0].degrees[0] += 1;
  const BoundReport r = validate_balanced(bumped, phi);
  CHECK_FALSE(r.pass);
  CHECK(std::any_of(r.failures.begin(), r.failures.end(),
                    [](const std::string& f) { return f.find("recorded degree") != std::string::npos; }));

  DecompositionCertificate dropped = good;
  dropped.parts.pop_back();
  CHECK_FALSE(validate_balanced(dropped, phi).pass);

  DecompositionCertificate minvar = good;
  minvar.parts[0].minvar += 1;
  CHECK_FALSE(validate_balanced(minvar, phi).pass);

  const Formula zero = F("0");
  CHECK(validate_balanced(DecompositionCertificate{}, zero).pass);
  CHECK(balanced_decompose(F("(+ x1 (* -1 x1))")).parts.empty());
}

TEST_CASE("balanced corpus and the monomial bound") {
  corpus::Rng rng(20240611);
  for (int i = 0; i < 200; ++i) {
    const Formula phi = corpus::balanced_corpus_item(rng);
    const DecompositionCertificate cert = balanced_decompose(phi);
    const BoundReport r = validate_balanced(cert, phi);
    CHECK_MESSAGE(r.pass, serialize(phi) << " " << (r.failures.empty() ? "" : r.failures[0]));

    const Polynomial f = expand(phi);
    if (f.is_zero()) {
      CHECK(cert.parts.empty());
      continue;
    }
    const unsigned k = *f.degree(), n = bound_n(phi, k);
    const Interval bound = formula_monomial_bound(phi.size(), k, n);
    CHECK_FALSE(bound.hi_lt(count(f)));
    for (const Factorization& part : cert.parts) {
      const Interval per = balanced_monomial_bound(k, n, part.minvar);
      CHECK_FALSE(per.hi_lt(count(part.product())));
    }
  }
}

TEST_CASE("deep product node") {
  const Formula sp = F("(+ (* x1 x2 x3 x4 x5) (* x6 x7 x8 x9 x10))");
  const NodeId w = find_deep_product_node(sp, Rational(4), 1);
  CHECK(sp.kind(w) == NodeKind::product);

  // k r^-d must exceed 1, so (8,4) with r = 2, d = 2 sits on the boundary.
  CHECK_THROWS_AS(find_deep_product_node(depth4_formula(8, 4), Rational(2), 2), PreconditionError);
  const Formula d4 = depth4_formula(8, 5);
  const NodeId u = find_deep_product_node(d4, Rational(2), 2);
  const auto deg = *expand(subformula(d4, u)).degree();
  CHECK(4 * deg >= 2 * 5);
  for (NodeId c : d4.children(u)) CHECK(2 * *expand(subformula(d4, c)).degree() < deg);

  CHECK_THROWS_AS(find_deep_product_node(d4, Rational(2), 1), PreconditionError);
  CHECK_THROWS_AS(find_deep_product_node(sp, Rational(5), 1), PreconditionError);

  corpus::Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const Formula phi = corpus::bounded_depth(rng, 17 + i % 18, 2);
    const unsigned k = degree(phi);
    const NodeId v = find_deep_product_node(phi, Rational(4), 2);
    const unsigned dv = *expand(subformula(phi, v)).degree();
    CHECK(4 * dv >= k);
    for (NodeId c : phi.children(v)) CHECK(4 * *expand(subformula(phi, c)).degree() < dv);
  }
}

TEST_CASE("form decomposition") {
  // 2q linear factors give k (2q)^-1 = 1, which the strict hypothesis rejects;
  // one more factor gives l = 5/4 and groups of degree 2 and 3.
  CHECK_THROWS_AS(form_decompose(F("(* (+ x1 x2) (+ x3 x4) (+ x5 x6) (+ x7 x8))"), 2, 1), PreconditionError);
  const Formula single = F("(* (+ x1 x2) (+ x3 x4) (+ x5 x6) (+ x7 x8) (+ x9 x10))");
  const DecompositionCertificate one = form_decompose(single, 2, 1);
  REQUIRE(one.parts.size() == 1);
  CHECK(one.parts[0].degrees == std::vector<std::uint64_t>{2, 3});
  CHECK(one.ell == Rational(5, 4));
  CHECK(validate_form(one, single, 2, one.ell).pass);

  CHECK_THROWS_AS(form_decompose(depth4_formula(16, 8), 2, 2), PreconditionError);
  CHECK_THROWS_AS(form_decompose(single, 1, 1), PreconditionError);

  DecompositionCertificate tampered = one;
  tampered.parts[0].degrees[1] = 1;
  CHECK_FALSE(validate_form(tampered, single, 2, one.ell).pass);
  DecompositionCertificate empty;
  empty.kind = CertificateKind::form;
  CHECK(validate_form(empty, F("0"), 2, Rational(2)).pass);
}

TEST_CASE("bounded-depth corpus") {
  struct Band {
    unsigned d, k_lo, k_hi, count;
  };
  corpus::Rng rng(99);
  for (const Band band : {Band{1, 8, 12, 40}, Band{2, 17, 34, 40}, Band{3, 65, 70, 12}}) {
    for (unsigned i = 0; i < band.count; ++i) {
      const unsigned k = band.k_lo + i % (band.k_hi - band.k_lo + 1);
      const Formula phi = corpus::bounded_depth(rng, k, band.d);
      REQUIRE(analyze(phi).product_depth <= band.d);
      const DecompositionCertificate cert = form_decompose(phi, 2, band.d);
      const BoundReport r = validate_form(cert, phi, 2, cert.ell);
      CHECK_MESSAGE(r.pass, "d=" << band.d << " k=" << k << " " << (r.failures.empty() ? "" : r.failures[0]));

      const unsigned n = bound_n(phi, k);
      const Polynomial f = expand(phi);
      if (cert.ell >= 2) {
        for (const Factorization& part : cert.parts) {
          const Interval per = formed_monomial_bound(k, n, 2, cert.ell, part.minvar);
          CHECK_FALSE(per.hi_lt(count(part.product())));
        }
      }
      if (const_depth_hypothesis(k, band.d)) {
        CHECK_FALSE(const_depth_monomial_bound(phi.size(), k, n, band.d).hi_lt(count(f)));
      }
    }
  }
}

TEST_CASE("decompositions are deterministic") {
  corpus::Rng a(5), b(5);
  for (int i = 0; i < 10; ++i) {
    const Formula x = corpus::balanced_corpus_item(a), y = corpus::balanced_corpus_item(b);
    const DecompositionCertificate cx = balanced_decompose(x), cy = balanced_decompose(y);
    REQUIRE(cx.parts.size() == cy.parts.size());
    for (std::size_t j = 0; j < cx.parts.size(); ++j) CHECK(cx.parts[j].factors == cy.parts[j].factors);
  }
}
