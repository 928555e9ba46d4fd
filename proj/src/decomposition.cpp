#include "esym/decomposition.hpp"

#include <optional>
#include <set>

#include "esym/errors.hpp"

namespace esym {

namespace {

std::uint64_t variable_count(const Polynomial& f) {
  std::set<VarId> vars;
  for (const auto& [m, c] : f.terms()) {
    for (const Power& p : m.powers()) vars.insert(p.var);
  }
  return vars.size();
}

// True degree per node, nullopt where the node computes 0.
std::vector<std::optional<std::uint32_t>> node_degrees(const Formula& phi) {
  std::vector<std::optional<std::uint32_t>> out;
  for (const Polynomial& p : expand_all(phi)) out.push_back(p.degree());
  return out;
}

std::uint32_t degree_of(const Polynomial& f, const char* what) {
  const auto d = f.degree();
  if (!d) throw PreconditionError(std::string(what) + " computes the zero polynomial");
  return *d;
}

void require_homogeneous(const Formula& phi) {
  const PropertyReport r = verify_properties(phi);
  if (!r.homogeneous) {
    throw PreconditionError("formula is not homogeneous at node " + std::to_string(*r.first_non_homogeneous));
  }
}

void sum_up(DecompositionCertificate& cert) {
  cert.minvar_sum = 0;
  for (const Factorization& f : cert.parts) cert.minvar_sum += f.minvar;
}

Factorization make_factorization(std::vector<Polynomial> factors, CertificateKind kind) {
  Factorization out;
  out.factors = std::move(factors);
  for (const Polynomial& f : out.factors) out.degrees.push_back(degree_of(f, "a factor"));
  if (kind == CertificateKind::balanced) {
    out.minvar = variable_count(out.factors.back());
  } else {
    out.minvar = variable_count(out.factors.front());
    for (const Polynomial& f : out.factors) out.minvar = std::min(out.minvar, variable_count(f));
  }
  return out;
}

// ---------------------------------------------------------------------------

void balanced_parts(const Formula& phi, std::vector<Factorization>& out) {
  const Polynomial f = expand(phi);
  if (f.is_zero()) return;
  if (degree_of(f, "the formula") == 1) {
    out.push_back(make_factorization({f}, CertificateKind::balanced));
    return;
  }
  const Split split = split_at(phi, find_split_node(phi));
  std::vector<Factorization> below;
  balanced_parts(split.at_w, below);
  for (Factorization& part : below) {
    std::vector<Polynomial> factors{split.h};
    for (Polynomial& g : part.factors) factors.push_back(std::move(g));
    out.push_back(make_factorization(std::move(factors), CertificateKind::balanced));
  }
  balanced_parts(split.remainder, out);
}

// Consecutive factors grouped until each group reaches degree `least`; a short
// tail joins the previous group and groups past the q-th fold into the q-th.
std::vector<Polynomial> group_factors(const std::vector<Polynomial>& factors, const Rational& least, unsigned q) {
  std::vector<Polynomial> groups;
  std::vector<Rational> degs;
  std::optional<Polynomial> current;
  Rational current_deg = 0;
  for (const Polynomial& g : factors) {
    current = current ? *current * g : g;
    current_deg += degree_of(g, "a factor");
    if (current_deg >= least) {
      groups.push_back(*current);
      degs.push_back(current_deg);
      current.reset();
      current_deg = 0;
    }
  }
  if (current) {
    if (groups.empty()) throw InvariantViolation("product node below the grouping degree");
    groups.back() = groups.back() * *current;
  }
  if (groups.size() < q) throw InvariantViolation("grouping produced fewer than q groups");
  while (groups.size() > q) {
    Polynomial last = std::move(groups.back());
    groups.pop_back();
    groups.back() = groups.back() * last;
  }
  return groups;
}

void form_parts(const Formula& phi, unsigned q, unsigned d, const Rational& ell, std::vector<Factorization>& out) {
  const Polynomial f = expand(phi);
  if (f.is_zero()) return;
  const Rational r(2 * q);
  const NodeId w = find_deep_product_node(phi, r, d);
  const Split split = split_at(phi, w);

  std::vector<Polynomial> children;
  for (NodeId c : phi.children(w)) children.push_back(expand(subformula(phi, c)));
  const Rational m = degree_of(expand(split.at_w), "the product node");
  std::vector<Polynomial> groups = group_factors(children, m / r, q);
  groups.front() = split.h * groups.front();
  Factorization part = make_factorization(std::move(groups), CertificateKind::form);
  for (std::uint64_t deg : part.degrees) {
    if (Rational(static_cast<unsigned long>(deg)) < ell) throw InvariantViolation("form factor below degree l");
  }
  out.push_back(std::move(part));
  form_parts(split.remainder, q, d, ell, out);
}

}  // namespace

Polynomial Factorization::product() const {
  if (factors.empty()) return Polynomial::constant(Rational(1));
  Polynomial p = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) p = p * factors[i];
  return p;
}

Split split_at(const Formula& phi, NodeId w) {
  if (w >= phi.node_count()) throw PreconditionError("node " + std::to_string(w) + " out of range");
  Split out;
  out.node = w;
  out.at_w = subformula(phi, w);
  out.remainder = prune_zeros(restrict(phi, w, Rational(0)));
  const auto h = divide_exact(expand(phi) - expand(out.remainder), expand(out.at_w));
  if (!h) throw InvariantViolation("Phi - Phi_(w=0) is not divisible by Phi_w at node " + std::to_string(w));
  out.h = *h;
  return out;
}

NodeId find_split_node(const Formula& phi) {
  if (phi.max_fan_in() > 2) throw PreconditionError("find_split_node needs fan-in <= 2");
  const auto deg = node_degrees(phi);
  const auto k = deg[phi.output()];
  if (!k || *k < 2) throw PreconditionError("find_split_node needs degree k >= 2");
  // 3 deg >= 2k  <=>  deg >= 2k/3
  auto heavy = [&](NodeId u) { return deg[u] && 3ull * *deg[u] >= 2ull * *k; };

  NodeId v = phi.output();
  for (;;) {
    std::optional<NodeId> next;
    for (NodeId c : phi.children(v)) {
      if (heavy(c)) {
        next = c;
        break;
      }
    }
    if (!next) break;
    v = *next;
  }
  if (phi.kind(v) != NodeKind::product) throw InvariantViolation("split walk ended at a non-product node");
  const auto kids = phi.children(v);
  NodeId best = kids[0];
  for (NodeId c : kids) {
    if (deg[c].value_or(0) > deg[best].value_or(0)) best = c;
  }
  const std::uint64_t got = deg[best].value_or(0);
  if (!(3 * got >= *k && 3 * got < 2ull * *k)) throw InvariantViolation("split node degree outside [k/3, 2k/3)");
  return best;
}

DecompositionCertificate balanced_decompose(const Formula& phi_in) {
  const Formula phi = binarize(phi_in);
  require_homogeneous(phi);
  const Polynomial f = expand(phi);
  if (!f.is_zero() && degree_of(f, "the formula") == 0) throw PreconditionError("balanced_decompose needs degree k >= 1");
  DecompositionCertificate cert;
  cert.kind = CertificateKind::balanced;
  cert.source_size = phi.size();
  balanced_parts(phi, cert.parts);
  sum_up(cert);
  return cert;
}

NodeId find_deep_product_node(const Formula& phi, const Rational& r, unsigned d) {
  if (r <= 1) throw PreconditionError("r must exceed 1");
  if (d == 0) throw PreconditionError("product-depth d must be at least 1");
  if (analyze(phi).product_depth > d) throw PreconditionError("formula product-depth exceeds d");
  const auto deg = node_degrees(phi);
  const auto k = deg[phi.output()];
  if (!k) throw PreconditionError("formula computes the zero polynomial");
  Rational rd = 1;
  for (unsigned i = 0; i < d; ++i) rd *= r;
  if (Rational(*k) <= rd) throw PreconditionError("hypothesis k r^-d > 1 violated");

  // From u, walk through sums along children of u's degree to a product.
  auto top_product = [&](NodeId u) {
    while (phi.kind(u) == NodeKind::sum) {
      std::optional<NodeId> next;
      for (NodeId c : phi.children(u)) {
        if (deg[c] == deg[u]) {
          next = c;
          break;
        }
      }
      if (!next) throw InvariantViolation("sum node without a child of its degree");
      u = *next;
    }
    if (phi.kind(u) != NodeKind::product) throw InvariantViolation("walk reached a leaf");
    return u;
  };

  NodeId u = top_product(phi.output());
  for (;;) {
    const Rational limit = Rational(*deg[u]) / r;
    std::optional<NodeId> heavy;
    for (NodeId c : phi.children(u)) {
      if (deg[c] && Rational(*deg[c]) >= limit) {
        heavy = c;
        break;
      }
    }
    if (!heavy) break;
    u = top_product(*heavy);
  }
  Rational floor_deg = Rational(*k) * r / rd;
  if (Rational(*deg[u]) < floor_deg) throw InvariantViolation("deep product node below k r^(1-d)");
  return u;
}

Rational form_degree(unsigned k, unsigned q, unsigned d) {
  Rational denom = 1;
  for (unsigned i = 0; i < d; ++i) denom *= 2 * q;
  return Rational(k) / denom;
}

DecompositionCertificate form_decompose(const Formula& phi, unsigned q, unsigned d) {
  if (q < 2) throw PreconditionError("hypothesis q > 1 violated");
  const PropertyReport props = verify_properties(phi);
  if (!props.homogeneous) throw PreconditionError("formula is not homogeneous");
  if (!props.multilinear) throw PreconditionError("formula is not multilinear");
  const Polynomial f = expand(phi);
  DecompositionCertificate cert;
  cert.kind = CertificateKind::form;
  cert.q = q;
  cert.source_size = phi.size();
  if (f.is_zero()) return cert;
  const Rational ell = form_degree(degree_of(f, "the formula"), q, d);
  if (ell <= 1) throw PreconditionError("hypothesis k (2q)^-d > 1 violated (k (2q)^-d = " + to_string(ell) + ")");
  cert.ell = ell;
  form_parts(phi, q, d, ell, cert.parts);
  sum_up(cert);
  return cert;
}

// ---------------------------------------------------------------------------

namespace {

void check_common(BoundReport& r, const DecompositionCertificate& cert, const Formula& phi) {
  Polynomial total;
  std::uint64_t minvar_sum = 0;
  for (std::size_t i = 0; i < cert.parts.size(); ++i) {
    const Factorization& part = cert.parts[i];
    const std::string at = "part " + std::to_string(i + 1) + ": ";
    if (part.factors.empty()) {
      r.fail(at + "no factors");
      continue;
    }
    if (part.degrees.size() != part.factors.size()) r.fail(at + "degree list length differs from factor count");
    total = total + part.product();
    minvar_sum += part.minvar;
  }
  if (total != expand(phi)) r.fail("sum of part products differs from the formula's polynomial");
  const std::uint64_t s = phi.size();
  if (cert.parts.size() > s) r.fail("more parts (" + std::to_string(cert.parts.size()) + ") than size " + std::to_string(s));
  if (minvar_sum > s) r.fail("sum of minvar " + std::to_string(minvar_sum) + " exceeds size " + std::to_string(s));
  if (minvar_sum != cert.minvar_sum) r.fail("recorded minvar sum does not match the parts");
  r.compared = std::to_string(minvar_sum);
  r.bound = std::to_string(s);
  if (verify_properties(phi).syntactically_multilinear) {
    for (std::size_t i = 0; i < cert.parts.size(); ++i) {
      if (!poly_props(cert.parts[i].product()).is_multilinear) r.fail("part " + std::to_string(i + 1) + ": product not multilinear");
    }
  }
}

// The recorded degree matches a homogeneous factor.
bool degree_ok(const Polynomial& f, std::uint64_t recorded) {
  const PolyProps p = poly_props(f);
  return p.degree && p.is_homogeneous && *p.degree == recorded;
}

}  // namespace

BoundReport validate_balanced(const DecompositionCertificate& cert, const Formula& phi) {
  BoundReport r;
  r.name = "balanced_certificate";
  r.inputs = {{"size", std::to_string(phi.size())}, {"parts", std::to_string(cert.parts.size())}};
  if (cert.kind != CertificateKind::balanced) r.fail("not a balanced certificate");
  check_common(r, cert, phi);
  const auto k = expand(phi).degree();
  for (std::size_t i = 0; i < cert.parts.size(); ++i) {
    const Factorization& part = cert.parts[i];
    if (part.factors.empty() || part.degrees.size() != part.factors.size()) continue;
    const std::string at = "part " + std::to_string(i + 1) + ": ";
    std::uint64_t total = 0;
    BigInt three = 1, two = 1;
    for (std::size_t j = 0; j < part.factors.size(); ++j) {
      const std::uint64_t dj = part.degrees[j];
      total += dj;
      if (!degree_ok(part.factors[j], dj)) r.fail(at + "factor " + std::to_string(j + 1) + " is not homogeneous of its recorded degree");
      three *= 3;
      two *= 2;
      if (j + 1 == part.factors.size()) break;
      // (1/3)^i k < d_i <= (2/3)^i k, i = j + 1
      const BigInt kk(static_cast<unsigned long>(k.value_or(0)));
      const BigInt dd(static_cast<unsigned long>(dj));
      if (!(three * dd > kk)) r.fail(at + "factor " + std::to_string(j + 1) + " degree at or below (1/3)^i k");
      if (!(three * dd <= two * kk)) r.fail(at + "factor " + std::to_string(j + 1) + " degree above (2/3)^i k");
    }
    if (part.degrees.back() != 1) r.fail(at + "last factor does not have degree 1");
    if (!k || total != *k) r.fail(at + "factor degrees do not sum to k");
    if (part.minvar != variable_count(part.factors.back())) r.fail(at + "minvar is not the variable count of the last factor");
  }
  return r;
}

BoundReport validate_form(const DecompositionCertificate& cert, const Formula& phi, unsigned q, const Rational& ell) {
  BoundReport r;
  r.name = "form_certificate";
  r.inputs = {{"size", std::to_string(phi.size())}, {"q", std::to_string(q)}, {"l", to_string(ell)},
              {"parts", std::to_string(cert.parts.size())}};
  if (cert.kind != CertificateKind::form) r.fail("not a form certificate");
  check_common(r, cert, phi);
  const auto k = expand(phi).degree();
  for (std::size_t i = 0; i < cert.parts.size(); ++i) {
    const Factorization& part = cert.parts[i];
    if (part.factors.empty() || part.degrees.size() != part.factors.size()) continue;
    const std::string at = "part " + std::to_string(i + 1) + ": ";
    if (part.factors.size() != q) r.fail(at + "has " + std::to_string(part.factors.size()) + " factors, expected q");
    std::uint64_t total = 0, fewest = UINT64_MAX;
    for (std::size_t j = 0; j < part.factors.size(); ++j) {
      total += part.degrees[j];
      fewest = std::min(fewest, variable_count(part.factors[j]));
      if (!degree_ok(part.factors[j], part.degrees[j])) r.fail(at + "factor " + std::to_string(j + 1) + " is not homogeneous of its recorded degree");
      if (Rational(static_cast<unsigned long>(part.degrees[j])) < ell) r.fail(at + "factor " + std::to_string(j + 1) + " has degree below l");
    }
    if (!k || total != *k) r.fail(at + "factor degrees do not sum to k");
    if (part.minvar != fewest) r.fail(at + "minvar is not the smallest factor variable count");
  }
  return r;
}

}  // namespace esym
