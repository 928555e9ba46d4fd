#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "cli.hpp"
#include "esym/bounds.hpp"
#include "esym/constructions.hpp"
#include "esym/corpus.hpp"
#include "esym/decomposition.hpp"
#include "esym/errors.hpp"
#include "pool.hpp"

namespace esym::cli {

using Json = nlohmann::ordered_json;

Range parse_range(const std::string& text) {
  auto number = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
      throw PreconditionError("bad range '" + text + "': expected N or A..B");
    }
    return static_cast<unsigned>(std::stoul(s));
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const unsigned v = number(text);
    return {v, v};
  }
  return {number(text.substr(0, dots)), number(text.substr(dots + 2))};
}

namespace {

std::uint64_t n_of(const RunConfig& cfg) { return parse_range(cfg.n).hi; }
std::uint64_t k_of(const RunConfig& cfg) { return parse_range(cfg.k).hi; }

RingMode ring(const RunConfig& cfg) { return cfg.noncommutative ? RingMode::noncommutative : RingMode::commutative; }

Json properties_json(const PropertyReport& r) {
  return Json{{"homogeneous", r.homogeneous},
              {"w_homogeneous", r.w_homogeneous},
              {"multilinear", r.multilinear},
              {"syntactically_multilinear", r.syntactically_multilinear},
              {"monotone", r.monotone}};
}

Json shape_json(const Graph& g) {
  const Shape s = analyze(g);
  return Json{{"size", s.size}, {"depth", s.depth}, {"product_depth", s.product_depth}, {"formal_degree", s.formal_degree}};
}

Json bound_json(const BoundReport& r) {
  Json inputs = Json::object();
  for (const auto& [k, v] : r.inputs) inputs[k] = v;
  return Json{{"name", r.name}, {"inputs", inputs},      {"bound", r.bound},
              {"compared", r.compared}, {"pass", r.pass}, {"trivial", r.trivial},
              {"failures", r.failures}};
}

Formula read_formula(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_formula(ss.str());
}

Weighting parse_weights(const std::string& text) {
  if (text.empty() || text == "unit") return Weighting::unit();
  if (text.rfind("index:", 0) == 0) return Weighting::by_index(static_cast<unsigned>(std::stoul(text.substr(6))));
  std::map<VarId, std::uint32_t> w;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw PreconditionError("bad weight '" + item + "': expected VAR:WEIGHT");
    const VarId var = static_cast<VarId>(std::stoul(item.substr(0, colon)));
    const auto weight = static_cast<std::uint32_t>(std::stoul(item.substr(colon + 1)));
    if (weight == 0) throw PreconditionError("weights must be positive");
    w[var] = weight;
  }
  return Weighting(std::move(w));
}

struct Construction {
  std::function<Formula(unsigned, unsigned)> build;
  std::function<Polynomial(unsigned, unsigned, RingMode)> oracle;
  std::function<std::vector<std::pair<std::string, bool>>(const Formula&, const PropertyReport&)> promised;
};

const std::map<std::string, Construction>& constructions() {
  static const std::map<std::string, Construction> table = {
      {"ben-or",
       {ben_or, [](unsigned n, unsigned k, RingMode m) { return oracle_S(n, k, m); },
        [](const Formula& f, const PropertyReport& r) {
          return std::vector<std::pair<std::string, bool>>{{"product_depth_1", analyze(f).product_depth == 1},
                                                           {"multilinear", r.multilinear}};
        }}},
      {"newton",
       {newton_homogeneous_formula, [](unsigned n, unsigned k, RingMode m) { return oracle_S(n, k, m); },
        [](const Formula&, const PropertyReport& r) {
          return std::vector<std::pair<std::string, bool>>{{"homogeneous", r.homogeneous}};
        }}},
      {"depth4",
       {depth4_formula, [](unsigned n, unsigned k, RingMode m) { return oracle_S(n, k, m); },
        [](const Formula& f, const PropertyReport& r) {
          return std::vector<std::pair<std::string, bool>>{{"homogeneous", r.homogeneous},
                                                           {"product_depth_le_2", analyze(f).product_depth <= 2}};
        }}},
      {"monotone",
       {monotone_dc, [](unsigned n, unsigned k, RingMode m) { return oracle_S(n, k, m); },
        [](const Formula&, const PropertyReport& r) {
          return std::vector<std::pair<std::string, bool>>{{"monotone", r.monotone},
                                                           {"multilinear", r.multilinear},
                                                           {"homogeneous", r.homogeneous},
                                                           {"syntactically_multilinear", r.syntactically_multilinear}};
        }}},
      {"power-sum",
       {power_sum_formula,
        [](unsigned n, unsigned k, RingMode m) {
          Polynomial p(m);
          for (VarId j = 1; j <= n; ++j) p = p + Polynomial::monomial(Monomial::variable(j, k), Rational(1), m);
          return p;
        },
        [](const Formula&, const PropertyReport& r) {
          return std::vector<std::pair<std::string, bool>>{{"homogeneous", r.homogeneous}};
        }}},
  };
  return table;
}

}  // namespace

Json newton_exponent_fit(unsigned k_max) {
  k_max = std::max(k_max, 3u);
  Json points = Json::array();
  // Normal equations for y = a u^2 + b u with u = log2 k.
  double suu = 0, su3 = 0, su4 = 0, syu = 0, syu2 = 0;
  for (unsigned k = 2; k <= k_max; ++k) {
    const std::uint64_t per_n = newton_homogeneous_formula(k, k).size() / k;
    const double u = std::log2(static_cast<double>(k)), y = std::log2(static_cast<double>(per_n));
    suu += u * u;
    su3 += u * u * u;
    su4 += u * u * u * u;
    syu += y * u;
    syu2 += y * u * u;
    points.push_back(Json{{"k", k}, {"size_per_n", per_n}});
  }
  const double det = su4 * suu - su3 * su3;
  const double a = (syu2 * suu - syu * su3) / det;
  const double b = (su4 * syu - su3 * syu2) / det;
  return Json{{"model", "log2(size/n) = a (log2 k)^2 + b log2 k"}, {"a", a}, {"b", b}, {"points", points}};
}

Outcome cmd_build(const std::string& name, const RunConfig& cfg) {
  const auto it = constructions().find(name);
  if (it == constructions().end()) throw PreconditionError("unknown construction '" + name + "'");
  const unsigned n = static_cast<unsigned>(n_of(cfg)), k = static_cast<unsigned>(k_of(cfg));
  const Formula f = it->second.build(n, k);
  const PropertyReport props = verify_properties(f);
  const bool oracle_match = expand(f, ring(cfg)) == it->second.oracle(n, k, ring(cfg));

  Outcome out;
  Json promised = Json::object();
  bool pass = oracle_match;
  for (const auto& [what, ok] : it->second.promised(f, props)) {
    promised[what] = ok;
    pass = pass && ok;
  }
  out.record = Json{{"command", "build"}, {"construction", name}, {"n", n}, {"k", k},
                    {"ring", cfg.noncommutative ? "noncommutative" : "commutative"}};
  out.record["stats"] = shape_json(f);
  out.record["properties"] = properties_json(props);
  out.record["promised"] = promised;
  out.record["oracle_match"] = oracle_match;
  if (name == "newton") out.record["size_exponent_fit"] = newton_exponent_fit(std::min(k, 10u));
  out.record["pass"] = pass;
  out.record["formula"] = serialize(f);
  out.exit = pass ? kOk : kFailure;
  return out;
}

Outcome cmd_verify(const std::string& path, const RunConfig& cfg) {
  const Formula f = read_formula(path);
  const Weighting w = parse_weights(cfg.weights);
  const PropertyReport r = verify_properties(f, &w);
  Outcome out;
  out.record = Json{{"command", "verify"}, {"file", path}};
  out.record["stats"] = shape_json(f);
  const Polynomial p = expand(f, ring(cfg));
  out.record["degree"] = p.degree() ? Json(*p.degree()) : Json(nullptr);
  out.record["monomials"] = p.monomial_count();
  out.record["properties"] = properties_json(r);
  Json first = Json::object();
  auto note = [&](const char* key, const std::optional<NodeId>& id) {
    if (id) first[key] = *id;
  };
  note("non_homogeneous", r.first_non_homogeneous);
  note("non_w_homogeneous", r.first_non_w_homogeneous);
  note("non_multilinear", r.first_non_multilinear);
  note("non_syntactically_multilinear", r.first_non_syntactically_multilinear);
  note("negative_constant", r.first_negative_constant);
  out.record["first_offending_node"] = first;
  return out;
}

namespace {

Json certificate_json(const DecompositionCertificate& cert) {
  Json parts = Json::array();
  for (const Factorization& part : cert.parts) {
    Json factors = Json::array();
    for (const Polynomial& f : part.factors) factors.push_back(to_string(f));
    parts.push_back(Json{{"degrees", part.degrees}, {"minvar", part.minvar}, {"factors", factors}});
  }
  Json j{{"kind", cert.kind == CertificateKind::balanced ? "balanced" : "form"},
         {"source_size", cert.source_size},
         {"minvar_sum", cert.minvar_sum},
         {"part_count", cert.parts.size()}};
  if (cert.kind == CertificateKind::form) {
    j["q"] = cert.q;
    j["l"] = to_string(cert.ell);
  }
  j["parts"] = parts;
  return j;
}

}  // namespace

Outcome cmd_decompose(const std::string& path, const RunConfig& cfg) {
  const Formula f = read_formula(path);
  Outcome out;
  out.record = Json{{"command", "decompose"}, {"file", path}, {"mode", cfg.mode}};
  BoundReport check;
  if (cfg.mode == "balanced") {
    const DecompositionCertificate cert = balanced_decompose(f);
    check = validate_balanced(cert, f);
    out.record["certificate"] = certificate_json(cert);
  } else if (cfg.mode == "form") {
    const DecompositionCertificate cert = form_decompose(f, cfg.q, cfg.d);
    check = validate_form(cert, f, cfg.q, cert.ell);
    out.record["certificate"] = certificate_json(cert);
  } else {
    throw PreconditionError("unknown mode '" + cfg.mode + "' (balanced or form)");
  }
  out.record["validation"] = bound_json(check);
  out.record["pass"] = check.pass;
  out.exit = check.pass ? kOk : kFailure;
  return out;
}

namespace {

std::vector<std::pair<unsigned, unsigned>> grid(const RunConfig& cfg, bool need_2k) {
  std::vector<std::pair<unsigned, unsigned>> cells;
  const Range ns = parse_range(cfg.n), ks = parse_range(cfg.k);
  if (ns.empty() || ks.empty()) return cells;
  for (unsigned n = ns.lo; n <= ns.hi; ++n) {
    for (unsigned k = std::max(1u, ks.lo); k <= ks.hi && k <= n; ++k) {
      if (!need_2k || n >= 2 * k) cells.emplace_back(n, k);
    }
  }
  return cells;
}

std::string lo_str(const Interval& v) { return v.lo_string(12); }

}  // namespace

Outcome cmd_bounds(const std::string& which, const RunConfig& cfg) {
  static const std::vector<std::string> kinds = {"compositions", "lower", "monotone", "g", "partition"};
  if (which != "all" && std::find(kinds.begin(), kinds.end(), which) == kinds.end()) {
    throw PreconditionError("unknown bound suite '" + which + "'");
  }
  auto wanted = [&](const std::string& k) { return which == "all" || which == k; };
  Json reports = Json::array();
  bool pass = true;
  auto add = [&](const BoundReport& r) {
    pass = pass && r.pass;
    reports.push_back(bound_json(r));
  };

  if (wanted("compositions")) {
    const SweepResult s = composition_sweep(static_cast<unsigned>(n_of(cfg)), static_cast<unsigned>(k_of(cfg)));
    BoundReport r;
    r.name = "composition_sweep";
    r.inputs = {{"n_max", std::to_string(n_of(cfg))}, {"k_max", std::to_string(k_of(cfg))}};
    r.compared = std::to_string(s.cases) + " cases";
    for (const std::string& f : s.first_failures) r.fail(f);
    if (s.failures > 0 && s.first_failures.empty()) r.fail(std::to_string(s.failures) + " failures");
    add(r);
  }
  if (wanted("lower")) {
    for (const auto& [n, k] : grid(cfg, true)) {
      BoundReport r;
      r.name = "lower_bound_size";
      r.inputs = {{"n", std::to_string(n)}, {"k", std::to_string(k)}};
      const LowerBound lb = lower_bound_size(n, k);
      r.bound = lb.certified.get_str();
      r.compared = lo_str(lb.value);
      r.trivial = lb.trivial;
      add(r);
      BoundReport rd;
      rd.name = "lower_bound_size_depth";
      rd.inputs = {{"n", std::to_string(n)}, {"k", std::to_string(k)}, {"d", std::to_string(cfg.d)}};
      const LowerBound ld = lower_bound_size_depth(n, k, cfg.d);
      rd.bound = ld.certified.get_str();
      rd.compared = lo_str(ld.value);
      rd.trivial = ld.trivial;
      add(rd);
    }
  }
  if (wanted("monotone")) {
    for (const auto& [n, k] : grid(cfg, false)) {
      if (k < 2) continue;
      BoundReport r;
      r.name = "monotone_upper_bound";
      r.inputs = {{"n", std::to_string(n)}, {"k", std::to_string(k)}};
      const BigInt ub = monotone_upper_bound(n, k).ceil_hi();
      const std::uint64_t size = monotone_dc(n, k).size();
      r.bound = ub.get_str();
      r.compared = std::to_string(size);
      if (BigInt(static_cast<unsigned long>(size)) > ub) r.fail("monotone_dc size exceeds the closed form");
      add(r);
    }
  }
  if (wanted("g")) {
    const std::uint64_t n = n_of(cfg);
    const unsigned k = static_cast<unsigned>(k_of(cfg));
    const Interval alpha = cfg.alpha.empty() ? proof_alpha(n, k) : Interval(parse_rational(cfg.alpha));
    add(g_recurrence_check(alpha, n, k));
  }
  if (wanted("partition")) {
    BoundReport r;
    r.name = "partition_vs_newton_terms";
    const unsigned k_max = static_cast<unsigned>(k_of(cfg));
    r.inputs = {{"k_max", std::to_string(k_max)}};
    for (unsigned k = 0; k <= k_max; ++k) {
      const BigInt p = partition_function(k);
      if (p != BigInt(static_cast<unsigned long>(newton_Z(k).monomial_count()))) r.fail("p(" + std::to_string(k) + ") != |Z_k|");
    }
    r.bound = partition_function(k_max).get_str();
    add(r);
  }

  Outcome out;
  out.record = Json{{"command", "bounds"}, {"suite", which}, {"pass", pass}, {"reports", reports}};
  out.exit = pass ? kOk : kFailure;
  return out;
}

Outcome cmd_table(const RunConfig& cfg) {
  const auto cells = grid(cfg, false);
  struct Row {
    Json j;
  };
  const auto rows = parallel_map<Row>(
      cells.size(),
      [&](std::size_t i) {
        const auto [n, k] = cells[i];
        Json r{{"n", n}, {"k", k}};
        r["depth3_size"] = ben_or(n, k).size();
        r["depth3_bound"] = 4ull * (n + 1) * (n + 1);
        r["homogeneous_size"] = newton_homogeneous_formula(n, k).size();
        r["homogeneous_multilinear_size"] = monotone_dc(n, k).size();
        r["monotone_bound"] = k >= 2 ? Json(monotone_upper_bound(n, k).ceil_hi().get_str()) : Json(std::to_string(n));
        r["depth4_size"] = depth4_formula(n, k).size();
        r["depth4_bound"] = BigInt(partition_function(k) * (k * n + 1)).get_str();
        if (n >= 2 * k) {
          const LowerBound lb = lower_bound_size(n, k);
          const LowerBound ld = lower_bound_size_depth(n, k, cfg.d);
          r["lower_bound"] = lb.certified.get_str();
          r["lower_bound_trivial"] = lb.trivial;
          r["depth_d_lower_bound"] = ld.certified.get_str();
          r["depth_d_lower_bound_trivial"] = ld.trivial;
        } else {
          r["lower_bound"] = nullptr;
          r["lower_bound_trivial"] = nullptr;
          r["depth_d_lower_bound"] = nullptr;
          r["depth_d_lower_bound_trivial"] = nullptr;
        }
        return Row{r};
      },
      cfg.threads);
  Json out_rows = Json::array();
  for (const Row& r : rows) out_rows.push_back(r.j);
  Outcome out;
  out.record = Json{{"command", "table"}, {"d", cfg.d}, {"rows", out_rows}};
  return out;
}

// ---------------------------------------------------------------------------
// selftest

namespace {

struct Section {
  explicit Section(std::string n) : name(std::move(n)) {}

  std::string name;
  std::uint64_t cases = 0;
  std::uint64_t failed = 0;
  std::vector<std::string> failures;  // the first few

  void check(bool ok, const std::string& what) {
    ++cases;
    if (ok) return;
    ++failed;
    if (failures.size() < 5) failures.push_back(what);
  }
  bool pass() const { return failed == 0; }
  Json json() const {
    return Json{{"name", name}, {"cases", cases}, {"failed", failed}, {"pass", pass()}, {"failures", failures}};
  }
};

using Checks = std::vector<std::pair<bool, std::string>>;

// Runs independent checks on the pool and folds them in task order.
void run_tasks(Section& s, std::size_t count, const std::function<Checks(std::size_t)>& task, unsigned threads) {
  const auto results = parallel_map<Checks>(count, task, threads);
  for (const Checks& r : results) {
    for (const auto& [ok, what] : r) s.check(ok, what);
  }
}

std::string nk(unsigned n, unsigned k) { return "n=" + std::to_string(n) + " k=" + std::to_string(k); }

Section constructions_section(unsigned threads) {
  Section s("constructions");
  std::vector<std::pair<unsigned, unsigned>> cells;
  for (unsigned n = 1; n <= 10; ++n) {
    for (unsigned k = 1; k <= n; ++k) cells.emplace_back(n, k);
  }
  run_tasks(
      s, cells.size(),
      [&](std::size_t i) {
        const auto [n, k] = cells[i];
        const Polynomial target = oracle_S(n, k);
        Checks c;
        const Formula bo = ben_or(n, k), nh = newton_homogeneous_formula(n, k), d4 = depth4_formula(n, k),
                      dc = monotone_dc(n, k);
        c.emplace_back(expand(bo) == target, "ben_or oracle " + nk(n, k));
        c.emplace_back(expand(nh) == target, "newton oracle " + nk(n, k));
        c.emplace_back(expand(d4) == target, "depth4 oracle " + nk(n, k));
        c.emplace_back(expand(dc) == target, "monotone oracle " + nk(n, k));
        c.emplace_back(analyze(bo).product_depth == 1 && verify_properties(bo).multilinear, "ben_or shape " + nk(n, k));
        c.emplace_back(verify_properties(nh).homogeneous, "newton homogeneity " + nk(n, k));
        c.emplace_back(verify_properties(d4).homogeneous && analyze(d4).product_depth <= 2, "depth4 shape " + nk(n, k));
        const PropertyReport m = verify_properties(dc);
        c.emplace_back(m.monotone && m.multilinear && m.homogeneous, "monotone properties " + nk(n, k));
        return c;
      },
      threads);
  return s;
}

Section noncommutative_section() {
  Section s("noncommutative");
  for (unsigned n = 1; n <= 8; ++n) {
    for (unsigned k = 1; k <= n; ++k) {
      const Polynomial target = oracle_S(n, k, RingMode::noncommutative);
      s.check(expand(ben_or(n, k), RingMode::noncommutative) == target, "ben_or " + nk(n, k));
      s.check(expand(monotone_dc(n, k), RingMode::noncommutative) == target, "monotone " + nk(n, k));
    }
  }
  return s;
}

Section sizes_section() {
  Section s("sizes");
  for (unsigned n = 1; n <= 64; ++n) s.check(ben_or(n, n / 2).size() <= 4ull * (n + 1) * (n + 1), "ben_or n=" + std::to_string(n));
  for (unsigned k = 1; k <= 10; ++k) {
    for (unsigned n = k; n <= 64; ++n) {
      const BigInt bound = partition_function(k) * (k * n + 1);
      s.check(BigInt(static_cast<unsigned long>(depth4_formula(n, k).size())) <= bound, "depth4 " + nk(n, k));
    }
  }
  for (unsigned k = 2; k <= 8; ++k) {
    for (unsigned n = 2 * k; n <= 64; ++n) {
      s.check(BigInt(static_cast<unsigned long>(monotone_dc(n, k).size())) <= monotone_upper_bound(n, k).ceil_hi(),
              "monotone " + nk(n, k));
    }
  }
  for (unsigned k = 2; k <= 4; ++k) {
    for (unsigned n : {8u, 16u, 32u}) {
      s.check(newton_homogeneous_formula(2 * n, k).size() == 2 * newton_homogeneous_formula(n, k).size(), "newton ratio " + nk(n, k));
    }
  }
  return s;
}

Section compositions_section() {
  Section s("compositions");
  const SweepResult r = composition_sweep(14, 7);
  s.cases = r.cases;
  s.failed = r.failures;
  s.failures = r.first_failures;
  return s;
}

Section balanced_section(std::uint64_t seed, unsigned threads) {
  Section s("balanced_corpus");
  corpus::Rng rng(seed);
  std::vector<Formula> items;
  for (int i = 0; i < 200; ++i) items.push_back(corpus::balanced_corpus_item(rng));
  run_tasks(
      s, items.size(),
      [&](std::size_t i) {
        const Formula& phi = items[i];
        Checks c;
        const std::string tag = "item " + std::to_string(i);
        const DecompositionCertificate cert = balanced_decompose(phi);
        c.emplace_back(validate_balanced(cert, phi).pass, tag + " certificate");
        const Polynomial f = expand(phi);
        if (!f.is_zero()) {
          const unsigned k = *f.degree();
          const auto vars = analyze(phi).variables;
          const unsigned n = std::max<unsigned>(vars.back(), 2 * k);
          const Interval bound = formula_monomial_bound(phi.size(), k, n);
          c.emplace_back(!bound.hi_lt(BigInt(static_cast<unsigned long>(f.monomial_count()))), tag + " monomial bound");
        }
        return c;
      },
      threads);
  return s;
}

Section bounded_depth_section(std::uint64_t seed, unsigned threads) {
  Section s("bounded_depth_corpus");
  struct Band {
    unsigned d, k_lo, k_hi, count;
  };
  corpus::Rng rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::vector<std::pair<unsigned, Formula>> items;
  for (const Band band : {Band{1, 8, 12, 40}, Band{2, 17, 34, 40}, Band{3, 65, 70, 12}}) {
    for (unsigned i = 0; i < band.count; ++i) {
      items.emplace_back(band.d, corpus::bounded_depth(rng, band.k_lo + i % (band.k_hi - band.k_lo + 1), band.d));
    }
  }
  run_tasks(
      s, items.size(),
      [&](std::size_t i) {
        const auto& [d, phi] = items[i];
        Checks c;
        const std::string tag = "item " + std::to_string(i) + " d=" + std::to_string(d);
        const DecompositionCertificate cert = form_decompose(phi, 2, d);
        c.emplace_back(validate_form(cert, phi, 2, cert.ell).pass, tag + " certificate");
        const Polynomial f = expand(phi);
        const unsigned k = *f.degree();
        const unsigned n = std::max<unsigned>(analyze(phi).variables.back(), 2 * k);
        if (const_depth_hypothesis(k, d)) {
          c.emplace_back(!const_depth_monomial_bound(phi.size(), k, n, d).hi_lt(BigInt(static_cast<unsigned long>(f.monomial_count()))),
                         tag + " const-depth bound");
        }
        return c;
      },
      threads);
  return s;
}

Section frontier_section(std::uint64_t seed, unsigned threads) {
  Section s("frontier_identity");
  corpus::Rng rng(seed ^ 0x51ed270b27a3f1c5ull);
  std::vector<std::pair<Circuit, unsigned>> circuits;
  for (unsigned k = 2; k <= 8; ++k) circuits.emplace_back(newton_circuit(k), k);
  for (int i = 0; i < 50; ++i) {
    const unsigned d = static_cast<unsigned>(std::uniform_int_distribution<unsigned>(2, 8)(rng));
    const unsigned gates = static_cast<unsigned>(std::uniform_int_distribution<unsigned>(6, 30)(rng));
    circuits.emplace_back(corpus::w_homogeneous_circuit(rng, d, d, gates), d);
  }
  run_tasks(
      s, circuits.size(),
      [&](std::size_t i) {
        const auto& [c, k] = circuits[i];
        const Weighting w = Weighting::by_index(k);
        const std::string tag = "circuit " + std::to_string(i);
        Checks out;
        const FrontierIdentity id = frontier_identity(c, w);
        out.emplace_back(id.circuit == id.decomposed, tag + " identity");
        const Formula f = circuit_to_formula(c, w);
        out.emplace_back(expand(f) == id.circuit, tag + " circuit_to_formula");
        out.emplace_back(within_balance_bound(f.size(), c.node_count(), k), tag + " size bound");
        return out;
      },
      threads);
  return s;
}

Section g_section() {
  Section s("g_recurrence");
  for (std::uint64_t n = 2; n <= 1024; n *= 2) {
    for (unsigned k = 2; k <= 10; ++k) s.check(g_recurrence_check(proof_alpha(n, k), n, k).pass, "n=" + std::to_string(n) + " k=" + std::to_string(k));
  }
  return s;
}

Section partition_section() {
  Section s("partition");
  for (unsigned k = 0; k <= 16; ++k) {
    s.check(partition_function(k) == BigInt(static_cast<unsigned long>(newton_Z(k).monomial_count())), "k=" + std::to_string(k));
  }
  return s;
}

Section round_trip_section(std::uint64_t seed) {
  Section s("round_trip");
  corpus::Rng rng(seed ^ 0x2545f4914f6cdd1dull);
  for (int i = 0; i < 500; ++i) {
    const Formula f = corpus::general(rng);
    const std::string text = serialize(f);
    const Formula back = parse_formula(text);
    s.check(structurally_equal(f, back) && serialize(back) == text, "formula " + std::to_string(i));
  }
  return s;
}

}  // namespace

Outcome cmd_selftest(const RunConfig& cfg) {
  const std::uint64_t seed = cfg.seed;
  std::vector<Section> sections;
  log(LogLevel::info, "selftest: constructions");
  sections.push_back(constructions_section(cfg.threads));
  sections.push_back(noncommutative_section());
  log(LogLevel::info, "selftest: sizes");
  sections.push_back(sizes_section());
  sections.push_back(compositions_section());
  log(LogLevel::info, "selftest: decompositions");
  sections.push_back(balanced_section(seed, cfg.threads));
  sections.push_back(bounded_depth_section(seed, cfg.threads));
  log(LogLevel::info, "selftest: frontier");
  sections.push_back(frontier_section(seed, cfg.threads));
  sections.push_back(g_section());
  sections.push_back(partition_section());
  sections.push_back(round_trip_section(seed));

  bool pass = true;
  Json list = Json::array();
  for (const Section& s : sections) {
    pass = pass && s.pass();
    list.push_back(s.json());
  }
  Outcome out;
  out.record = Json{{"command", "selftest"}, {"seed", seed}, {"pass", pass}, {"sections", list}};
  out.exit = pass ? kOk : kFailure;
  return out;
}

}  // namespace esym::cli
