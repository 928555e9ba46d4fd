#include "esym/bounds.hpp"

#include <numeric>

#include "esym/errors.hpp"

namespace esym {

namespace {

Interval rat(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return Interval(r);
}

// k^(-c log k + 3/2)
Interval balanced_factor(unsigned k) {
  const Interval kk(static_cast<long>(k));
  const Interval e = rat(3, 2) - BoundConstants{}.c_balanced() * kk.log2();
  return kk.pow(e);
}

void require_n_ge_2k(unsigned n, unsigned k) {
  if (static_cast<std::uint64_t>(n) < 2ull * k) {
    throw PreconditionError("hypothesis n >= 2k violated (n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")");
  }
}

Interval binom(unsigned n, unsigned k) { return Interval(binomial(n, k)); }

Interval from_u64(std::uint64_t v) { return Interval(BigInt(std::to_string(v))); }

}  // namespace

Interval BoundConstants::c_balanced() const { return Interval(1L) / (Interval(8L) * Interval(3L).log2()); }

BoundReport composition_check(const std::vector<unsigned>& n_parts, const std::vector<unsigned>& k_parts) {
  if (n_parts.size() != k_parts.size() || k_parts.empty()) {
    throw PreconditionError("the composition inequality needs equally many n_i and k_i, at least one of each");
  }
  unsigned n = 0, k = 0;
  BigInt lhs = 1, prod_k = 1;
  for (std::size_t i = 0; i < k_parts.size(); ++i) {
    if (k_parts[i] == 0) throw PreconditionError("hypothesis k_i >= 1 violated at part " + std::to_string(i + 1));
    n += n_parts[i];
    k += k_parts[i];
    lhs *= binomial(n_parts[i], k_parts[i]);
    prod_k *= k_parts[i];
  }
  require_n_ge_2k(n, k);

  BoundReport r;
  r.name = "compositions";
  auto join = [](const std::vector<unsigned>& v) {
    std::string s;
    for (unsigned x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
    return s;
  };
  r.inputs = {{"n_parts", join(n_parts)}, {"k_parts", join(k_parts)}, {"n", std::to_string(n)}, {"k", std::to_string(k)}};
  const BigInt c = binomial(n, k);
  const Interval rhs = Interval(3L) * (Interval(static_cast<long>(k)) / Interval(prod_k)).sqrt() * Interval(c);
  r.bound = rhs.hi_string();
  r.compared = lhs.get_str();
  if (lhs * lhs * prod_k > 9 * BigInt(k) * c * c) r.fail("product of binomials exceeds 3 k^(1/2) (k_1...k_p)^(-1/2) C(n,k)");
  return r;
}

SweepResult composition_sweep(unsigned n_max, unsigned k_max) {
  SweepResult out;
  std::vector<std::vector<std::uint64_t>> C(n_max + 1, std::vector<std::uint64_t>(n_max + 1, 0));
  for (unsigned a = 0; a <= n_max; ++a) {
    C[a][0] = 1;
    for (unsigned b = 1; b <= a; ++b) C[a][b] = C[a - 1][b - 1] + (b <= a - 1 ? C[a - 1][b] : 0);
  }

  std::vector<unsigned> ks, ns;
  auto record_failure = [&](unsigned n, unsigned k) {
    ++out.failures;
    if (out.first_failures.size() < 5) {
      std::string s = "n=" + std::to_string(n) + " k=" + std::to_string(k) + " parts:";
      for (std::size_t i = 0; i < ks.size(); ++i) s += " (" + std::to_string(ns[i]) + "," + std::to_string(ks[i]) + ")";
      out.first_failures.push_back(s);
    }
  };

  // Distribute `left` of n over the remaining parts, tracking the running product.
  auto each_n = [&](auto&& self, unsigned n, unsigned k, std::uint64_t prod_k, unsigned left, std::uint64_t lhs) -> void {
    const std::size_t i = ns.size();
    if (i + 1 == ks.size()) {
      ns.push_back(left);
      const std::uint64_t full = lhs * C[left][ks[i]];
      ++out.cases;
      if (full * full * prod_k > 9ull * k * C[n][k] * C[n][k]) record_failure(n, k);
      ns.pop_back();
      return;
    }
    for (unsigned take = 0; take <= left; ++take) {
      ns.push_back(take);
      self(self, n, k, prod_k, left - take, take >= ks[i] ? lhs * C[take][ks[i]] : 0);
      ns.pop_back();
    }
  };
  auto each_k = [&](auto&& self, unsigned k, unsigned left) -> void {
    if (left == 0) {
      const std::uint64_t prod_k = std::accumulate(ks.begin(), ks.end(), std::uint64_t{1}, std::multiplies<>());
      for (unsigned n = 2 * k; n <= n_max; ++n) each_n(each_n, n, k, prod_k, n, 1);
      return;
    }
    for (unsigned part = 1; part <= left; ++part) {
      ks.push_back(part);
      self(self, k, left - part);
      ks.pop_back();
    }
  };
  for (unsigned k = 1; k <= k_max && 2 * k <= n_max; ++k) each_k(each_k, k, k);
  return out;
}

Interval balanced_monomial_bound(unsigned k, unsigned n, std::uint64_t minvar) {
  if (k == 0) throw PreconditionError("hypothesis k >= 1 violated");
  require_n_ge_2k(n, k);
  return Interval(3L) * balanced_factor(k) * binom(n, k) * from_u64(minvar) / Interval(static_cast<long>(n));
}

Interval formula_monomial_bound(std::uint64_t s, unsigned k, unsigned n) {
  if (s == 0) throw PreconditionError("hypothesis s >= 1 violated");
  return balanced_monomial_bound(k, n, s);
}

Interval formed_monomial_bound(unsigned k, unsigned n, unsigned p, const Rational& l, std::uint64_t minvar) {
  require_n_ge_2k(n, k);
  if (p < 2) throw PreconditionError("hypothesis p >= 2 violated");
  if (l < 2) throw PreconditionError("hypothesis l >= 2 violated (l=" + to_string(l) + ")");
  const Interval kk(static_cast<long>(k));
  const Interval k32 = kk.pow(rat(3, 2));
  const Interval lp = Interval(l).pow(rat(-static_cast<long>(p - 1), 2));
  return Interval(3L) * k32 * lp * binom(n, k) * from_u64(minvar) / Interval(static_cast<long>(n));
}

bool const_depth_hypothesis(unsigned k, unsigned d) {
  if (d == 0) return false;
  BigInt eight_d;
  mpz_ui_pow_ui(eight_d.get_mpz_t(), 8, d);
  return BigInt(k) >= eight_d;
}

Interval const_depth_monomial_bound(std::uint64_t s, unsigned k, unsigned n, unsigned d) {
  require_n_ge_2k(n, k);
  if (!const_depth_hypothesis(k, d)) throw PreconditionError("hypothesis k^(1/d) >= 8 violated");
  const Interval kk(static_cast<long>(k));
  const Interval root = kk.pow(Interval(Rational(1, d)));
  const Interval decay = (Interval(0L) - root / Interval(8L)).exp2();
  return Interval(6L) * kk.pow(rat(3, 2)) * decay * binom(n, k) * from_u64(s) / Interval(static_cast<long>(n));
}

namespace {

LowerBound certify(const Interval& raw, unsigned n, bool hypothesis_met) {
  LowerBound out{raw, BigInt(n), true};
  if (hypothesis_met && raw.lo_ge(BigInt(n))) {
    out.certified = raw.floor_lo();
    out.trivial = false;
  }
  return out;
}

}  // namespace

LowerBound lower_bound_size(unsigned n, unsigned k) {
  if (k == 0) throw PreconditionError("hypothesis k >= 1 violated");
  require_n_ge_2k(n, k);
  const Interval kk(static_cast<long>(k));
  const Interval e = BoundConstants{}.c_balanced() * kk.log2() - rat(3, 2);
  return certify(Interval(static_cast<long>(n)) * kk.pow(e) / Interval(3L), n, true);
}

LowerBound lower_bound_size_depth(unsigned n, unsigned k, unsigned d) {
  if (k == 0) throw PreconditionError("hypothesis k >= 1 violated");
  if (d == 0) throw PreconditionError("hypothesis d >= 1 violated");
  require_n_ge_2k(n, k);
  const Interval kk(static_cast<long>(k));
  const Interval growth = (kk.pow(Interval(Rational(1, d))) / Interval(8L)).exp2();
  const Interval raw = Interval(static_cast<long>(n)) * growth / (Interval(6L) * kk.pow(rat(3, 2)));
  return certify(raw, n, const_depth_hypothesis(k, d));
}

Interval monotone_upper_bound(unsigned n, unsigned k) {
  if (k < 2) throw PreconditionError("closed form requires k >= 2");
  if (n == 0) throw PreconditionError("closed form requires n >= 1");
  const Interval nn(static_cast<long>(n));
  const Interval km1(static_cast<long>(k - 1));
  const Interval log2n = (Interval(2L) * nn).log2();
  const Interval one(1L);
  const Interval middle = nn.pow((km1 / log2n + one).log2());
  const Interval last = (log2n / km1 + one).pow(km1);
  return Interval(2L) * nn * middle * last;
}

Interval g_function(const Interval& alpha, std::uint64_t n, unsigned k) {
  const Interval one(1L);
  const Interval beta = one / (one - (Interval(0L) - alpha).exp2());
  return from_u64(n).pow(one + alpha) * beta.pow(Interval(static_cast<long>(k) - 1));
}

Interval proof_alpha(std::uint64_t n, unsigned k) {
  if (n < 2 || k < 2) throw PreconditionError("alpha = log(1 + (k-1)/log n) needs n >= 2 and k >= 2");
  const Interval z = Interval(static_cast<long>(k - 1)) / from_u64(n).log2();
  return (Interval(1L) + z).log2();
}

BoundReport g_recurrence_check(const Interval& alpha, std::uint64_t n_max, unsigned k_max) {
  if (alpha.lo_double() <= 0) throw PreconditionError("alpha must be positive");
  BoundReport r;
  r.name = "g_recurrence";
  r.inputs = {{"alpha", alpha.lo_string(17)}, {"n_max", std::to_string(n_max)}, {"k_max", std::to_string(k_max)}};
  std::uint64_t checks = 0;
  for (std::uint64_t m = 1; m <= n_max; m *= 2) {
    ++checks;
    if (!g_function(alpha, m, 1).lo_ge(BigInt(std::to_string(m)))) r.fail("g(" + std::to_string(m) + ",1) < " + std::to_string(m));
    if (2 * m > n_max) continue;
    Interval sum(0L);
    for (unsigned j = 1; j <= k_max; ++j) {
      sum = sum + g_function(alpha, m, j);
      ++checks;
      if (!g_function(alpha, 2 * m, j).lo_ge(Interval(2L) * sum)) {
        r.fail("g(" + std::to_string(2 * m) + "," + std::to_string(j) + ") < 2 sum_{i<=" + std::to_string(j) + "} g(" +
               std::to_string(m) + ",i)");
      }
    }
  }
  r.compared = std::to_string(checks) + " inequalities";
  return r;
}

BigInt partition_function(unsigned k) {
  std::vector<BigInt> p(k + 1);
  p[0] = 1;
  for (unsigned m = 1; m <= k; ++m) {
    BigInt total = 0;
    for (unsigned j = 1;; ++j) {
      const unsigned long g1 = j * (3ul * j - 1) / 2, g2 = j * (3ul * j + 1) / 2;
      if (g1 > m) break;
      const BigInt term = p[m - g1] + (g2 <= m ? p[m - g2] : BigInt(0));
      if (j % 2 == 1) {
        total += term;
      } else {
        total -= term;
      }
    }
    p[m] = total;
  }
  return p[k];
}

BigInt partition_function_dp(unsigned k) {
  std::vector<BigInt> ways(k + 1, 0);
  ways[0] = 1;
  for (unsigned part = 1; part <= k; ++part) {
    for (unsigned s = part; s <= k; ++s) ways[s] += ways[s - part];
  }
  return ways[k];
}

}  // namespace esym
