#include "esym/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "esym/errors.hpp"

namespace esym {

std::string_view to_string(RingMode mode) {
  return mode == RingMode::commutative ? "commutative" : "noncommutative";
}

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::variable(VarId var, std::uint32_t exp) {
  Monomial m;
  if (exp > 0) m.powers_.push_back({var, exp});
  return m;
}

Monomial Monomial::from_powers(std::vector<Power> powers, RingMode mode) {
  if (mode == RingMode::commutative) {
    std::sort(powers.begin(), powers.end(), [](const Power& a, const Power& b) { return a.var < b.var; });
  }
  Monomial m;
  for (const Power& p : powers) {
    if (p.exp == 0) continue;
    if (!m.powers_.empty() && m.powers_.back().var == p.var) {
      m.powers_.back().exp += p.exp;
    } else {
      m.powers_.push_back(p);
    }
  }
  return m;
}

std::uint32_t Monomial::degree() const {
  std::uint32_t d = 0;
  for (const Power& p : powers_) d += p.exp;
  return d;
}

std::uint32_t Monomial::degree_in(VarId var) const {
  std::uint32_t d = 0;
  for (const Power& p : powers_) {
    if (p.var == var) d += p.exp;
  }
  return d;
}

bool Monomial::is_multilinear() const {
  for (const Power& p : powers_) {
    if (p.exp > 1) return false;
  }
  // Ordered words may revisit a variable in a later run.
  std::vector<VarId> vars;
  vars.reserve(powers_.size());
  for (const Power& p : powers_) vars.push_back(p.var);
  std::sort(vars.begin(), vars.end());
  return std::adjacent_find(vars.begin(), vars.end()) == vars.end();
}

std::vector<VarId> Monomial::variables() const {
  std::vector<VarId> vars;
  vars.reserve(powers_.size());
  for (const Power& p : powers_) vars.push_back(p.var);
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

Monomial Monomial::multiply(const Monomial& rhs, RingMode mode) const {
  Monomial out;
  if (mode == RingMode::noncommutative) {
    out.powers_.reserve(powers_.size() + rhs.powers_.size());
    out.powers_ = powers_;
    for (const Power& p : rhs.powers_) {
      if (!out.powers_.empty() && out.powers_.back().var == p.var) {
        out.powers_.back().exp += p.exp;
      } else {
        out.powers_.push_back(p);
      }
    }
    return out;
  }
  out.powers_.reserve(powers_.size() + rhs.powers_.size());
  auto a = powers_.begin();
  auto b = rhs.powers_.begin();
  while (a != powers_.end() || b != rhs.powers_.end()) {
    if (b == rhs.powers_.end() || (a != powers_.end() && a->var < b->var)) {
      out.powers_.push_back(*a++);
    } else if (a == powers_.end() || b->var < a->var) {
      out.powers_.push_back(*b++);
    } else {
      out.powers_.push_back({a->var, a->exp + b->exp});
      ++a;
      ++b;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Weighting

Weighting::Weighting(std::map<VarId, std::uint32_t> weights, std::optional<std::uint32_t> default_weight)
    : weights_(std::move(weights)), default_weight_(default_weight) {
  for (const auto& [var, w] : weights_) {
    if (w == 0) throw PreconditionError("weight of x" + std::to_string(var) + " must be at least 1");
  }
  if (default_weight_ && *default_weight_ == 0) throw PreconditionError("default weight must be at least 1");
}

Weighting Weighting::unit() { return Weighting({}, 1u); }

Weighting Weighting::by_index(unsigned k) {
  std::map<VarId, std::uint32_t> weights;
  for (unsigned i = 1; i <= k; ++i) weights[i] = i;
  return Weighting(std::move(weights));
}

bool Weighting::covers(VarId var) const { return default_weight_.has_value() || weights_.count(var) > 0; }

std::uint32_t Weighting::weight(VarId var) const {
  if (auto it = weights_.find(var); it != weights_.end()) return it->second;
  if (default_weight_) return *default_weight_;
  throw MissingVariableError("no weight for variable", var);
}

std::uint64_t Weighting::degree(const Monomial& monomial) const {
  std::uint64_t d = 0;
  for (const Power& p : monomial.powers()) d += std::uint64_t{weight(p.var)} * p.exp;
  return d;
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial Polynomial::constant(const Rational& value, RingMode mode) {
  Polynomial p(mode);
  p.add_term(Monomial{}, value);
  return p;
}

Polynomial Polynomial::variable(VarId var, RingMode mode) {
  Polynomial p(mode);
  p.add_term(Monomial::variable(var), Rational(1));
  return p;
}

Polynomial Polynomial::monomial(const Monomial& m, const Rational& coefficient, RingMode mode) {
  Polynomial p(mode);
  p.add_term(m, coefficient);
  return p;
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Polynomial::require_same_mode(const Polynomial& rhs) const {
  if (mode_ != rhs.mode_) {
    throw ModeMismatchError(std::string("ring mode mismatch: ") + std::string(to_string(mode_)) + " vs " +
                            std::string(to_string(rhs.mode_)));
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  require_same_mode(rhs);
  for (const auto& [m, c] : rhs.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  require_same_mode(rhs);
  for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
  return *this;
}

Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs) {
  lhs.require_same_mode(rhs);
  Polynomial out(lhs.mode_);
  for (const auto& [ma, ca] : lhs.terms_) {
    for (const auto& [mb, cb] : rhs.terms_) {
      out.add_term(ma.multiply(mb, lhs.mode_), ca * cb);
    }
  }
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& rhs) {
  *this = *this * rhs;
  return *this;
}

Polynomial Polynomial::operator-() const { return scaled(Rational(-1)); }

Polynomial Polynomial::scaled(const Rational& c) const {
  Polynomial out(mode_);
  if (c == 0) return out;
  for (const auto& [m, coeff] : terms_) out.terms_.emplace_hint(out.terms_.end(), m, coeff * c);
  return out;
}

Polynomial scale(const Polynomial& p, const Rational& c) { return p.scaled(c); }

std::optional<std::uint32_t> Polynomial::degree() const {
  if (terms_.empty()) return std::nullopt;
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

std::vector<VarId> Polynomial::variables() const {
  std::set<VarId> vars;
  for (const auto& [m, c] : terms_) {
    for (const Power& p : m.powers()) vars.insert(p.var);
  }
  return {vars.begin(), vars.end()};
}

Rational Polynomial::evaluate(const std::map<VarId, Rational>& point) const {
  Rational total(0);
  for (const auto& [m, c] : terms_) {
    Rational value = c;
    for (const Power& p : m.powers()) {
      auto it = point.find(p.var);
      if (it == point.end()) throw MissingVariableError("evaluation point misses variable", p.var);
      Rational power;
      mpz_pow_ui(mpq_numref(power.get_mpq_t()), mpq_numref(it->second.get_mpq_t()), p.exp);
      mpz_pow_ui(mpq_denref(power.get_mpq_t()), mpq_denref(it->second.get_mpq_t()), p.exp);
      value *= power;
    }
    total += value;
  }
  return total;
}

Polynomial compose(const Polynomial& f, const std::map<VarId, Polynomial>& substitutes) {
  if (substitutes.empty()) return f;
  const RingMode mode = substitutes.begin()->second.mode();
  Polynomial out(mode);
  std::map<std::pair<VarId, std::uint32_t>, Polynomial> powers;
  auto power_of = [&](VarId var, std::uint32_t exp) -> const Polynomial& {
    auto key = std::make_pair(var, exp);
    if (auto it = powers.find(key); it != powers.end()) return it->second;
    auto sub = substitutes.find(var);
    if (sub == substitutes.end()) throw MissingVariableError("no substitute for variable", var);
    Polynomial acc = Polynomial::constant(Rational(1), mode);
    for (std::uint32_t i = 0; i < exp; ++i) acc = acc * sub->second;
    return powers.emplace(key, std::move(acc)).first->second;
  };
  for (const auto& [m, c] : f.terms()) {
    Polynomial term = Polynomial::constant(c, mode);
    for (const Power& p : m.powers()) term = term * power_of(p.var, p.exp);
    out += term;
  }
  return out;
}

namespace {

// Graded lexicographic order with x1 > x2 > ...; a term order, so leading
// terms multiply.
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    const auto da = a.degree();
    const auto db = b.degree();
    if (da != db) return da > db;
    auto pa = a.powers();
    auto pb = b.powers();
    std::size_t i = 0;
    for (; i < pa.size() && i < pb.size(); ++i) {
      if (pa[i].var != pb[i].var) return pa[i].var < pb[i].var;
      if (pa[i].exp != pb[i].exp) return pa[i].exp > pb[i].exp;
    }
    return i < pa.size() && i == pb.size();
  }
};

// Exponents of `a` divided by `b`, or nullopt when b does not divide a.
std::optional<Monomial> monomial_quotient(const Monomial& a, const Monomial& b) {
  std::vector<Power> out;
  auto pa = a.powers();
  auto pb = b.powers();
  std::size_t j = 0;
  for (const Power& p : pa) {
    if (j < pb.size() && pb[j].var < p.var) return std::nullopt;
    if (j < pb.size() && pb[j].var == p.var) {
      if (pb[j].exp > p.exp) return std::nullopt;
      if (p.exp > pb[j].exp) out.push_back({p.var, p.exp - pb[j].exp});
      ++j;
    } else {
      out.push_back(p);
    }
  }
  if (j != pb.size()) return std::nullopt;
  return Monomial::from_powers(std::move(out), RingMode::commutative);
}

}  // namespace

std::optional<Polynomial> divide_exact(const Polynomial& num, const Polynomial& den) {
  if (num.mode() != RingMode::commutative || den.mode() != RingMode::commutative) {
    throw PreconditionError("exact division is only defined for commutative polynomials");
  }
  if (den.is_zero()) throw PreconditionError("division by the zero polynomial");

  std::map<Monomial, Rational, GrlexGreater> rem(num.terms().begin(), num.terms().end());
  std::map<Monomial, Rational, GrlexGreater> divisor(den.terms().begin(), den.terms().end());
  const auto& [lead_m, lead_c] = *divisor.begin();

  Polynomial quotient;
  while (!rem.empty()) {
    const auto [m, c] = *rem.begin();
    auto qm = monomial_quotient(m, lead_m);
    if (!qm) return std::nullopt;
    const Rational qc = c / lead_c;
    quotient.add_term(*qm, qc);
    for (const auto& [dm, dc] : divisor) {
      Monomial prod = qm->multiply(dm, RingMode::commutative);
      auto [it, inserted] = rem.try_emplace(std::move(prod), -qc * dc);
      if (!inserted) {
        it->second -= qc * dc;
        if (it->second == 0) rem.erase(it);
      }
    }
  }
  return quotient;
}

PolyProps poly_props(const Polynomial& f, const Weighting* w) {
  PolyProps props;
  props.monomial_count = f.monomial_count();
  props.degree = f.degree();
  for (const auto& [m, c] : f.terms()) {
    if (props.degree && m.degree() != *props.degree) props.is_homogeneous = false;
    if (!m.is_multilinear()) props.is_multilinear = false;
    if (w) props.w_degree_set.insert(w->degree(m));
  }
  return props;
}

bool is_w_homogeneous(const Polynomial& f, const Weighting& w) {
  std::optional<std::uint64_t> seen;
  for (const auto& [m, c] : f.terms()) {
    const auto d = w.degree(m);
    if (seen && *seen != d) return false;
    seen = d;
  }
  return true;
}

std::optional<std::uint64_t> w_degree(const Polynomial& f, const Weighting& w) {
  std::optional<std::uint64_t> d;
  for (const auto& [m, c] : f.terms()) d = std::max(d.value_or(0), w.degree(m));
  return d;
}

bool weakly_equivalent(const Polynomial& f, const Polynomial& g) {
  if (f.mode() != g.mode()) throw ModeMismatchError("weak equivalence across ring modes");
  if (f.monomial_count() != g.monomial_count()) return false;
  auto a = f.terms().begin();
  auto b = g.terms().begin();
  for (; a != f.terms().end(); ++a, ++b) {
    if (!(a->first == b->first)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Oracles

Polynomial oracle_S(unsigned n, unsigned k, RingMode mode) {
  Polynomial out(mode);
  if (k > n) return out;
  std::vector<Power> subset;
  std::function<void(VarId)> enumerate = [&](VarId next) {
    if (subset.size() == k) {
      out.add_term(Monomial::from_powers(subset, mode), Rational(1));
      return;
    }
    for (VarId v = next; v + (k - subset.size()) <= n + 1; ++v) {
      subset.push_back({v, 1});
      enumerate(v + 1);
      subset.pop_back();
    }
  };
  enumerate(1);
  return out;
}

Polynomial oracle_S_recurrence(unsigned n, unsigned k, RingMode mode) {
  // row[j] = S^j_m for the current m.
  std::vector<Polynomial> row(k + 1, Polynomial(mode));
  row[0] = Polynomial::constant(Rational(1), mode);
  for (unsigned m = 1; m <= n; ++m) {
    const Polynomial x = Polynomial::variable(m, mode);
    for (unsigned j = std::min(k, m); j >= 1; --j) row[j] += row[j - 1] * x;
  }
  return row[k];
}

Polynomial oracle_P(unsigned n, unsigned k) {
  if (k == 0) throw PreconditionError("power sum needs k >= 1");
  Polynomial out;
  for (VarId i = 1; i <= n; ++i) out.add_term(Monomial::variable(i, k), Rational(1));
  return out;
}

Polynomial newton_Z(unsigned k) {
  std::vector<Polynomial> z;
  z.push_back(Polynomial::constant(Rational(1)));
  for (unsigned m = 0; m < k; ++m) {
    Polynomial next;
    for (unsigned i = 1; i <= m + 1; ++i) {
      Polynomial term = Polynomial::variable(i) * z[m + 1 - i];
      if (i % 2 == 1) {
        next += term;
      } else {
        next -= term;
      }
    }
    z.push_back(next.scaled(Rational(1, m + 1)));
  }
  return z[k];
}

// ---------------------------------------------------------------------------
// Text form

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    if (!first) out += " + ";
    first = false;
    out += to_fraction_string(c);
    for (const Power& pw : m.powers()) {
      out += "*x" + std::to_string(pw.var);
      if (pw.exp != 1) out += "^" + std::to_string(pw.exp);
    }
  }
  return out;
}

namespace {

class PolyLexer {
 public:
  explicit PolyLexer(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  void expect(char c, const char* what) {
    if (peek() != c) fail(what);
    advance();
  }
  std::string digits(const char* what) {
    skip_ws();
    std::string out;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      out += text_[pos_];
      advance();
    }
    if (out.empty()) fail(what);
    return out;
  }
  [[noreturn]] void fail(const char* expected) {
    const std::string found = pos_ < text_.size() ? std::string("'") + text_[pos_] + "'" : "end of input";
    throw ParseError(line_, column_, expected, found);
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, RingMode mode) {
  PolyLexer lex(text);
  Polynomial out(mode);
  while (true) {
    std::string coeff;
    if (lex.peek() == '-') {
      lex.expect('-', "'-'");
      coeff = "-";
    }
    coeff += lex.digits("coefficient digits");
    if (lex.peek() == '/') {
      lex.expect('/', "'/'");
      coeff += "/" + lex.digits("denominator digits");
    }
    std::vector<Power> powers;
    while (lex.peek() == '*') {
      lex.expect('*', "'*'");
      lex.expect('x', "variable 'x'");
      const auto var = static_cast<VarId>(std::stoul(lex.digits("variable index")));
      std::uint32_t exp = 1;
      if (lex.peek() == '^') {
        lex.expect('^', "'^'");
        exp = static_cast<std::uint32_t>(std::stoul(lex.digits("exponent")));
      }
      powers.push_back({var, exp});
    }
    Rational value;
    try {
      value = parse_rational(coeff);
    } catch (const PreconditionError&) {
      lex.fail("nonzero denominator");
    }
    out.add_term(Monomial::from_powers(std::move(powers), mode), value);
    if (lex.at_end()) break;
    lex.expect('+', "'+' or end of input");
  }
  return out;
}

}  // namespace esym
