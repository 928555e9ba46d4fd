#include "esym/interval.hpp"

#include <algorithm>
#include <vector>

#include "esym/errors.hpp"

namespace esym {

namespace {

class Scratch {
 public:
  Scratch() { mpfr_init2(v, Interval::kPrecision); }
  ~Scratch() { mpfr_clear(v); }
  Scratch(const Scratch&) = delete;
  Scratch& operator=(const Scratch&) = delete;
  mpfr_t v;
};

}  // namespace

Interval::Interval() {
  mpfr_init2(lo_, kPrecision);
  mpfr_init2(hi_, kPrecision);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Rational& value) : Interval() {
  mpfr_set_q(lo_, value.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, value.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(const BigInt& value) : Interval() {
  mpfr_set_z(lo_, value.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(hi_, value.get_mpz_t(), MPFR_RNDU);
}

Interval::Interval(long value) : Interval() {
  mpfr_set_si(lo_, value, MPFR_RNDD);
  mpfr_set_si(hi_, value, MPFR_RNDU);
}

Interval::Interval(const Interval& other) : Interval() {
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept : Interval() {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(const Interval& other) {
  if (this != &other) {
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
  }
  return *this;
}

Interval& Interval::operator=(Interval&& other) noexcept {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval operator+(const Interval& a, const Interval& b) {
  Interval r;
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r;
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  Interval r;
  Scratch t;
  bool first = true;
  for (const auto* x : {&a.lo_, &a.hi_}) {
    for (const auto* y : {&b.lo_, &b.hi_}) {
      mpfr_mul(t.v, *x, *y, MPFR_RNDD);
      if (first || mpfr_less_p(t.v, r.lo_)) mpfr_set(r.lo_, t.v, MPFR_RNDD);
      mpfr_mul(t.v, *x, *y, MPFR_RNDU);
      if (first || mpfr_greater_p(t.v, r.hi_)) mpfr_set(r.hi_, t.v, MPFR_RNDU);
      first = false;
    }
  }
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (mpfr_sgn(b.lo_) <= 0 && mpfr_sgn(b.hi_) >= 0) throw PreconditionError("interval division by a range containing 0");
  Interval r;
  Scratch t;
  bool first = true;
  for (const auto* x : {&a.lo_, &a.hi_}) {
    for (const auto* y : {&b.lo_, &b.hi_}) {
      mpfr_div(t.v, *x, *y, MPFR_RNDD);
      if (first || mpfr_less_p(t.v, r.lo_)) mpfr_set(r.lo_, t.v, MPFR_RNDD);
      mpfr_div(t.v, *x, *y, MPFR_RNDU);
      if (first || mpfr_greater_p(t.v, r.hi_)) mpfr_set(r.hi_, t.v, MPFR_RNDU);
      first = false;
    }
  }
  return r;
}

Interval Interval::log2() const {
  if (mpfr_sgn(lo_) <= 0) throw PreconditionError("log2 of a range reaching 0");
  Interval r;
  mpfr_log2(r.lo_, lo_, MPFR_RNDD);
  mpfr_log2(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::exp2() const {
  Interval r;
  mpfr_exp2(r.lo_, lo_, MPFR_RNDD);
  mpfr_exp2(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::sqrt() const {
  if (mpfr_sgn(lo_) < 0) throw PreconditionError("sqrt of a negative range");
  Interval r;
  mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::pow(const Interval& e) const { return (e * log2()).exp2(); }

bool Interval::hi_le(const BigInt& value) const { return mpfr_cmp_z(hi_, value.get_mpz_t()) <= 0; }
bool Interval::lo_ge(const BigInt& value) const { return mpfr_cmp_z(lo_, value.get_mpz_t()) >= 0; }
bool Interval::hi_lt(const BigInt& value) const { return mpfr_cmp_z(hi_, value.get_mpz_t()) < 0; }

BigInt Interval::floor_lo() const {
  BigInt out;
  mpfr_get_z(out.get_mpz_t(), lo_, MPFR_RNDD);
  return out;
}

BigInt Interval::ceil_hi() const {
  BigInt out;
  mpfr_get_z(out.get_mpz_t(), hi_, MPFR_RNDU);
  return out;
}

namespace {

std::string format(const mpfr_t v, int digits, bool up) {
  const char* fmt = up ? "%.*RUg" : "%.*RDg";
  const int len = mpfr_snprintf(nullptr, 0, fmt, digits, v);
  std::vector<char> buf(static_cast<std::size_t>(len) + 1);
  mpfr_snprintf(buf.data(), buf.size(), fmt, digits, v);
  return std::string(buf.data(), static_cast<std::size_t>(len));
}

}  // namespace

std::string Interval::lo_string(int digits) const { return format(lo_, digits, false); }
std::string Interval::hi_string(int digits) const { return format(hi_, digits, true); }

}  // namespace esym
