#pragma once

// Closed real intervals with MPFR endpoints. Every operation rounds the lower
// endpoint down and the upper endpoint up, so the exact real result of the
// same expression always lies inside.

#include <mpfr.h>

#include <string>

#include "esym/rational.hpp"

namespace esym {

class Interval {
 public:
  static constexpr mpfr_prec_t kPrecision = 256;

  Interval();  // [0, 0]
  explicit Interval(const Rational& value);
  explicit Interval(const BigInt& value);
  explicit Interval(long value);
  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(const Interval& other);
  Interval& operator=(Interval&& other) noexcept;
  ~Interval();

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  /// Throws PreconditionError when b contains zero.
  friend Interval operator/(const Interval& a, const Interval& b);

  /// Requires lo > 0.
  Interval log2() const;
  Interval exp2() const;
  /// Requires lo >= 0.
  Interval sqrt() const;
  /// this^e for a positive base, as exp2(e * log2(this)).
  Interval pow(const Interval& e) const;

  bool lo_ge(const Interval& other) const { return mpfr_cmp(lo_, other.hi_) >= 0; }
  bool hi_le(const BigInt& value) const;
  bool lo_ge(const BigInt& value) const;
  bool hi_lt(const BigInt& value) const;

  /// floor(lo) and ceil(hi).
  BigInt floor_lo() const;
  BigInt ceil_hi() const;
  double lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }
  /// Decimal text with `digits` significant digits, rounded down / up.
  std::string lo_string(int digits = 12) const;
  std::string hi_string(int digits = 12) const;

 private:
  mpfr_t lo_;
  mpfr_t hi_;
};

}  // namespace esym
