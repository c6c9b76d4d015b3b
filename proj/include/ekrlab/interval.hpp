#pragma once

// Certified real intervals on top of MPFR with outward rounding. Used where
// a comparison involves logarithms or exponentials of exact rationals.

#include <string>

#include <mpfr.h>

#include "ekrlab/rational.hpp"

namespace ekrlab {

class BigFloat {
 public:
  explicit BigFloat(int precision_bits);
  BigFloat(const BigFloat& other);
  BigFloat& operator=(const BigFloat& other);
  ~BigFloat();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  int precision() const { return static_cast<int>(mpfr_get_prec(value_)); }
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  std::string to_string(int digits = 20) const;

 private:
  mpfr_t value_;
};

/// Closed interval [lo, hi] guaranteed to contain the true value.
class Interval {
 public:
  explicit Interval(int precision_bits);
  static Interval point(const Rational& q, int precision_bits);

  const BigFloat& lo() const { return lo_; }
  const BigFloat& hi() const { return hi_; }
  int precision() const { return lo_.precision(); }

  /// Natural log; requires lo > 0.
  Interval log() const;
  Interval exp() const;
  Interval operator-() const;
  Interval operator*(const Interval& other) const;

  /// lo > other.hi
  bool certainly_greater(const Interval& other) const;
  /// lo >= other.hi
  bool certainly_at_least(const Interval& other) const;

 private:
  BigFloat lo_;
  BigFloat hi_;
};

}  // namespace ekrlab
