#include "ekrlab/interval.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace ekrlab {

BigFloat::BigFloat(int precision_bits) {
  if (precision_bits < MPFR_PREC_MIN || precision_bits > (1 << 20)) {
    throw std::invalid_argument("precision out of range");
  }
  mpfr_init2(value_, precision_bits);
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

std::string BigFloat::to_string(int digits) const {
  std::vector<char> buf(static_cast<std::size_t>(digits) + 32);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, value_);
  return std::string(buf.data());
}

Interval::Interval(int precision_bits) : lo_(precision_bits), hi_(precision_bits) {}

Interval Interval::point(const Rational& q, int precision_bits) {
  Interval r(precision_bits);
  mpfr_set_q(r.lo_.get(), q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_.get(), q.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::log() const {
  if (mpfr_sgn(lo_.get()) <= 0) throw std::domain_error("log of an interval not bounded away from 0");
  Interval r(precision());
  mpfr_log(r.lo_.get(), lo_.get(), MPFR_RNDD);
  mpfr_log(r.hi_.get(), hi_.get(), MPFR_RNDU);
  return r;
}

Interval Interval::exp() const {
  Interval r(precision());
  mpfr_exp(r.lo_.get(), lo_.get(), MPFR_RNDD);
  mpfr_exp(r.hi_.get(), hi_.get(), MPFR_RNDU);
  return r;
}

Interval Interval::operator-() const {
  Interval r(precision());
  mpfr_neg(r.lo_.get(), hi_.get(), MPFR_RNDD);
  mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
  return r;
}

Interval Interval::operator*(const Interval& other) const {
  const int prec = std::max(precision(), other.precision());
  Interval r(prec);
  BigFloat down(prec);
  BigFloat up(prec);
  bool first = true;
  for (const BigFloat* a : {&lo_, &hi_}) {
    for (const BigFloat* b : {&other.lo_, &other.hi_}) {
      mpfr_mul(down.get(), a->get(), b->get(), MPFR_RNDD);
      mpfr_mul(up.get(), a->get(), b->get(), MPFR_RNDU);
      if (first || mpfr_less_p(down.get(), r.lo_.get())) mpfr_set(r.lo_.get(), down.get(), MPFR_RNDD);
      if (first || mpfr_greater_p(up.get(), r.hi_.get())) mpfr_set(r.hi_.get(), up.get(), MPFR_RNDU);
      first = false;
    }
  }
  return r;
}

bool Interval::certainly_greater(const Interval& other) const { return mpfr_greater_p(lo_.get(), other.hi_.get()); }

bool Interval::certainly_at_least(const Interval& other) const {
  return mpfr_greaterequal_p(lo_.get(), other.hi_.get());
}

}  // namespace ekrlab
