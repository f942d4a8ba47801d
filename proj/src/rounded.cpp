#include "bhcert/rounded.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace bhcert {

RoundedInterval::RoundedInterval(mpfr_prec_t prec) : prec_(prec) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

RoundedInterval::RoundedInterval(const RoundedInterval& other)
    : prec_(other.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

RoundedInterval::RoundedInterval(RoundedInterval&& other) noexcept
    : prec_(other.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

RoundedInterval& RoundedInterval::operator=(RoundedInterval other) {
  std::swap(prec_, other.prec_);
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  return *this;
}

RoundedInterval::~RoundedInterval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

RoundedInterval RoundedInterval::from_rational(const mpq_class& q,
                                               mpfr_prec_t prec) {
  RoundedInterval r(prec);
  mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
  return r;
}

RoundedInterval RoundedInterval::from_long(long v, mpfr_prec_t prec) {
  RoundedInterval r(prec);
  mpfr_set_si(r.lo_, v, MPFR_RNDD);
  mpfr_set_si(r.hi_, v, MPFR_RNDU);
  return r;
}

RoundedInterval RoundedInterval::from_double(double v, mpfr_prec_t prec) {
  RoundedInterval r(prec);
  mpfr_set_d(r.lo_, v, MPFR_RNDD);
  mpfr_set_d(r.hi_, v, MPFR_RNDU);
  return r;
}

RoundedInterval RoundedInterval::from_integer(const mpz_class& z,
                                              mpfr_prec_t prec) {
  RoundedInterval r(prec);
  mpfr_set_z(r.lo_, z.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_, z.get_mpz_t(), MPFR_RNDU);
  return r;
}

RoundedInterval RoundedInterval::pi(mpfr_prec_t prec) {
  RoundedInterval r(prec);
  mpfr_const_pi(r.lo_, MPFR_RNDD);
  mpfr_const_pi(r.hi_, MPFR_RNDU);
  return r;
}

RoundedInterval RoundedInterval::add(const RoundedInterval& other) const {
  RoundedInterval r(prec_);
  mpfr_add(r.lo_, lo_, other.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, hi_, other.hi_, MPFR_RNDU);
  return r;
}

RoundedInterval RoundedInterval::sub(const RoundedInterval& other) const {
  RoundedInterval r(prec_);
  mpfr_sub(r.lo_, lo_, other.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, hi_, other.lo_, MPFR_RNDU);
  return r;
}

RoundedInterval RoundedInterval::mul(const RoundedInterval& other) const {
  if (mpfr_sgn(lo_) < 0 || mpfr_sgn(other.lo_) < 0)
    throw std::domain_error("RoundedInterval::mul requires non-negative operands");
  RoundedInterval r(prec_);
  mpfr_mul(r.lo_, lo_, other.lo_, MPFR_RNDD);
  mpfr_mul(r.hi_, hi_, other.hi_, MPFR_RNDU);
  return r;
}

RoundedInterval RoundedInterval::div(const RoundedInterval& other) const {
  if (mpfr_sgn(lo_) < 0 || mpfr_sgn(other.lo_) <= 0)
    throw std::domain_error("RoundedInterval::div requires positive denominator");
  RoundedInterval r(prec_);
  mpfr_div(r.lo_, lo_, other.hi_, MPFR_RNDD);
  mpfr_div(r.hi_, hi_, other.lo_, MPFR_RNDU);
  return r;
}

RoundedInterval RoundedInterval::sqrt() const {
  if (mpfr_sgn(lo_) < 0)
    throw std::domain_error("RoundedInterval::sqrt of negative interval");
  RoundedInterval r(prec_);
  mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
  return r;
}

RoundedInterval RoundedInterval::pow(const RoundedInterval& exponent) const {
  if (mpfr_sgn(lo_) < 0)
    throw std::domain_error("RoundedInterval::pow requires non-negative base");
  // t^e is monotone in t for fixed e > 0 and monotone in e for fixed t,
  // so the extrema over the rectangle are attained at corners.
  RoundedInterval r(prec_);
  mpfr_t tmp;
  mpfr_init2(tmp, prec_);
  const mpfr_t* bases[2] = {&lo_, &hi_};
  const mpfr_t* exps[2] = {&exponent.lo_, &exponent.hi_};
  bool first = true;
  for (int b = 0; b < 2; ++b) {
    for (int e = 0; e < 2; ++e) {
      mpfr_pow(tmp, *bases[b], *exps[e], MPFR_RNDD);
      if (first || mpfr_cmp(tmp, r.lo_) < 0) mpfr_set(r.lo_, tmp, MPFR_RNDD);
      mpfr_pow(tmp, *bases[b], *exps[e], MPFR_RNDU);
      if (first || mpfr_cmp(tmp, r.hi_) > 0) mpfr_set(r.hi_, tmp, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(tmp);
  return r;
}

RoundedInterval RoundedInterval::pow_q(const mpq_class& exponent) const {
  RoundedInterval e(prec_);
  mpfr_set_q(e.lo_, exponent.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(e.hi_, exponent.get_mpq_t(), MPFR_RNDU);
  return pow(e);
}

RoundedInterval RoundedInterval::pow_ui(unsigned long n) const {
  if (mpfr_sgn(lo_) < 0)
    throw std::domain_error("RoundedInterval::pow_ui requires non-negative base");
  RoundedInterval r(prec_);
  mpfr_pow_ui(r.lo_, lo_, n, MPFR_RNDD);
  mpfr_pow_ui(r.hi_, hi_, n, MPFR_RNDU);
  return r;
}

RoundedInterval RoundedInterval::root_ui(unsigned long n) const {
  if (mpfr_sgn(lo_) < 0)
    throw std::domain_error("RoundedInterval::root_ui of negative interval");
  RoundedInterval r(prec_);
  mpfr_rootn_ui(r.lo_, lo_, n, MPFR_RNDD);
  mpfr_rootn_ui(r.hi_, hi_, n, MPFR_RNDU);
  return r;
}

double RoundedInterval::lower_double() const {
  return mpfr_get_d(lo_, MPFR_RNDD);
}

double RoundedInterval::upper_double() const {
  return mpfr_get_d(hi_, MPFR_RNDU);
}

void RoundedInterval::to_bounded(double& value, double& abs_err) const {
  mpfr_t mid;
  mpfr_init2(mid, prec_);
  mpfr_add(mid, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(mid, mid, 1, MPFR_RNDN);
  value = mpfr_get_d(mid, MPFR_RNDN);
  // Distance from the double value to both endpoints, rounded up.
  mpfr_t v, d1, d2;
  mpfr_init2(v, prec_);
  mpfr_init2(d1, prec_);
  mpfr_init2(d2, prec_);
  mpfr_set_d(v, value, MPFR_RNDN);
  mpfr_sub(d1, v, lo_, MPFR_RNDU);
  mpfr_sub(d2, hi_, v, MPFR_RNDU);
  if (mpfr_cmp(d2, d1) > 0) mpfr_set(d1, d2, MPFR_RNDU);
  abs_err = mpfr_get_d(d1, MPFR_RNDU);
  if (abs_err < 0) abs_err = 0;
  // One extra ulp guards the final double conversion itself.
  abs_err = std::nextafter(abs_err, INFINITY);
  mpfr_clear(mid);
  mpfr_clear(v);
  mpfr_clear(d1);
  mpfr_clear(d2);
}

bool RoundedInterval::contains_zero() const {
  return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

int RoundedInterval::cmp_lower(double v) const { return mpfr_cmp_d(lo_, v); }
int RoundedInterval::cmp_upper(double v) const { return mpfr_cmp_d(hi_, v); }

bool certainly_le(const RoundedInterval& a, const RoundedInterval& b) {
  return mpfr_cmp(a.hi_, b.lo_) <= 0;
}

bool possibly_le(const RoundedInterval& a, const RoundedInterval& b) {
  return mpfr_cmp(a.lo_, b.hi_) <= 0;
}

mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace bhcert
