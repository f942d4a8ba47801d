#include "bhcert/normcalc.hpp"

#include <cmath>
#include <stdexcept>

namespace bhcert {

double BoundedReal::lower() const {
  return std::nextafter(value - abs_err, -INFINITY);
}

double BoundedReal::upper() const {
  return std::nextafter(value + abs_err, INFINITY);
}

BHExponent bh_exponent(unsigned m) {
  if (m == 0) throw std::invalid_argument("bh_exponent requires m >= 1");
  mpq_class e(2 * static_cast<long>(m), static_cast<long>(m) + 1);
  e.canonicalize();
  return BHExponent{m, e};
}

RoundedInterval coeff_lp_norm_interval(const Polynomial& p,
                                       const mpq_class& exponent,
                                       mpfr_prec_t prec) {
  if (exponent < 1)
    throw std::invalid_argument("lp exponent below 1 is not a norm");
  RoundedInterval sum(prec);
  if (p.is_zero()) return sum;
  for (const auto& [idx, c] : p.terms()) {
    mpq_class a = abs(c);
    sum = sum.add(RoundedInterval::from_rational(a, prec).pow_q(exponent));
  }
  mpq_class inv = 1 / exponent;
  return sum.pow_q(inv);
}

BoundedReal coeff_lp_norm(const Polynomial& p, const mpq_class& exponent,
                          mpfr_prec_t prec) {
  BoundedReal r;
  if (p.is_zero()) return r;  // exactly zero, no rounding involved
  coeff_lp_norm_interval(p, exponent, prec).to_bounded(r.value, r.abs_err);
  return r;
}

mpq_class coeff_l2_norm_sq(const Polynomial& p) {
  mpq_class s = 0;
  for (const auto& [idx, c] : p.terms()) s += c * c;
  return s;
}

mpq_class coeff_sup(const Polynomial& p) {
  mpq_class m = 0;
  for (const auto& [idx, c] : p.terms()) {
    mpq_class a = abs(c);
    if (a > m) m = a;
  }
  return m;
}

mpq_class coeff_l1(const Polynomial& p) {
  mpq_class s = 0;
  for (const auto& [idx, c] : p.terms()) s += abs(c);
  return s;
}

bool lp_comparison_check(const Polynomial& p, const mpq_class& p_exp,
                         const mpq_class& q_exp, mpfr_prec_t prec) {
  if (p_exp < 1 || q_exp < p_exp)
    throw std::invalid_argument("lp_comparison_check requires 1 <= p <= q");
  if (p.is_zero()) return true;
  RoundedInterval np = coeff_lp_norm_interval(p, p_exp, prec);
  RoundedInterval nq = coeff_lp_norm_interval(p, q_exp, prec);
  // |p|_q <= |p|_p
  if (!possibly_le(nq, np)) return false;
  // |p|_p <= d^(1/p - 1/q) |p|_q
  mpq_class diff = 1 / p_exp - 1 / q_exp;
  RoundedInterval factor =
      RoundedInterval::from_long(static_cast<long>(p.term_count()), prec)
          .pow_q(diff);
  return possibly_le(np, factor.mul(nq));
}

}  // namespace bhcert
