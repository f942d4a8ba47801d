#ifndef BHCERT_NORMCALC_HPP
#define BHCERT_NORMCALC_HPP

#include "bhcert/polynomial.hpp"
#include "bhcert/rounded.hpp"

namespace bhcert {

inline constexpr mpfr_prec_t kDefaultPrecisionBits = 128;

/// The critical coefficient-norm exponent 2m/(m+1) for degree m.
struct BHExponent {
  unsigned m;
  mpq_class value;
};

/// A real quantity with an explicit absolute error bound: the true value
/// lies in [value - abs_err, value + abs_err].
struct BoundedReal {
  double value = 0.0;
  double abs_err = 0.0;

  double lower() const;  // rounded toward -inf
  double upper() const;  // rounded toward +inf
};

BHExponent bh_exponent(unsigned m);

/// (sum |a_alpha|^exponent)^(1/exponent) with outward rounding at every
/// step; exponent must be >= 1. The zero polynomial has norm exactly 0.
BoundedReal coeff_lp_norm(const Polynomial& p, const mpq_class& exponent,
                          mpfr_prec_t precision_bits = kDefaultPrecisionBits);

/// Same computation kept as an interval, for callers that need the raw
/// endpoints (certificates use the lower end only).
RoundedInterval coeff_lp_norm_interval(
    const Polynomial& p, const mpq_class& exponent,
    mpfr_prec_t precision_bits = kDefaultPrecisionBits);

mpq_class coeff_l2_norm_sq(const Polynomial& p);  // sum a_alpha^2, exact
mpq_class coeff_sup(const Polynomial& p);         // max |a_alpha|, exact
mpq_class coeff_l1(const Polynomial& p);          // sum |a_alpha|, exact

/// Checks |p|_q <= |p|_p <= d^(1/p - 1/q) |p|_q with d = term count,
/// using outward-rounded intervals. Returns false only on a certified
/// violation; overlapping enclosures (equality cases) pass.
bool lp_comparison_check(const Polynomial& p, const mpq_class& p_exp,
                         const mpq_class& q_exp,
                         mpfr_prec_t precision_bits = kDefaultPrecisionBits);

}  // namespace bhcert

#endif  // BHCERT_NORMCALC_HPP
