#ifndef BHCERT_ROUNDED_HPP
#define BHCERT_ROUNDED_HPP

#include <string>

#include <gmpxx.h>
#include <mpfr.h>

namespace bhcert {

/// Closed interval [lo, hi] with MPFR endpoints, every operation rounded
/// outward. This is the carrier for all one-sided certificate arithmetic:
/// lower ends of numerators, upper ends of denominators.
class RoundedInterval {
 public:
  explicit RoundedInterval(mpfr_prec_t prec = 128);
  RoundedInterval(const RoundedInterval& other);
  RoundedInterval(RoundedInterval&& other) noexcept;
  RoundedInterval& operator=(RoundedInterval other);
  ~RoundedInterval();

  mpfr_prec_t precision() const { return prec_; }

  static RoundedInterval from_rational(const mpq_class& q,
                                       mpfr_prec_t prec = 128);
  static RoundedInterval from_long(long v, mpfr_prec_t prec = 128);
  static RoundedInterval from_double(double v, mpfr_prec_t prec = 128);
  /// Exact integer endpoints.
  static RoundedInterval from_integer(const mpz_class& z,
                                      mpfr_prec_t prec = 128);
  static RoundedInterval pi(mpfr_prec_t prec = 128);

  RoundedInterval add(const RoundedInterval& other) const;
  RoundedInterval sub(const RoundedInterval& other) const;
  /// Requires both operands non-negative (all uses here are).
  RoundedInterval mul(const RoundedInterval& other) const;
  /// Requires both operands positive.
  RoundedInterval div(const RoundedInterval& other) const;
  RoundedInterval sqrt() const;
  /// base^exponent for non-negative base; monotonicity in both arguments
  /// makes the four corner evaluations an enclosure.
  RoundedInterval pow(const RoundedInterval& exponent) const;
  RoundedInterval pow_q(const mpq_class& exponent) const;
  RoundedInterval pow_ui(unsigned long n) const;
  RoundedInterval root_ui(unsigned long n) const;

  double lower_double() const;  // rounded toward -inf
  double upper_double() const;  // rounded toward +inf
  /// Midpoint as nearest double plus an upward-rounded radius covering
  /// both the interval width and the double conversion.
  void to_bounded(double& value, double& abs_err) const;

  bool contains_zero() const;
  int cmp_lower(double v) const;  // sign of (lo - v)
  int cmp_upper(double v) const;  // sign of (hi - v)

  /// True when a <= b holds for every pair of representatives.
  friend bool certainly_le(const RoundedInterval& a, const RoundedInterval& b);
  /// True when a <= b holds for some pair of representatives; the
  /// negation certifies a violation of a <= b.
  friend bool possibly_le(const RoundedInterval& a, const RoundedInterval& b);

 private:
  mpfr_prec_t prec_;
  mpfr_t lo_;
  mpfr_t hi_;
};

/// C(n, k) as an exact big integer.
mpz_class binomial(unsigned long n, unsigned long k);

}  // namespace bhcert

#endif  // BHCERT_ROUNDED_HPP
