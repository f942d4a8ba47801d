#ifndef BHCERT_CERTIFY_HPP
#define BHCERT_CERTIFY_HPP

#include <optional>
#include <string>
#include <vector>

#include "bhcert/boxbound.hpp"
#include "bhcert/families.hpp"
#include "bhcert/normcalc.hpp"
#include "bhcert/polynomial.hpp"

namespace bhcert {

/// A machine-checked statement D_real(m, n_vars) >= ratio_lower, with a
/// witness polynomial's coefficient BH norm as numerator (lower end
/// used) and a certified sup-norm upper bound as denominator.
struct BoundCertificate {
  unsigned m = 0;
  int n_vars = 0;
  std::string family = "custom";
  BHExponent p_exponent;
  BoundedReal numerator;
  RangeEnclosure denominator;
  double ratio_lower = 0.0;
  std::optional<std::string> closed_form_name;
  std::optional<double> closed_form_value;
  double tol = 0.0;
  mpfr_prec_t precision_bits = kDefaultPrecisionBits;

  std::string claim() const;
  std::string to_json() const;
};

/// Fixed 15-significant-digit decimal rendering used by every textual
/// output surface.
std::string format_real(double v);

/// Assembles the certificate for a homogeneous degree-m witness with the
/// given certified sup-norm enclosure. The ratio is rounded downward.
BoundCertificate certify_lower_bound(
    const Polynomial& p, unsigned m, const RangeEnclosure& sup,
    mpfr_prec_t precision_bits = kDefaultPrecisionBits);

/// Full pipeline for one family spec: construct, structural sup norm,
/// certificate, closed-form floor attached.
BoundCertificate certify_family(
    const FamilySpec& spec, mpfr_prec_t precision_bits = kDefaultPrecisionBits);

/// (2 * 3^(1/4) / sqrt(5))^m, the even-m floor; requires m >= 2.
double thm2_closed_form(int m);

/// (2^n / (n+1))^(2^k - 1): the floor for the degree n*2^k witness on
/// 2^k variables, as a double and as an exact rational.
double thm3_lower(int k, int n);
mpq_class thm3_lower_exact(int k, int n);

struct Thm5Lower {
  double exact_ratio;  // sqrt(C(2n,n)) / (2 sqrt(3)/9)^n
  double asymptote;    // (4/(m pi))^(1/4) * 27^(m/8), m = 4n
};
Thm5Lower thm5_lower(int n);

/// C(m+n-1, n-1)^(1/(2m)); requires n >= 2.
double prop4_constant(int m, int n);

/// Verifies |P|_2 <= (torus sup estimate) outright: the coefficient l2
/// norm (upper end) against the polished torus lower estimate.
bool check_parseval(const Polynomial& p, int grid);

struct VisserReport {
  double ratio = 0.0;   // torus estimate / certified real sup lower end
  double bound = 0.0;   // 2^(m-1)
  bool holds = false;   // ratio <= bound * (1 + 1e-6)
  /// A failed comparison is never a counterexample: the numerator is a
  /// lower estimate and the denominator a certified lower bound, so the
  /// only honest verdict is "inconclusive - refine".
  bool inconclusive = false;
};

VisserReport check_visser(const Polynomial& p, unsigned m, int grid,
                          const RangeEnclosure& real_sup);
VisserReport check_visser(const Polynomial& p, unsigned m, int grid);

struct SweepResult {
  std::vector<BoundCertificate> certificates;  // ordered by (m, n_vars)
  std::vector<std::string> errors;
};

SweepResult sweep(const std::vector<FamilySpec>& specs,
                  mpfr_prec_t precision_bits = kDefaultPrecisionBits);

}  // namespace bhcert

#endif  // BHCERT_CERTIFY_HPP
