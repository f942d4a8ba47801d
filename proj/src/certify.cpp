#include "bhcert/certify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

#include "bhcert/rounded.hpp"

namespace bhcert {

namespace {

double midpoint(const RoundedInterval& v) {
  double value, err;
  v.to_bounded(value, err);
  return value;
}

RoundedInterval thm2_base(mpfr_prec_t prec) {
  return RoundedInterval::from_long(2, prec)
      .mul(RoundedInterval::from_long(3, prec).pow_q(mpq_class(1, 4)))
      .div(RoundedInterval::from_long(5, prec).sqrt());
}

std::string rational_string(const mpq_class& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string BoundCertificate::claim() const {
  return "D_real(" + std::to_string(m) + ", " + std::to_string(n_vars) +
         ") >= " + format_real(ratio_lower);
}

std::string BoundCertificate::to_json() const {
  nlohmann::ordered_json j;
  j["claim"] = claim();
  j["m"] = m;
  j["n_vars"] = n_vars;
  j["family"] = family;
  j["p_exponent"] = rational_string(p_exponent.value);
  j["numerator"] = {{"value", numerator.value}, {"abs_err", numerator.abs_err}};
  j["denominator"] = {{"lo", denominator.lo},
                      {"hi", denominator.hi},
                      {"method", method_name(denominator.method)}};
  j["ratio_lower"] = ratio_lower;
  if (closed_form_name) {
    j["closed_form"] = {{"name", *closed_form_name},
                        {"value", *closed_form_value}};
  } else {
    j["closed_form"] = nullptr;
  }
  j["toolchain"] = {{"tol", tol},
                    {"precision_bits", static_cast<long>(precision_bits)}};
  return j.dump(2);
}

BoundCertificate certify_lower_bound(const Polynomial& p, unsigned m,
                                     const RangeEnclosure& sup,
                                     mpfr_prec_t prec) {
  if (p.is_zero())
    throw std::invalid_argument("zero polynomial cannot witness a bound");
  if (!p.is_homogeneous(m))
    throw std::invalid_argument("witness is not m-homogeneous");
  if (!std::isfinite(sup.hi) || sup.hi <= 0)
    throw std::invalid_argument("sup-norm upper bound must be finite positive");

  BoundCertificate cert;
  cert.m = m;
  cert.n_vars = p.n_vars();
  cert.p_exponent = bh_exponent(m);
  cert.precision_bits = prec;
  cert.tol = sup.tol;
  cert.denominator = sup;

  RoundedInterval num = coeff_lp_norm_interval(p, cert.p_exponent.value, prec);
  num.to_bounded(cert.numerator.value, cert.numerator.abs_err);

  // Lower end of the numerator over the upper end of the denominator,
  // rounded downward throughout.
  RoundedInterval ratio = RoundedInterval::from_double(cert.numerator.lower(),
                                                       prec)
                              .div(RoundedInterval::from_double(sup.hi, prec));
  cert.ratio_lower = std::nextafter(ratio.lower_double(), 0.0);
  return cert;
}

BoundCertificate certify_family(const FamilySpec& spec, mpfr_prec_t prec) {
  Polynomial p = build_family(spec);
  RangeEnclosure sup = structural_sup_norm(spec);
  BoundCertificate cert = certify_lower_bound(p, spec.degree(), sup, prec);
  cert.family = spec.to_string();
  switch (spec.kind) {
    case FamilySpec::Kind::REven:
      cert.closed_form_name = "thm2";
      cert.closed_form_value = thm2_closed_form(spec.m);
      break;
    case FamilySpec::Kind::ROdd:
      // The odd-m proof chain ends with exponent m-1; that is the floor
      // this certificate is compared against.
      cert.closed_form_name = "thm2_exponent_m_minus_1";
      cert.closed_form_value =
          midpoint(thm2_base(prec).pow_ui(static_cast<unsigned>(spec.m - 1)));
      break;
    case FamilySpec::Kind::QTower:
      cert.closed_form_name = "thm3";
      cert.closed_form_value = thm3_lower(spec.k, 1);
      break;
    case FamilySpec::Kind::QTowerPower:
      cert.closed_form_name = "thm3";
      cert.closed_form_value = thm3_lower(spec.k, spec.n);
      break;
    case FamilySpec::Kind::P4Power:
      cert.closed_form_name = "thm5";
      cert.closed_form_value = thm5_lower(spec.n).exact_ratio;
      break;
  }
  return cert;
}

double thm2_closed_form(int m) {
  if (m < 2) throw std::invalid_argument("thm2 floor requires m >= 2");
  return midpoint(thm2_base(192).pow_ui(static_cast<unsigned>(m)));
}

mpq_class thm3_lower_exact(int k, int n) {
  if (k < 1 || n < 1)
    throw std::invalid_argument("thm3 requires k >= 1 and n >= 1");
  long e = (1L << k) - 1;
  mpz_class num = 1;
  mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(),
               static_cast<unsigned long>(n) * e);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(n) + 1,
                static_cast<unsigned long>(e));
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

double thm3_lower(int k, int n) {
  return RoundedInterval::from_rational(thm3_lower_exact(k, n), 128)
      .lower_double();
}

Thm5Lower thm5_lower(int n) {
  if (n < 1) throw std::invalid_argument("thm5 requires n >= 1");
  const mpfr_prec_t prec = 256;
  RoundedInterval norm_pow = RoundedInterval::from_long(3, prec)
                                 .sqrt()
                                 .mul(RoundedInterval::from_long(2, prec))
                                 .div(RoundedInterval::from_long(9, prec))
                                 .pow_ui(static_cast<unsigned long>(n));
  RoundedInterval exact =
      RoundedInterval::from_integer(binomial(2ul * n, n), prec)
          .sqrt()
          .div(norm_pow);
  long m = 4L * n;
  RoundedInterval asym =
      RoundedInterval::from_long(4, prec)
          .div(RoundedInterval::pi(prec).mul(
              RoundedInterval::from_long(m, prec)))
          .pow_q(mpq_class(1, 4))
          .mul(RoundedInterval::from_long(27, prec).pow_q(mpq_class(m, 8)));
  return Thm5Lower{midpoint(exact), midpoint(asym)};
}

double prop4_constant(int m, int n) {
  if (m < 1 || n < 2)
    throw std::invalid_argument("prop4 requires m >= 1 and n >= 2");
  mpz_class b = binomial(static_cast<unsigned long>(m + n - 1),
                         static_cast<unsigned long>(n - 1));
  return midpoint(RoundedInterval::from_integer(b, 192)
                      .pow_q(mpq_class(1, 2L * m)));
}

bool check_parseval(const Polynomial& p, int grid) {
  if (grid < 8) throw std::invalid_argument("parseval check needs grid >= 8");
  if (p.is_zero()) return true;
  double l2_upper =
      RoundedInterval::from_rational(coeff_l2_norm_sq(p), 128)
          .sqrt()
          .upper_double();
  double torus = torus_sup_estimate(complexify(p), grid, 50);
  return l2_upper <= torus;
}

VisserReport check_visser(const Polynomial& p, unsigned m, int grid,
                          const RangeEnclosure& real_sup) {
  if (!p.is_homogeneous(m))
    throw std::invalid_argument("visser check needs an m-homogeneous input");
  VisserReport rep;
  rep.bound = std::ldexp(1.0, static_cast<int>(m) - 1);
  if (real_sup.lo <= 0) {
    rep.inconclusive = true;
    return rep;
  }
  double torus = torus_sup_estimate(complexify(p), grid, 50);
  rep.ratio = torus / real_sup.lo;
  rep.holds = rep.ratio <= rep.bound * (1.0 + 1e-6);
  rep.inconclusive = !rep.holds;
  return rep;
}

VisserReport check_visser(const Polynomial& p, unsigned m, int grid) {
  SupNormOptions opt;
  opt.tol = 1e-7;
  return check_visser(p, m, grid, certified_sup_norm(p, opt));
}

SweepResult sweep(const std::vector<FamilySpec>& specs, mpfr_prec_t prec) {
  SweepResult result;
  for (const auto& spec : specs) {
    try {
      result.certificates.push_back(certify_family(spec, prec));
    } catch (const std::exception& e) {
      result.errors.push_back(spec.to_string() + ": " + e.what());
    }
  }
  std::stable_sort(result.certificates.begin(), result.certificates.end(),
                   [](const BoundCertificate& a, const BoundCertificate& b) {
                     return std::make_pair(a.m, a.n_vars) <
                            std::make_pair(b.m, b.n_vars);
                   });
  return result;
}

}  // namespace bhcert
