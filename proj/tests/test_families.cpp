#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bhcert/certify.hpp"
#include "bhcert/families.hpp"
#include "bhcert/normcalc.hpp"

using namespace bhcert;

namespace {

bool all_unit_coefficients(const Polynomial& p) {
  for (const auto& [idx, c] : p.terms())
    if (c != 1 && c != -1) return false;
  return true;
}

}  // namespace

TEST_CASE("even block products: counts, signs, homogeneity") {
  for (int m : {2, 4, 6, 8}) {
    Polynomial p = r_even(m);
    CHECK(p.n_vars() == m);
    std::size_t expected = 1;
    for (int i = 0; i < m / 2; ++i) expected *= 3;
    CHECK(p.term_count() == expected);
    CHECK(all_unit_coefficients(p));
    CHECK(p.is_homogeneous(static_cast<unsigned>(m)));
  }
}

TEST_CASE("odd members: counts, signs, unit coefficient sup") {
  for (int m : {3, 5, 7}) {
    Polynomial p = r_odd(m);
    CHECK(p.n_vars() == 2 * m);
    std::size_t expected = 4;
    for (int i = 0; i < (m - 1) / 2; ++i) expected *= 3;
    CHECK(p.term_count() == expected);
    CHECK(all_unit_coefficients(p));
    CHECK(p.is_homogeneous(static_cast<unsigned>(m)));
    // The two summands occupy disjoint monomial sets, so nothing merges.
    CHECK(coeff_sup(p) == 1);
  }
}

TEST_CASE("tower level two expands as expected") {
  // (x1^2 - x2^2)^2 - (x3^2 - x4^2)^2
  Polynomial a = embed(q_tower(1), 4, 0);
  Polynomial b = embed(q_tower(1), 4, 2);
  Polynomial expected = add(mul(a, a), scale(mul(b, b), -1));
  CHECK(q_tower(2) == expected);
  CHECK(coeff_sup(q_tower(2)) == 2);
  CHECK(q_tower(2).is_homogeneous(4));
  CHECK(q_tower(3).is_homogeneous(8));
  CHECK(q_tower(3).n_vars() == 8);
}

TEST_CASE("tower powers dominate the closed-form coefficient floor") {
  for (int k = 1; k <= 3; ++k) {
    for (int n = 1; n <= 4; ++n) {
      if (k == 3 && n > 2) continue;  // keep the expansion small
      Polynomial p = q_tower_power(k, n);
      CHECK(p.is_homogeneous(static_cast<unsigned>(n) << k));
      CHECK(coeff_sup(p) >= thm3_lower_exact(k, n));
    }
  }
  // The -2 cross terms of both squared halves meet in the middle
  // monomial x1^2 x2^2 x3^2 x4^2 with coefficient -2 * (-2) * (-2) = -8.
  CHECK(coeff_sup(q_tower_power(2, 2)) == 8);
}

TEST_CASE("tower powers expand binomially over the two halves") {
  // Q_{2^(k+1)}^n = sum_j C(n,j) (-1)^(n-j) A^(2j) B^(2(n-j)) with A, B
  // the level-k members on the two halves; checked for k = 1.
  for (int n = 1; n <= 3; ++n) {
    Polynomial a = embed(q_tower(1), 4, 0);
    Polynomial b = embed(q_tower(1), 4, 2);
    Polynomial sum(4);
    for (int j = 0; j <= n; ++j) {
      mpq_class c(binomial(n, j));
      if ((n - j) % 2 == 1) c = -c;
      sum = add(sum, scale(mul(pow(a, 2u * j), pow(b, 2u * (n - j))), c));
    }
    CHECK(q_tower_power(2, n) == sum);
  }
}

TEST_CASE("quartic two-variable powers carry binomial coefficients") {
  Polynomial p1 = p4_power(1);
  CHECK(p1.n_vars() == 2);
  CHECK(p1.term_count() == 2);
  CHECK(p1.is_homogeneous(4));

  Polynomial p2 = p4_power(2);
  CHECK(p2.term_count() == 3);
  CHECK(p2.terms().at(MultiIndex{6, 2}) == 1);
  CHECK(p2.terms().at(MultiIndex{4, 4}) == -2);
  CHECK(p2.terms().at(MultiIndex{2, 6}) == 1);

  for (int n = 3; n <= 6; ++n) {
    Polynomial pn = p4_power(n);
    CHECK(pn.is_homogeneous(4u * n));
    CHECK(pn.term_count() == static_cast<std::size_t>(n) + 1);
    CHECK(coeff_sup(pn) == binomial(n, n / 2));
  }
}

TEST_CASE("spec strings round trip") {
  for (const char* s : {"R:2", "R:7", "Q:3", "Qpow:2,5", "P4pow:4"}) {
    FamilySpec spec = FamilySpec::parse(s);
    CHECK(spec.to_string() == s);
    Polynomial p = build_family(spec);
    CHECK(p.n_vars() == static_cast<int>(spec.variable_count()));
    CHECK(p.is_homogeneous(spec.degree()));
  }
  CHECK_THROWS_AS(FamilySpec::parse("R:0"), std::invalid_argument);
  CHECK_THROWS_AS(FamilySpec::parse("Qpow:1"), std::invalid_argument);
  CHECK_THROWS_AS(FamilySpec::parse("Z:3"), std::invalid_argument);
  CHECK_THROWS_AS(FamilySpec::parse("R:two"), std::invalid_argument);
}

TEST_CASE("degrees and variable counts") {
  CHECK(FamilySpec::r(6).degree() == 6);
  CHECK(FamilySpec::r(6).variable_count() == 6);
  CHECK(FamilySpec::r(5).variable_count() == 10);
  CHECK(FamilySpec::q(3).degree() == 8);
  CHECK(FamilySpec::qpow(2, 3).degree() == 12);
  CHECK(FamilySpec::qpow(2, 3).variable_count() == 4);
  CHECK(FamilySpec::p4pow(5).degree() == 20);
  CHECK(FamilySpec::p4pow(5).variable_count() == 2);
}
