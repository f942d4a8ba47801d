#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <vector>

#include "bhcert/boxbound.hpp"
#include "bhcert/normcalc.hpp"
#include "bhcert/oracle.hpp"

using namespace bhcert;

namespace {

void check_encloses(const RangeEnclosure& enc, double truth, double tol) {
  CHECK(enc.converged);
  CHECK(enc.lo <= truth + 1e-15);
  CHECK(enc.hi >= truth - 1e-15);
  CHECK(enc.width() <= tol * (1 + 1e-9));
}

Polynomial sum_of_squares() {
  return Polynomial::from_terms(2, {{MultiIndex{2, 0}, 1},
                                    {MultiIndex{0, 2}, 1}});
}

}  // namespace

TEST_CASE("single-pass enclosure on the unit cube") {
  RangeEnclosure enc = bernstein_enclosure(r_even(2), Box::unit_cube(2));
  CHECK(enc.method == EnclosureMethod::Bernstein);
  CHECK(enc.hi >= 1.25);
  CHECK(enc.lo >= 1.0);  // a corner already attains 1

  // x^2 + y^2 attains its maximum 2 at a corner, so even one pass is tight.
  RangeEnclosure sq = bernstein_enclosure(sum_of_squares(), Box::unit_cube(2));
  CHECK(sq.lo == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(sq.hi >= 2.0);

  CHECK_THROWS_AS(bernstein_enclosure(p4_power(6), Box::unit_cube(2), 10),
                  BudgetError);
}

TEST_CASE("branch and bound hits the known sup norms") {
  check_encloses(certified_sup_norm(r_even(2)), 1.25, 1e-9);
  check_encloses(certified_sup_norm(sum_of_squares()), 2.0, 1e-9);
  check_encloses(certified_sup_norm(p4_power(1)),
                 2.0 * std::sqrt(3.0) / 9.0, 1e-9);
  check_encloses(certified_sup_norm(p4_power(2)), 4.0 / 27.0, 1e-9);
}

TEST_CASE("power rule containment") {
  RangeEnclosure base = certified_sup_norm(p4_power(1));
  RangeEnclosure squared = certified_sup_norm(p4_power(2));
  CHECK(squared.lo <= base.hi * base.hi + 1e-12);
  CHECK(squared.hi >= base.lo * base.lo - 1e-12);
}

TEST_CASE("trace is monotone") {
  std::vector<std::pair<double, double>> states;
  SupNormOptions opt;
  opt.tol = 1e-7;
  opt.trace = [&](double lo, double hi) { states.emplace_back(lo, hi); };
  certified_sup_norm(r_even(4), opt);
  REQUIRE(states.size() > 1);
  for (std::size_t i = 1; i < states.size(); ++i) {
    CHECK(states[i].first >= states[i - 1].first - 1e-12);
    CHECK(states[i].second <= states[i - 1].second + 1e-12);
  }
}

TEST_CASE("exhausted box budget degrades soundly") {
  SupNormOptions opt;
  opt.tol = 1e-12;
  opt.box_budget = 3;
  RangeEnclosure enc = certified_sup_norm(p4_power(1), opt);
  CHECK(!enc.converged);
  CHECK(enc.lo <= 2.0 * std::sqrt(3.0) / 9.0 + 1e-12);
  CHECK(enc.hi >= 2.0 * std::sqrt(3.0) / 9.0 - 1e-12);
}

TEST_CASE("environment variable overrides the default budget") {
  CHECK(default_box_budget() == 1'000'000);
  setenv("BHCERT_BUDGET", "1234", 1);
  CHECK(default_box_budget() == 1234);
  unsetenv("BHCERT_BUDGET");
  CHECK(default_box_budget() == 1'000'000);
}

TEST_CASE("structural rules match the certified values") {
  RangeEnclosure r2 = structural_sup_norm(FamilySpec::r(2));
  CHECK(r2.method == EnclosureMethod::Structural);
  CHECK(r2.lo <= 1.25);
  CHECK(r2.hi >= 1.25);
  CHECK(r2.width() <= 1e-12);

  RangeEnclosure r4 = structural_sup_norm(FamilySpec::r(4));
  CHECK(r4.lo <= 1.5625);
  CHECK(r4.hi >= 1.5625);

  for (int k = 1; k <= 4; ++k) {
    RangeEnclosure q = structural_sup_norm(FamilySpec::q(k));
    CHECK(q.lo == 1.0);
    CHECK(q.hi == 1.0);
  }
  RangeEnclosure qp = structural_sup_norm(FamilySpec::qpow(2, 3));
  CHECK(qp.lo == 1.0);
  CHECK(qp.hi == 1.0);

  RangeEnclosure p4 = structural_sup_norm(FamilySpec::p4pow(1));
  double truth = 2.0 * std::sqrt(3.0) / 9.0;
  CHECK(p4.lo <= truth + 1e-15);
  CHECK(p4.hi >= truth - 1e-15);
  CHECK(p4.width() <= 1e-12);

  // Odd members only get the triangle-inequality upper bound.
  RangeEnclosure r3 = structural_sup_norm(FamilySpec::r(3));
  CHECK(r3.hi == doctest::Approx(2.5).epsilon(1e-12));  // 2 * (5/4)^1
  CHECK(r3.lo > 0.0);
  CHECK(r3.lo <= r3.hi);
}

TEST_CASE("structural agrees with branch and bound on the small members") {
  for (auto spec : {FamilySpec::r(2), FamilySpec::q(1), FamilySpec::q(2),
                    FamilySpec::p4pow(1)}) {
    RangeEnclosure s = structural_sup_norm(spec);
    RangeEnclosure b = certified_sup_norm(build_family(spec), 1e-7);
    CHECK(s.lo <= b.hi + 1e-12);
    CHECK(b.lo <= s.hi + 1e-12);
  }
}

TEST_CASE("torus estimates reach the known complex values") {
  // The trinomial block at (1, i) has modulus sqrt(5).
  double t = torus_sup_estimate(complexify(r_even(2)), 32, 50);
  CHECK(t >= std::sqrt(5.0) - 1e-6);
  // x^3 y - x y^3 at (1, i) has modulus 2.
  double t4 = torus_sup_estimate(complexify(p4_power(1)), 32, 50);
  CHECK(t4 >= 2.0 - 1e-6);
  CHECK(t4 <= 2.0 + 1e-6);
}

TEST_CASE("fallback enclosures stay sound") {
  Polynomial p = r_even(4);
  RangeEnclosure l1 = l1_upper(p);
  CHECK(l1.method == EnclosureMethod::L1Fallback);
  CHECK(l1.lo == 0.0);
  CHECK(l1.hi == doctest::Approx(9.0));

  RangeEnclosure g = grid_lower_enclosure(p);
  CHECK(g.method == EnclosureMethod::GridLowerOnly);
  CHECK(std::isinf(g.hi));
  CHECK(g.lo <= 1.5625 + 1e-12);
  CHECK(g.lo >= 1.5);  // the polished grid gets close
}

TEST_CASE("grid oracle never exceeds a certified upper bound") {
  for (auto spec : {FamilySpec::r(2), FamilySpec::q(1), FamilySpec::qpow(1, 2),
                    FamilySpec::p4pow(1), FamilySpec::p4pow(3)}) {
    Polynomial p = build_family(spec);
    double lo = oracle::grid_sup_lower(p, 41);
    RangeEnclosure enc = certified_sup_norm(p, 1e-7);
    CHECK(lo <= enc.hi + 1e-12);
    CHECK(enc.lo <= lo + 0.05);  // grid resolution slack
  }
}

TEST_CASE("enclosure serialization carries the full state") {
  RangeEnclosure enc = certified_sup_norm(r_even(2), 1e-7);
  std::string j = enc.to_json();
  CHECK(j.find("\"lo\"") != std::string::npos);
  CHECK(j.find("\"hi\"") != std::string::npos);
  CHECK(j.find("bernstein") != std::string::npos);
  CHECK(j.find("\"converged\":true") != std::string::npos);
}
