#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "bhcert/normcalc.hpp"
#include "bhcert/polynomial.hpp"

using namespace bhcert;

namespace {

Polynomial random_poly(std::mt19937& rng, int n_vars, int max_terms,
                       unsigned max_exp) {
  std::uniform_int_distribution<int> nterms(0, max_terms);
  std::uniform_int_distribution<unsigned> exp(0, max_exp);
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> den(1, 4);
  std::vector<std::pair<MultiIndex, mpq_class>> terms;
  int t = nterms(rng);
  for (int i = 0; i < t; ++i) {
    std::vector<unsigned> e(n_vars);
    for (auto& v : e) v = exp(rng);
    mpq_class c(num(rng), den(rng));
    c.canonicalize();
    terms.emplace_back(MultiIndex(std::move(e)), c);
  }
  return Polynomial::from_terms(n_vars, terms);
}

std::vector<mpq_class> random_point(std::mt19937& rng, int n_vars) {
  std::uniform_int_distribution<int> num(-3, 3);
  std::uniform_int_distribution<int> den(1, 3);
  std::vector<mpq_class> x(n_vars);
  for (auto& v : x) {
    v = mpq_class(num(rng), den(rng));
    v.canonicalize();
  }
  return x;
}

Polynomial r2() {
  return Polynomial::from_terms(
      2, {{MultiIndex{2, 0}, 1}, {MultiIndex{0, 2}, -1}, {MultiIndex{1, 1}, 1}});
}

}  // namespace

TEST_CASE("from_terms merges duplicates and drops zeros") {
  Polynomial p = Polynomial::from_terms(
      2, {{MultiIndex{1, 0}, mpq_class(1, 2)},
          {MultiIndex{1, 0}, mpq_class(1, 2)},
          {MultiIndex{0, 1}, 1},
          {MultiIndex{0, 1}, -1}});
  CHECK(p.term_count() == 1);
  CHECK(p.terms().at(MultiIndex{1, 0}) == 1);
  CHECK_THROWS_AS(Polynomial::from_terms(2, {{MultiIndex{1}, 1}}),
                  std::invalid_argument);
}

TEST_CASE("degree and homogeneity") {
  CHECK(!Polynomial(3).degree().has_value());
  Polynomial p = r2();
  CHECK(p.degree() == 2u);
  CHECK(p.is_homogeneous(2));
  CHECK(!p.is_homogeneous(3));
  Polynomial q = add(p, Polynomial::from_terms(2, {{MultiIndex{1, 0}, 1}}));
  CHECK(!q.is_homogeneous(2));
}

TEST_CASE("ring laws on random polynomials") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 40; ++trial) {
    Polynomial a = random_poly(rng, 3, 4, 3);
    Polynomial b = random_poly(rng, 3, 4, 3);
    Polynomial c = random_poly(rng, 3, 4, 3);
    CHECK(add(a, b) == add(b, a));
    CHECK(mul(a, b) == mul(b, a));
    CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
    CHECK(mul(a, add(b, c)) == add(mul(a, b), mul(a, c)));
  }
}

TEST_CASE("pow equals repeated multiplication") {
  std::mt19937 rng(999);
  Polynomial p = random_poly(rng, 2, 3, 2);
  Polynomial acc = Polynomial::from_terms(2, {{MultiIndex{0, 0}, 1}});
  for (unsigned n = 0; n <= 6; ++n) {
    CHECK(pow(p, n) == acc);
    acc = mul(acc, p);
  }
}

TEST_CASE("evaluation is a ring homomorphism") {
  std::mt19937 rng(777);
  for (int trial = 0; trial < 25; ++trial) {
    Polynomial a = random_poly(rng, 3, 4, 3);
    Polynomial b = random_poly(rng, 3, 4, 3);
    auto x = random_point(rng, 3);
    CHECK(eval_exact(mul(a, b), x) == eval_exact(a, x) * eval_exact(b, x));
    CHECK(eval_exact(add(a, b), x) == eval_exact(a, x) + eval_exact(b, x));
  }
}

TEST_CASE("homogeneous scaling identity") {
  std::mt19937 rng(31);
  Polynomial p = r2();
  for (int trial = 0; trial < 10; ++trial) {
    auto x = random_point(rng, 2);
    mpq_class t(trial - 5, 3);
    t.canonicalize();
    std::vector<mpq_class> tx = {t * x[0], t * x[1]};
    CHECK(eval_exact(p, tx) == t * t * eval_exact(p, x));
  }
}

TEST_CASE("disjoint product multiplies maximal coefficients") {
  std::mt19937 rng(4242);
  for (int trial = 0; trial < 25; ++trial) {
    Polynomial a = random_poly(rng, 2, 4, 2);
    Polynomial b = random_poly(rng, 2, 4, 2);
    Polynomial prod = disjoint_product(a, b);
    CHECK(prod.n_vars() == 4);
    if (a.is_zero() || b.is_zero()) {
      CHECK(prod.is_zero());
    } else {
      CHECK(coeff_sup(prod) == coeff_sup(a) * coeff_sup(b));
      CHECK(prod.term_count() == a.term_count() * b.term_count());
    }
  }
}

TEST_CASE("embed preserves evaluation") {
  Polynomial p = r2();
  Polynomial e = embed(p, 5, 2);
  std::vector<mpq_class> x = {9, 9, mpq_class(1, 2), mpq_class(-1, 3), 9};
  std::vector<mpq_class> y = {x[2], x[3]};
  CHECK(eval_exact(e, x) == eval_exact(p, y));
}

TEST_CASE("complex evaluation of the trinomial block at (1, i)") {
  std::complex<double> z[] = {{1, 0}, {0, 1}};
  auto v = eval_complex(complexify(r2()), z);
  CHECK(v.real() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(v.imag() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(v) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));
}

TEST_CASE("text round trip is the identity") {
  std::mt19937 rng(2026);
  for (int trial = 0; trial < 20; ++trial) {
    Polynomial p = random_poly(rng, 3, 5, 4);
    CHECK(Polynomial::parse_text(3, p.to_text()) == p);
  }
  CHECK_THROWS_AS(Polynomial::parse_text(2, "1/2 : 1"), std::invalid_argument);
}
