#include "bhcert/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "bhcert/boxbound.hpp"
#include "bhcert/rounded.hpp"

namespace bhcert {
namespace oracle {

namespace {

// Independent term-list arithmetic: plain vectors, quadratic
// accumulation, no shortcuts shared with the polycore operations.
using TermList = std::vector<std::pair<std::vector<unsigned>, mpq_class>>;

TermList naive_mul(const TermList& a, const TermList& b, std::size_t guard) {
  TermList out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      std::vector<unsigned> e(ea.size());
      for (std::size_t v = 0; v < e.size(); ++v) e[v] = ea[v] + eb[v];
      bool found = false;
      for (auto& [eo, co] : out) {
        if (eo == e) {
          co += ca * cb;
          found = true;
          break;
        }
      }
      if (!found) out.emplace_back(std::move(e), ca * cb);
      if (out.size() > guard) throw BudgetError("naive expansion too large");
    }
  }
  TermList pruned;
  for (auto& t : out)
    if (t.second != 0) pruned.push_back(std::move(t));
  return pruned;
}

TermList monomial(int n_vars, std::initializer_list<std::pair<int, unsigned>>
                                  exps, const mpq_class& c) {
  std::vector<unsigned> e(n_vars, 0);
  for (auto [v, k] : exps) e[static_cast<std::size_t>(v)] = k;
  return {{std::move(e), c}};
}

TermList naive_add(const TermList& a, const TermList& b) {
  TermList out = a;
  for (const auto& [eb, cb] : b) {
    bool found = false;
    for (auto& [eo, co] : out) {
      if (eo == eb) {
        co += cb;
        found = true;
        break;
      }
    }
    if (!found) out.emplace_back(eb, cb);
  }
  TermList pruned;
  for (auto& t : out)
    if (t.second != 0) pruned.push_back(std::move(t));
  return pruned;
}

// Trinomial block on variables (v, v+1) of an n-variable ambient space.
TermList block(int n_vars, int v) {
  TermList t = monomial(n_vars, {{v, 2u}}, 1);
  t = naive_add(t, monomial(n_vars, {{v + 1, 2u}}, -1));
  t = naive_add(t, monomial(n_vars, {{v, 1u}, {v + 1, 1u}}, 1));
  return t;
}

TermList naive_r_even(int m, int n_vars, int offset, std::size_t guard) {
  TermList acc = block(n_vars, offset);
  for (int i = 2; i < m; i += 2)
    acc = naive_mul(acc, block(n_vars, offset + i), guard);
  return acc;
}

TermList naive_q_tower(int k, int n_vars, int offset, std::size_t guard) {
  if (k == 1) {
    return naive_add(monomial(n_vars, {{offset, 2u}}, 1),
                     monomial(n_vars, {{offset + 1, 2u}}, -1));
  }
  TermList a = naive_q_tower(k - 1, n_vars, offset, guard);
  TermList b = naive_q_tower(k - 1, n_vars, offset + (1 << (k - 1)), guard);
  TermList a2 = naive_mul(a, a, guard);
  TermList b2 = naive_mul(b, b, guard);
  for (auto& t : b2) t.second = -t.second;
  return naive_add(a2, b2);
}

Polynomial to_poly(int n_vars, const TermList& terms) {
  std::vector<std::pair<MultiIndex, mpq_class>> out;
  out.reserve(terms.size());
  for (const auto& [e, c] : terms) out.emplace_back(MultiIndex(e), c);
  return Polynomial::from_terms(n_vars, out);
}

}  // namespace

double grid_sup_lower(const Polynomial& p, int points_per_dim) {
  if (points_per_dim < 2)
    throw std::invalid_argument("grid needs at least 2 points per dim");
  int n = p.n_vars();
  if (n > 6) throw BudgetError("grid oracle limited to 6 variables");
  if (p.is_zero()) return 0.0;
  double total = std::pow(static_cast<double>(points_per_dim), n);
  if (total > 2e6) throw BudgetError("grid oracle point budget exceeded");

  unsigned maxdeg = 0;
  for (const auto& [idx, c] : p.terms())
    for (int v = 0; v < n; ++v) maxdeg = std::max(maxdeg, idx[v]);

  // Per-coordinate power tables: value_j = (2j - (g-1)) / (g-1).
  int g = points_per_dim;
  std::vector<std::vector<mpq_class>> powers(g);
  for (int j = 0; j < g; ++j) {
    mpq_class x(2 * j - (g - 1), g - 1);
    x.canonicalize();
    powers[j].resize(maxdeg + 1);
    powers[j][0] = 1;
    for (unsigned e = 1; e <= maxdeg; ++e) powers[j][e] = powers[j][e - 1] * x;
  }

  mpq_class best = 0;
  std::vector<int> idx(n, 0);
  while (true) {
    mpq_class sum = 0;
    for (const auto& [mi, c] : p.terms()) {
      mpq_class term = c;
      for (int v = 0; v < n; ++v) term *= powers[idx[v]][mi[v]];
      sum += term;
    }
    mpq_class a = abs(sum);
    if (a > best) best = a;
    int axis = n - 1;
    while (axis >= 0 && ++idx[axis] == g) idx[axis--] = 0;
    if (axis < 0) break;
  }
  return RoundedInterval::from_rational(best, 64).lower_double();
}

Polynomial naive_expand(const FamilySpec& spec) {
  constexpr std::size_t guard = 1'000'000;
  switch (spec.kind) {
    case FamilySpec::Kind::REven:
      return to_poly(spec.m, naive_r_even(spec.m, spec.m, 0, guard));
    case FamilySpec::Kind::ROdd: {
      int m = spec.m;
      int nv = 2 * m;
      TermList a = naive_r_even(m - 1, nv, 0, guard);
      TermList b = naive_r_even(m - 1, nv, m - 1, guard);
      TermList plus = naive_add(monomial(nv, {{nv - 1, 1u}}, 1),
                                monomial(nv, {{nv - 2, 1u}}, 1));
      TermList minus = naive_add(monomial(nv, {{nv - 1, 1u}}, 1),
                                 monomial(nv, {{nv - 2, 1u}}, -1));
      return to_poly(nv, naive_add(naive_mul(plus, a, guard),
                                   naive_mul(minus, b, guard)));
    }
    case FamilySpec::Kind::QTower:
      return to_poly(1 << spec.k,
                     naive_q_tower(spec.k, 1 << spec.k, 0, guard));
    case FamilySpec::Kind::QTowerPower: {
      TermList q = naive_q_tower(spec.k, 1 << spec.k, 0, guard);
      TermList acc = q;
      for (int i = 1; i < spec.n; ++i) acc = naive_mul(acc, q, guard);
      return to_poly(1 << spec.k, acc);
    }
    case FamilySpec::Kind::P4Power: {
      TermList p4 = naive_add(monomial(2, {{0, 3u}, {1, 1u}}, 1),
                              monomial(2, {{0, 1u}, {1, 3u}}, -1));
      TermList acc = p4;
      for (int i = 1; i < spec.n; ++i) acc = naive_mul(acc, p4, guard);
      return to_poly(2, acc);
    }
  }
  throw std::logic_error("unreachable");
}

bool binom_identity_check(int n_max) {
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  for (int n = 1; n <= n_max; ++n) {
    mpz_class sum = 0;
    for (int k = 0; k <= n; ++k) {
      mpz_class b = binomial(n, k);
      sum += b * b;
    }
    if (sum != binomial(2 * n, n)) return false;
  }
  return true;
}

bool product_inequality_check(int n_max) {
  for (long n = 0; n <= n_max; ++n)
    for (long k = 0; k <= n; ++k)
      if ((2 * k + 1) * (2 * n - 2 * k + 1) > (n + 1) * (n + 1)) return false;
  return true;
}

bool binomial_sum_bound_check(int n_max) {
  for (int n = 0; n <= n_max; ++n) {
    mpz_class max_binom = binomial(n, n / 2);
    mpz_class two_n = 1;
    mpz_mul_2exp(two_n.get_mpz_t(), two_n.get_mpz_t(), n);
    if (two_n > (n + 1) * max_binom) return false;
  }
  return true;
}

double stirling_gap(int n) {
  if (n < 1) throw std::invalid_argument("stirling_gap requires n >= 1");
  const mpfr_prec_t prec = 256;
  RoundedInterval exact =
      RoundedInterval::from_integer(binomial(2ul * n, n), prec)
          .sqrt()
          .div(RoundedInterval::from_long(3, prec)
                   .sqrt()
                   .mul(RoundedInterval::from_long(2, prec))
                   .div(RoundedInterval::from_long(9, prec))
                   .pow_ui(static_cast<unsigned long>(n)));
  long m = 4L * n;
  RoundedInterval asym =
      RoundedInterval::from_long(4, prec)
          .div(RoundedInterval::pi(prec).mul(
              RoundedInterval::from_long(m, prec)))
          .pow_q(mpq_class(1, 4))
          .mul(RoundedInterval::from_long(27, prec).pow_q(mpq_class(m, 8)));
  double ev, ee, av, ae;
  exact.to_bounded(ev, ee);
  asym.to_bounded(av, ae);
  return std::fabs(ev / av - 1.0);
}

}  // namespace oracle
}  // namespace bhcert
