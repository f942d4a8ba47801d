#ifndef BHCERT_ORACLE_HPP
#define BHCERT_ORACLE_HPP

#include "bhcert/families.hpp"
#include "bhcert/polynomial.hpp"

namespace bhcert {
namespace oracle {

/// Max |P| over the uniform grid on [-1,1]^n including endpoints,
/// evaluated in exact rational arithmetic (the returned double is the
/// exact maximum rounded down, hence always <= the true sup norm).
/// Throws BudgetError past the cost guard (n_vars <= 6 and a total point
/// cap).
double grid_sup_lower(const Polynomial& p, int points_per_dim);

/// Re-derives a family's coefficient map through an independent naive
/// term-by-term multiplication path, for bit-exact comparison against
/// the constructors. Throws BudgetError past the term-count guard.
Polynomial naive_expand(const FamilySpec& spec);

/// sum_k C(n,k)^2 == C(2n,n) for all n <= n_max, exact integers.
bool binom_identity_check(int n_max);

/// (2k+1)(2n-2k+1) <= (n+1)^2 for all 0 <= k <= n <= n_max.
bool product_inequality_check(int n_max);

/// 2^n <= (n+1) * max_k C(n,k) for all n <= n_max.
bool binomial_sum_bound_check(int n_max);

/// |exact_ratio(n) / stirling_asymptote(n) - 1| for the degree-4n
/// two-variable lower bound; shrinks as n grows.
double stirling_gap(int n);

}  // namespace oracle
}  // namespace bhcert

#endif  // BHCERT_ORACLE_HPP
