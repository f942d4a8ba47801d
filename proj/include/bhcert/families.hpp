#ifndef BHCERT_FAMILIES_HPP
#define BHCERT_FAMILIES_HPP

#include <string>

#include "bhcert/polynomial.hpp"

namespace bhcert {

/// Identifies one of the extremal witness families. Canonical string
/// forms: `R:m`, `Q:k`, `Qpow:k,n`, `P4pow:n`.
struct FamilySpec {
  enum class Kind { REven, ROdd, QTower, QTowerPower, P4Power };

  Kind kind;
  int m = 0;  // R families
  int k = 0;  // Q tower level
  int n = 0;  // power

  static FamilySpec r(int m);
  static FamilySpec q(int k);
  static FamilySpec qpow(int k, int n);
  static FamilySpec p4pow(int n);

  static FamilySpec parse(const std::string& text);
  std::string to_string() const;

  /// Degree of the family member.
  unsigned degree() const;
  unsigned variable_count() const;
};

/// Product of m/2 trinomial blocks x_{2i-1}^2 - x_{2i}^2 + x_{2i-1} x_{2i}
/// on disjoint variable pairs; m-homogeneous in m variables with 3^{m/2}
/// terms, all coefficients +-1.
Polynomial r_even(int m);

/// (x_{2m} + x_{2m-1}) R_{m-1}(x_1..x_{m-1})
///   + (x_{2m} - x_{2m-1}) R_{m-1}(x_m..x_{2m-2});
/// m-homogeneous in 2m variables with 4 * 3^{(m-1)/2} terms, all +-1.
Polynomial r_odd(int m);

/// Level-k member of the recursion Q_2 = x1^2 - x2^2,
/// Q_{2^k} = Q_{2^{k-1}}(first half)^2 - Q_{2^{k-1}}(second half)^2;
/// 2^k-homogeneous in 2^k variables.
Polynomial q_tower(int k);

/// q_tower(k)^n, n*2^k-homogeneous in 2^k variables.
Polynomial q_tower_power(int k, int n);

/// (x^3 y - x y^3)^n = x^n y^n sum_k C(n,k) (-1)^k x^{2k} y^{2(n-k)};
/// 4n-homogeneous in 2 variables with signed binomial coefficients.
Polynomial p4_power(int n);

/// Builds the polynomial a spec describes.
Polynomial build_family(const FamilySpec& spec);

}  // namespace bhcert

#endif  // BHCERT_FAMILIES_HPP
