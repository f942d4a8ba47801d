#ifndef BHCERT_BOXBOUND_HPP
#define BHCERT_BOXBOUND_HPP

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bhcert/families.hpp"
#include "bhcert/polynomial.hpp"

namespace bhcert {

/// Raised when a size or box budget is exhausted before a request can be
/// served; callers fall back to structural rules or the l1 bound.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Axis-aligned box with exact rational endpoints.
struct Box {
  std::vector<std::pair<mpq_class, mpq_class>> intervals;

  static Box unit_cube(int n_vars);
  int dims() const { return static_cast<int>(intervals.size()); }
};

enum class EnclosureMethod { Bernstein, Structural, L1Fallback, GridLowerOnly };

std::string method_name(EnclosureMethod m);

/// Certified enclosure lo <= sup |P| <= hi over the box in question.
/// hi may be +inf for the grid-lower-only method.
struct RangeEnclosure {
  double lo = 0.0;
  double hi = 0.0;
  EnclosureMethod method = EnclosureMethod::Bernstein;
  double tol = 0.0;
  bool converged = true;
  long boxes_explored = 0;

  double width() const { return hi - lo; }
  std::string to_json() const;
};

/// Single Bernstein conversion over the box, no subdivision. The
/// conversion is exact rational; hi is the outward-rounded maximal
/// absolute Bernstein coefficient, lo the best corner value (corner
/// coefficients are function values). Throws BudgetError when the dense
/// coefficient tensor exceeds tensor_budget entries.
RangeEnclosure bernstein_enclosure(const Polynomial& p, const Box& box,
                                   std::size_t tensor_budget = 1'000'000);

/// 1'000'000 unless the BHCERT_BUDGET environment variable overrides it.
long default_box_budget();

struct SupNormOptions {
  double tol = 1e-9;
  long box_budget = -1;  // -1: use default_box_budget()
  std::size_t tensor_budget = 1'000'000;
  /// Called once per explored box with the certified (lo, hi) state;
  /// lo is non-decreasing and hi non-increasing up to roundoff.
  std::function<void(double lo, double hi)> trace;
};

/// Branch-and-bound certified enclosure of sup |P| over [-1,1]^n.
/// Splits the coordinate with the largest Bernstein-coefficient
/// variation (ties to the lowest index). On budget exhaustion the best
/// sound enclosure is returned with converged = false.
RangeEnclosure certified_sup_norm(const Polynomial& p,
                                  const SupNormOptions& options);
RangeEnclosure certified_sup_norm(const Polynomial& p, double tol = 1e-9);

/// Structure rules for the built-in families: exact block products for
/// even R, exact range propagation (norm 1) for the Q tower and its
/// powers, endpoint powers for P4^n, and the triangle-inequality upper
/// bound 2*(5/4)^((m-1)/2) with a polished lower for odd R.
RangeEnclosure structural_sup_norm(const FamilySpec& spec);

/// Lower estimate of sup |P_C| over the unit torus (equals the polydisk
/// sup by the maximum modulus principle): angle grid then coordinate
/// ascent. Never an upper bound.
double torus_sup_estimate(const Polynomial& p, int grid_per_dim,
                          int polish_iters);

/// Coarse certified fallback: [0, sum |a_alpha|].
RangeEnclosure l1_upper(const Polynomial& p);

/// Polished, exactly-evaluated lower bound on sup |P| over [-1,1]^n
/// (hi = +inf).
RangeEnclosure grid_lower_enclosure(const Polynomial& p);

}  // namespace bhcert

#endif  // BHCERT_BOXBOUND_HPP
