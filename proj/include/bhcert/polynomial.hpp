#ifndef BHCERT_POLYNOMIAL_HPP
#define BHCERT_POLYNOMIAL_HPP

#include <complex>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace bhcert {

/// Exponent vector of a monomial x^alpha. Length equals the ambient
/// variable count of the owning polynomial.
struct MultiIndex {
  std::vector<unsigned> exponents;

  MultiIndex() = default;
  MultiIndex(std::initializer_list<unsigned> e) : exponents(e) {}
  explicit MultiIndex(std::vector<unsigned> e) : exponents(std::move(e)) {}

  std::size_t size() const { return exponents.size(); }
  unsigned operator[](std::size_t i) const { return exponents[i]; }

  /// Total degree |alpha|.
  unsigned total_degree() const {
    unsigned d = 0;
    for (unsigned e : exponents) d += e;
    return d;
  }

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex& a, const MultiIndex& b) {
    return a.exponents <=> b.exponents;
  }
};

/// Sparse multivariate polynomial with exact rational coefficients.
/// Invariants: no zero coefficient is stored; every stored index has
/// length n_vars(). Immutable after construction; all operations are
/// pure functions returning new values.
class Polynomial {
 public:
  using TermMap = std::map<MultiIndex, mpq_class>;

  Polynomial() : n_vars_(0) {}
  explicit Polynomial(int n_vars) : n_vars_(n_vars) {}

  /// Builds a polynomial from a term list. Duplicate indices are summed,
  /// zero results dropped. Throws std::invalid_argument on an index whose
  /// length differs from n_vars.
  static Polynomial from_terms(
      int n_vars, const std::vector<std::pair<MultiIndex, mpq_class>>& terms);

  int n_vars() const { return n_vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Degree of the zero polynomial is undefined (nullopt), never a
  /// silent sentinel.
  std::optional<unsigned> degree() const;
  bool is_homogeneous(unsigned m) const;

  /// Canonical text form, one `num/den : e1 e2 ... en` line per term,
  /// sorted lexicographically by exponent vector.
  std::string to_text() const;
  static Polynomial parse_text(int n_vars, const std::string& text);

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  int n_vars_;
  TermMap terms_;
};

Polynomial add(const Polynomial& p, const Polynomial& q);
Polynomial mul(const Polynomial& p, const Polynomial& q);
Polynomial pow(const Polynomial& p, unsigned n);

/// Product of p and q on disjoint variable sets: q's variables are
/// relabeled to fresh indices after p's. The maximal absolute coefficient
/// of the result is the product of the factors' maximal coefficients.
Polynomial disjoint_product(const Polynomial& p, const Polynomial& q);

/// Embeds p into a larger ambient space, keeping its variables at the
/// given offset.
Polynomial embed(const Polynomial& p, int n_vars, int offset);

/// Multiplies every coefficient by c.
Polynomial scale(const Polynomial& p, const mpq_class& c);

mpq_class eval_exact(const Polynomial& p, std::span<const mpq_class> x);
double eval_real(const Polynomial& p, std::span<const double> x);
std::complex<double> eval_complex(const Polynomial& p,
                                  std::span<const std::complex<double>> z);

/// The complexification shares the coefficient data; only the evaluation
/// domain contract changes, so this is the identity on the value.
inline Polynomial complexify(const Polynomial& p) { return p; }

}  // namespace bhcert

#endif  // BHCERT_POLYNOMIAL_HPP
