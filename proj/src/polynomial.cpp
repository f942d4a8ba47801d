#include "bhcert/polynomial.hpp"

#include <sstream>
#include <stdexcept>

namespace bhcert {

Polynomial Polynomial::from_terms(
    int n_vars, const std::vector<std::pair<MultiIndex, mpq_class>>& terms) {
  if (n_vars < 0) throw std::invalid_argument("negative variable count");
  Polynomial p(n_vars);
  for (const auto& [idx, coeff] : terms) {
    if (static_cast<int>(idx.size()) != n_vars)
      throw std::invalid_argument("multi-index length does not match n_vars");
    auto [it, inserted] = p.terms_.emplace(idx, coeff);
    if (!inserted) it->second += coeff;
    if (it->second == 0) p.terms_.erase(it);
  }
  return p;
}

std::optional<unsigned> Polynomial::degree() const {
  if (terms_.empty()) return std::nullopt;
  unsigned d = 0;
  for (const auto& [idx, c] : terms_) d = std::max(d, idx.total_degree());
  return d;
}

bool Polynomial::is_homogeneous(unsigned m) const {
  for (const auto& [idx, c] : terms_)
    if (idx.total_degree() != m) return false;
  return true;
}

std::string Polynomial::to_text() const {
  std::ostringstream out;
  for (const auto& [idx, c] : terms_) {
    out << c.get_num() << '/' << c.get_den() << " :";
    for (unsigned e : idx.exponents) out << ' ' << e;
    out << '\n';
  }
  return out.str();
}

Polynomial Polynomial::parse_text(int n_vars, const std::string& text) {
  std::istringstream in(text);
  std::vector<std::pair<MultiIndex, mpq_class>> terms;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string coeff_str, colon;
    ls >> coeff_str >> colon;
    if (colon != ":") throw std::invalid_argument("malformed term line: " + line);
    mpq_class c;
    if (c.set_str(coeff_str, 10) != 0)
      throw std::invalid_argument("malformed coefficient: " + coeff_str);
    c.canonicalize();
    std::vector<unsigned> exps;
    long e;
    while (ls >> e) {
      if (e < 0) throw std::invalid_argument("negative exponent");
      exps.push_back(static_cast<unsigned>(e));
    }
    terms.emplace_back(MultiIndex(std::move(exps)), c);
  }
  return from_terms(n_vars, terms);
}

Polynomial add(const Polynomial& p, const Polynomial& q) {
  if (p.n_vars() != q.n_vars())
    throw std::invalid_argument("variable-count mismatch in add");
  std::vector<std::pair<MultiIndex, mpq_class>> terms;
  terms.reserve(p.term_count() + q.term_count());
  for (const auto& t : p.terms()) terms.push_back(t);
  for (const auto& t : q.terms()) terms.push_back(t);
  return Polynomial::from_terms(p.n_vars(), terms);
}

Polynomial mul(const Polynomial& p, const Polynomial& q) {
  if (p.n_vars() != q.n_vars())
    throw std::invalid_argument("variable-count mismatch in mul");
  Polynomial::TermMap acc;
  for (const auto& [ia, ca] : p.terms()) {
    for (const auto& [ib, cb] : q.terms()) {
      MultiIndex idx = ia;
      for (std::size_t v = 0; v < idx.exponents.size(); ++v)
        idx.exponents[v] += ib.exponents[v];
      auto [it, inserted] = acc.emplace(std::move(idx), ca * cb);
      if (!inserted) it->second += ca * cb;
    }
  }
  std::vector<std::pair<MultiIndex, mpq_class>> terms(acc.begin(), acc.end());
  return Polynomial::from_terms(p.n_vars(), terms);
}

Polynomial pow(const Polynomial& p, unsigned n) {
  std::vector<std::pair<MultiIndex, mpq_class>> one = {
      {MultiIndex(std::vector<unsigned>(p.n_vars(), 0)), mpq_class(1)}};
  Polynomial result = Polynomial::from_terms(p.n_vars(), one);
  Polynomial base = p;
  while (n > 0) {
    if (n & 1) result = mul(result, base);
    n >>= 1;
    if (n > 0) base = mul(base, base);
  }
  return result;
}

Polynomial embed(const Polynomial& p, int n_vars, int offset) {
  if (offset < 0 || offset + p.n_vars() > n_vars)
    throw std::invalid_argument("embedding does not fit");
  std::vector<std::pair<MultiIndex, mpq_class>> terms;
  for (const auto& [idx, c] : p.terms()) {
    std::vector<unsigned> e(n_vars, 0);
    for (int v = 0; v < p.n_vars(); ++v) e[offset + v] = idx[v];
    terms.emplace_back(MultiIndex(std::move(e)), c);
  }
  return Polynomial::from_terms(n_vars, terms);
}

Polynomial disjoint_product(const Polynomial& p, const Polynomial& q) {
  int n = p.n_vars() + q.n_vars();
  return mul(embed(p, n, 0), embed(q, n, p.n_vars()));
}

Polynomial scale(const Polynomial& p, const mpq_class& c) {
  std::vector<std::pair<MultiIndex, mpq_class>> terms;
  for (const auto& [idx, a] : p.terms()) terms.emplace_back(idx, a * c);
  return Polynomial::from_terms(p.n_vars(), terms);
}

mpq_class eval_exact(const Polynomial& p, std::span<const mpq_class> x) {
  if (static_cast<int>(x.size()) != p.n_vars())
    throw std::invalid_argument("dimension mismatch in eval_exact");
  mpq_class sum = 0;
  for (const auto& [idx, c] : p.terms()) {
    mpq_class term = c;
    for (std::size_t v = 0; v < x.size(); ++v) {
      for (unsigned e = 0; e < idx[v]; ++e) term *= x[v];
    }
    sum += term;
  }
  return sum;
}

double eval_real(const Polynomial& p, std::span<const double> x) {
  if (static_cast<int>(x.size()) != p.n_vars())
    throw std::invalid_argument("dimension mismatch in eval_real");
  double sum = 0.0;
  for (const auto& [idx, c] : p.terms()) {
    double term = c.get_d();
    for (std::size_t v = 0; v < x.size(); ++v) {
      unsigned e = idx[v];
      double b = x[v];
      while (e > 0) {
        if (e & 1) term *= b;
        e >>= 1;
        if (e > 0) b *= b;
      }
    }
    sum += term;
  }
  return sum;
}

std::complex<double> eval_complex(const Polynomial& p,
                                  std::span<const std::complex<double>> z) {
  if (static_cast<int>(z.size()) != p.n_vars())
    throw std::invalid_argument("dimension mismatch in eval_complex");
  std::complex<double> sum = 0.0;
  for (const auto& [idx, c] : p.terms()) {
    std::complex<double> term = c.get_d();
    for (std::size_t v = 0; v < z.size(); ++v) {
      unsigned e = idx[v];
      std::complex<double> b = z[v];
      while (e > 0) {
        if (e & 1) term *= b;
        e >>= 1;
        if (e > 0) b *= b;
      }
    }
    sum += term;
  }
  return sum;
}

}  // namespace bhcert
