#include "bhcert/families.hpp"

#include <charconv>
#include <stdexcept>

namespace bhcert {

namespace {

int parse_int(std::string_view s, const char* what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw std::invalid_argument(std::string("bad integer in family spec: ") +
                                what);
  return v;
}

// The trinomial block x_a^2 - x_b^2 + x_a x_b in two variables.
Polynomial r2_block() {
  return Polynomial::from_terms(2, {{MultiIndex{2, 0}, mpq_class(1)},
                                    {MultiIndex{0, 2}, mpq_class(-1)},
                                    {MultiIndex{1, 1}, mpq_class(1)}});
}

}  // namespace

FamilySpec FamilySpec::r(int m) {
  if (m < 2) throw std::invalid_argument("R family requires m >= 2");
  FamilySpec s;
  s.kind = (m % 2 == 0) ? Kind::REven : Kind::ROdd;
  s.m = m;
  return s;
}

FamilySpec FamilySpec::q(int k) {
  if (k < 1) throw std::invalid_argument("Q tower requires k >= 1");
  FamilySpec s;
  s.kind = Kind::QTower;
  s.k = k;
  return s;
}

FamilySpec FamilySpec::qpow(int k, int n) {
  if (k < 1 || n < 1)
    throw std::invalid_argument("Qpow requires k >= 1 and n >= 1");
  FamilySpec s;
  s.kind = Kind::QTowerPower;
  s.k = k;
  s.n = n;
  return s;
}

FamilySpec FamilySpec::p4pow(int n) {
  if (n < 1) throw std::invalid_argument("P4pow requires n >= 1");
  FamilySpec s;
  s.kind = Kind::P4Power;
  s.n = n;
  return s;
}

FamilySpec FamilySpec::parse(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("family spec needs the form NAME:params");
  std::string_view name(text.data(), colon);
  std::string_view args(text.data() + colon + 1, text.size() - colon - 1);
  auto comma = args.find(',');
  if (name == "R") {
    return r(parse_int(args, "m"));
  } else if (name == "Q") {
    return q(parse_int(args, "k"));
  } else if (name == "Qpow") {
    if (comma == std::string_view::npos)
      throw std::invalid_argument("Qpow spec needs Qpow:k,n");
    return qpow(parse_int(args.substr(0, comma), "k"),
                parse_int(args.substr(comma + 1), "n"));
  } else if (name == "P4pow") {
    return p4pow(parse_int(args, "n"));
  }
  throw std::invalid_argument("unknown family: " + std::string(name));
}

std::string FamilySpec::to_string() const {
  switch (kind) {
    case Kind::REven:
    case Kind::ROdd:
      return "R:" + std::to_string(m);
    case Kind::QTower:
      return "Q:" + std::to_string(k);
    case Kind::QTowerPower:
      return "Qpow:" + std::to_string(k) + "," + std::to_string(n);
    case Kind::P4Power:
      return "P4pow:" + std::to_string(n);
  }
  throw std::logic_error("unreachable");
}

unsigned FamilySpec::degree() const {
  switch (kind) {
    case Kind::REven:
    case Kind::ROdd:
      return static_cast<unsigned>(m);
    case Kind::QTower:
      return 1u << k;
    case Kind::QTowerPower:
      return static_cast<unsigned>(n) << k;
    case Kind::P4Power:
      return 4u * static_cast<unsigned>(n);
  }
  throw std::logic_error("unreachable");
}

unsigned FamilySpec::variable_count() const {
  switch (kind) {
    case Kind::REven:
      return static_cast<unsigned>(m);
    case Kind::ROdd:
      return 2u * static_cast<unsigned>(m);
    case Kind::QTower:
    case Kind::QTowerPower:
      return 1u << k;
    case Kind::P4Power:
      return 2;
  }
  throw std::logic_error("unreachable");
}

Polynomial r_even(int m) {
  if (m < 2 || m % 2 != 0)
    throw std::invalid_argument("r_even requires even m >= 2");
  Polynomial p = r2_block();
  for (int i = 2; i < m; i += 2) p = disjoint_product(p, r2_block());
  return p;
}

Polynomial r_odd(int m) {
  if (m < 3 || m % 2 != 1)
    throw std::invalid_argument("r_odd requires odd m >= 3");
  // Variable layout follows the defining identity: first copy of R_{m-1}
  // on x_1..x_{m-1}, second on x_m..x_{2m-2}, linear factors on
  // x_{2m-1}, x_{2m} (0-based offsets below).
  int nv = 2 * m;
  Polynomial a = embed(r_even(m - 1), nv, 0);
  Polynomial b = embed(r_even(m - 1), nv, m - 1);
  auto linear = [&](int var, int sign) {
    std::vector<unsigned> e(nv, 0);
    e[var] = 1;
    return Polynomial::from_terms(nv,
                                  {{MultiIndex(std::move(e)), mpq_class(sign)}});
  };
  Polynomial plus = add(linear(nv - 1, 1), linear(nv - 2, 1));
  Polynomial minus = add(linear(nv - 1, 1), linear(nv - 2, -1));
  return add(mul(plus, a), mul(minus, b));
}

Polynomial q_tower(int k) {
  if (k < 1) throw std::invalid_argument("q_tower requires k >= 1");
  if (k == 1)
    return Polynomial::from_terms(2, {{MultiIndex{2, 0}, mpq_class(1)},
                                      {MultiIndex{0, 2}, mpq_class(-1)}});
  Polynomial half = q_tower(k - 1);
  Polynomial sq = pow(half, 2);
  int nv = 1 << k;
  return add(embed(sq, nv, 0), scale(embed(sq, nv, nv / 2), mpq_class(-1)));
}

Polynomial q_tower_power(int k, int n) {
  if (k < 1 || n < 1)
    throw std::invalid_argument("q_tower_power requires k >= 1 and n >= 1");
  return pow(q_tower(k), static_cast<unsigned>(n));
}

Polynomial p4_power(int n) {
  if (n < 1) throw std::invalid_argument("p4_power requires n >= 1");
  Polynomial p4 = Polynomial::from_terms(2, {{MultiIndex{3, 1}, mpq_class(1)},
                                             {MultiIndex{1, 3}, mpq_class(-1)}});
  return pow(p4, static_cast<unsigned>(n));
}

Polynomial build_family(const FamilySpec& spec) {
  switch (spec.kind) {
    case FamilySpec::Kind::REven:
      return r_even(spec.m);
    case FamilySpec::Kind::ROdd:
      return r_odd(spec.m);
    case FamilySpec::Kind::QTower:
      return q_tower(spec.k);
    case FamilySpec::Kind::QTowerPower:
      return q_tower_power(spec.k, spec.n);
    case FamilySpec::Kind::P4Power:
      return p4_power(spec.n);
  }
  throw std::logic_error("unreachable");
}

}  // namespace bhcert
