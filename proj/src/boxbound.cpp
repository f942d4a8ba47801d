#include "bhcert/boxbound.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <random>
#include <sstream>

#include <json.hpp>

#include "bhcert/rounded.hpp"

namespace bhcert {

namespace {

constexpr double kEps = 2.220446049250313e-16;  // 2^-52

// ---------------------------------------------------------------------
// Dense tensor indexing

struct Dims {
  std::vector<int> len;            // per-axis count (degree + 1)
  std::vector<std::size_t> stride;
  std::size_t total = 1;

  explicit Dims(std::vector<int> l) : len(std::move(l)) {
    stride.resize(len.size());
    for (int a = static_cast<int>(len.size()) - 1; a >= 0; --a) {
      stride[a] = total;
      total *= static_cast<std::size_t>(len[a]);
    }
  }
};

// Calls fn(base) for the start offset of every line along `axis`.
template <typename F>
void for_each_line(const Dims& d, int axis, F fn) {
  std::size_t L = static_cast<std::size_t>(d.len[axis]);
  std::size_t s = d.stride[axis];
  for (std::size_t i = 0; i < d.total; ++i) {
    if ((i / s) % L == 0) fn(i);
  }
}

// ---------------------------------------------------------------------
// Exact Bernstein conversion

// In-place change of variable x -> a + w*u along one axis:
// new_c[j] = sum_{k>=j} C(k,j) a^(k-j) w^j c[k].
void shift_axis(std::vector<mpq_class>& c, const Dims& d, int axis,
                const mpq_class& a, const mpq_class& w) {
  int L = d.len[axis];
  std::size_t s = d.stride[axis];
  std::vector<mpq_class> apow(L), wpow(L);
  apow[0] = 1;
  wpow[0] = 1;
  for (int i = 1; i < L; ++i) {
    apow[i] = apow[i - 1] * a;
    wpow[i] = wpow[i - 1] * w;
  }
  std::vector<mpq_class> line(L), out(L);
  for_each_line(d, axis, [&](std::size_t base) {
    for (int i = 0; i < L; ++i) line[i] = c[base + s * i];
    for (int j = 0; j < L; ++j) {
      mpq_class acc = 0;
      for (int k = j; k < L; ++k) {
        mpq_class b(binomial(k, j));
        acc += b * apow[k - j] * line[k];
      }
      out[j] = acc * wpow[j];
    }
    for (int i = 0; i < L; ++i) c[base + s * i] = out[i];
  });
}

// Power basis on [0,1] -> Bernstein: b[j] = sum_{k<=j} C(j,k)/C(d,k) c[k].
void power_to_bernstein_axis(std::vector<mpq_class>& c, const Dims& d,
                             int axis) {
  int L = d.len[axis];
  int deg = L - 1;
  std::size_t s = d.stride[axis];
  std::vector<mpq_class> line(L), out(L);
  std::vector<mpq_class> inv_cdk(L);
  for (int k = 0; k < L; ++k)
    inv_cdk[k] = mpq_class(1) / mpq_class(binomial(deg, k));
  for_each_line(d, axis, [&](std::size_t base) {
    for (int i = 0; i < L; ++i) line[i] = c[base + s * i];
    for (int j = 0; j < L; ++j) {
      mpq_class acc = 0;
      for (int k = 0; k <= j; ++k)
        acc += mpq_class(binomial(j, k)) * inv_cdk[k] * line[k];
      out[j] = acc;
    }
    for (int i = 0; i < L; ++i) c[base + s * i] = out[i];
  });
}

struct ExactBernstein {
  Dims dims;
  std::vector<mpq_class> coeff;
};

ExactBernstein to_bernstein(const Polynomial& p, const Box& box,
                            std::size_t tensor_budget) {
  int n = p.n_vars();
  std::vector<int> len(n, 1);
  for (const auto& [idx, c] : p.terms())
    for (int v = 0; v < n; ++v)
      len[v] = std::max(len[v], static_cast<int>(idx[v]) + 1);
  std::size_t total = 1;
  for (int v = 0; v < n; ++v) {
    if (total > tensor_budget / static_cast<std::size_t>(len[v]))
      throw BudgetError("Bernstein tensor exceeds the size budget");
    total *= static_cast<std::size_t>(len[v]);
  }
  Dims d(len);
  std::vector<mpq_class> c(d.total, mpq_class(0));
  for (const auto& [idx, coeff] : p.terms()) {
    std::size_t off = 0;
    for (int v = 0; v < n; ++v) off += d.stride[v] * idx[v];
    c[off] = coeff;
  }
  for (int v = 0; v < n; ++v) {
    const auto& [a, b] = box.intervals[v];
    shift_axis(c, d, v, a, b - a);
    power_to_bernstein_axis(c, d, v);
  }
  return ExactBernstein{std::move(d), std::move(c)};
}

// ---------------------------------------------------------------------
// Branch-and-bound nodes: Bernstein tensors over double coefficients
// with one rigorous error radius per node.

struct Node {
  std::vector<int> len;
  std::vector<std::size_t> stride;
  std::size_t total = 0;
  std::vector<double> coeff;
  double err = 0.0;  // |stored - true| <= err for every coefficient
  std::vector<double> box_lo, box_hi;
  double hi = 0.0;  // certified sup |f| bound over the node's box

  bool operator<(const Node& other) const { return hi < other.hi; }
};

void recompute_bound(Node& nd) {
  double m = 0.0;
  for (double c : nd.coeff) m = std::max(m, std::fabs(c));
  nd.hi = m + nd.err;
}

Node make_root(const ExactBernstein& eb, const Box& box) {
  Node nd;
  nd.len = eb.dims.len;
  nd.stride = eb.dims.stride;
  nd.total = eb.dims.total;
  nd.coeff.resize(nd.total);
  double m = 0.0;
  for (std::size_t i = 0; i < nd.total; ++i) {
    nd.coeff[i] = eb.coeff[i].get_d();
    m = std::max(m, std::fabs(nd.coeff[i]));
  }
  nd.err = 4.0 * kEps * m;  // conversion to double, generously
  nd.box_lo.resize(box.dims());
  nd.box_hi.resize(box.dims());
  for (int v = 0; v < box.dims(); ++v) {
    nd.box_lo[v] = RoundedInterval::from_rational(box.intervals[v].first, 64)
                       .lower_double();
    nd.box_hi[v] = RoundedInterval::from_rational(box.intervals[v].second, 64)
                       .upper_double();
  }
  recompute_bound(nd);
  return nd;
}

template <typename F>
void node_for_each_line(const Node& nd, int axis, F fn) {
  std::size_t L = static_cast<std::size_t>(nd.len[axis]);
  std::size_t s = nd.stride[axis];
  for (std::size_t i = 0; i < nd.total; ++i)
    if ((i / s) % L == 0) fn(i);
}

// De Casteljau halving along one axis. Children inherit err plus the
// averaging roundoff.
std::pair<Node, Node> split_node(const Node& nd, int axis) {
  Node left = nd, right = nd;
  int L = nd.len[axis];
  std::size_t s = nd.stride[axis];
  std::vector<double> tmp(L);
  node_for_each_line(nd, axis, [&](std::size_t base) {
    for (int i = 0; i < L; ++i) tmp[i] = nd.coeff[base + s * i];
    left.coeff[base] = tmp[0];
    right.coeff[base + s * (L - 1)] = tmp[L - 1];
    for (int r = 1; r < L; ++r) {
      for (int j = 0; j <= L - 1 - r; ++j) tmp[j] = 0.5 * (tmp[j] + tmp[j + 1]);
      left.coeff[base + s * r] = tmp[0];
      right.coeff[base + s * (L - 1 - r)] = tmp[L - 1 - r];
    }
  });
  double m = 0.0;
  for (double c : nd.coeff) m = std::max(m, std::fabs(c));
  double extra = 4.0 * kEps * m * static_cast<double>(L);
  left.err = nd.err + extra;
  right.err = nd.err + extra;
  double mid = 0.5 * (nd.box_lo[axis] + nd.box_hi[axis]);
  left.box_hi[axis] = mid;
  right.box_lo[axis] = mid;
  recompute_bound(left);
  recompute_bound(right);
  return {std::move(left), std::move(right)};
}

// Restricting to a face keeps only the boundary slice of the tensor.
void slice_face(Node& nd, int axis, bool upper) {
  int L = nd.len[axis];
  std::size_t s = nd.stride[axis];
  std::size_t keep = upper ? static_cast<std::size_t>(L - 1) : 0;
  std::vector<double> out;
  out.reserve(nd.total / L);
  for (std::size_t i = 0; i < nd.total; ++i)
    if ((i / s) % L == keep) out.push_back(nd.coeff[i]);
  nd.coeff = std::move(out);
  nd.total /= static_cast<std::size_t>(L);
  nd.len[axis] = 1;
  // Rebuild strides for the shrunken tensor.
  std::size_t st = 1;
  for (int a = static_cast<int>(nd.len.size()) - 1; a >= 0; --a) {
    nd.stride[a] = st;
    st *= static_cast<std::size_t>(nd.len[a]);
  }
  double v = upper ? nd.box_hi[axis] : nd.box_lo[axis];
  nd.box_lo[axis] = v;
  nd.box_hi[axis] = v;
}

// Monotone face reduction: when the sign of f is certain over the box
// and all Bernstein differences along an axis share a sign, sup |f| is
// attained on one face. Returns true if any axis was eliminated.
bool reduce_faces(Node& nd) {
  double cmin = std::numeric_limits<double>::infinity();
  double cmax = -cmin;
  for (double c : nd.coeff) {
    cmin = std::min(cmin, c);
    cmax = std::max(cmax, c);
  }
  int sign;
  if (cmin - nd.err > 0)
    sign = 1;
  else if (cmax + nd.err < 0)
    sign = -1;
  else
    return false;

  bool changed = false;
  for (int axis = 0; axis < static_cast<int>(nd.len.size()); ++axis) {
    int L = nd.len[axis];
    if (L <= 1) continue;
    std::size_t s = nd.stride[axis];
    bool all_up = true, all_down = true;
    for (std::size_t i = 0; i < nd.total && (all_up || all_down); ++i) {
      if ((i / s) % static_cast<std::size_t>(L) == static_cast<std::size_t>(L - 1))
        continue;
      double diff = nd.coeff[i + s] - nd.coeff[i];
      if (!(diff >= 2.0 * nd.err)) all_up = false;
      if (!(diff <= -2.0 * nd.err)) all_down = false;
    }
    if (all_up || all_down) {
      // sign > 0: |f| = f, keep the larger face; sign < 0: |f| = -f.
      bool upper = (sign > 0) ? all_up : all_down;
      slice_face(nd, axis, upper);
      changed = true;
    }
  }
  if (changed) recompute_bound(nd);
  return changed;
}

int pick_split_axis(const Node& nd) {
  int best = -1;
  double best_var = -1.0;
  for (int axis = 0; axis < static_cast<int>(nd.len.size()); ++axis) {
    int L = nd.len[axis];
    if (L <= 1) continue;
    std::size_t s = nd.stride[axis];
    double var = 0.0;
    for (std::size_t i = 0; i < nd.total; ++i) {
      if ((i / s) % static_cast<std::size_t>(L) == static_cast<std::size_t>(L - 1))
        continue;
      var = std::max(var, std::fabs(nd.coeff[i + s] - nd.coeff[i]));
    }
    if (var > best_var) {
      best_var = var;
      best = axis;
    }
  }
  return best;
}

// Certified lower bounds from corner coefficients (exact function
// values up to err).
double corner_lower(const Node& nd) {
  int n = static_cast<int>(nd.len.size());
  int live = 0;
  for (int a = 0; a < n; ++a)
    if (nd.len[a] > 1) ++live;
  if (live > 16) return 0.0;
  double best = 0.0;
  std::size_t count = std::size_t{1} << live;
  for (std::size_t mask = 0; mask < count; ++mask) {
    std::size_t off = 0;
    int bit = 0;
    for (int a = 0; a < n; ++a) {
      if (nd.len[a] <= 1) continue;
      if (mask >> bit & 1)
        off += nd.stride[a] * static_cast<std::size_t>(nd.len[a] - 1);
      ++bit;
    }
    best = std::max(best, std::fabs(nd.coeff[off]) - nd.err);
  }
  return best;
}

// ---------------------------------------------------------------------
// Incumbent polishing (double search, exact evaluation at the result)

double abs_eval(const Polynomial& p, const std::vector<double>& x) {
  return std::fabs(eval_real(p, x));
}

void ascend_axis(const Polynomial& p, std::vector<double>& x, int axis,
                 double lo, double hi) {
  if (hi <= lo) return;
  const int samples = 24;
  double best_v = -1.0, best_t = x[axis];
  for (int i = 0; i <= samples; ++i) {
    x[axis] = lo + (hi - lo) * i / samples;
    double v = abs_eval(p, x);
    if (v > best_v) {
      best_v = v;
      best_t = x[axis];
    }
  }
  double step = (hi - lo) / samples;
  double a = std::max(lo, best_t - step), b = std::min(hi, best_t + step);
  for (int it = 0; it < 50; ++it) {
    double m1 = a + (b - a) / 3, m2 = b - (b - a) / 3;
    x[axis] = m1;
    double v1 = abs_eval(p, x);
    x[axis] = m2;
    double v2 = abs_eval(p, x);
    if (v1 > v2)
      b = m2;
    else
      a = m1;
  }
  x[axis] = 0.5 * (a + b);
  if (abs_eval(p, x) < best_v) x[axis] = best_t;
}

void coordinate_ascent(const Polynomial& p, std::vector<double>& x,
                       const std::vector<double>& lo,
                       const std::vector<double>& hi, int sweeps) {
  for (int s = 0; s < sweeps; ++s)
    for (int axis = 0; axis < static_cast<int>(x.size()); ++axis)
      ascend_axis(p, x, axis, lo[axis], hi[axis]);
}

// Snaps to a dyadic point inside the box and evaluates exactly.
mpq_class exact_value_at(const Polynomial& p, const std::vector<double>& x,
                         const std::vector<double>& lo,
                         const std::vector<double>& hi) {
  const double scale = 9007199254740992.0;  // 2^53
  std::vector<mpq_class> q(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double v = std::round(x[i] * scale) / scale;
    v = std::clamp(v, lo[i], hi[i]);
    q[i] = mpq_class(v);
  }
  return abs(eval_exact(p, q));
}

struct Incumbent {
  mpq_class best_exact = 0;
  double lo = 0.0;  // certified double lower bound

  void offer_exact(const mpq_class& v) {
    if (v > best_exact) {
      best_exact = v;
      lo = std::max(
          lo, RoundedInterval::from_rational(best_exact, 64).lower_double());
    }
  }
  void offer_double(double v) {
    if (v > lo) lo = v;
  }
};

void polish_in_box(const Polynomial& p, const std::vector<double>& lo,
                   const std::vector<double>& hi, Incumbent& inc,
                   int sweeps = 4) {
  std::vector<double> x(lo.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = 0.5 * (lo[i] + hi[i]);
  coordinate_ascent(p, x, lo, hi, sweeps);
  inc.offer_exact(exact_value_at(p, x, lo, hi));
}

void initial_incumbent(const Polynomial& p, const std::vector<double>& lo,
                       const std::vector<double>& hi, Incumbent& inc) {
  int n = static_cast<int>(lo.size());
  // Coarse deterministic multi-start: a 5-point grid when affordable,
  // otherwise seeded random points.
  std::vector<std::vector<double>> starts;
  double count = std::pow(5.0, n);
  std::vector<double> best_x;
  double best_v = -1.0;
  auto consider = [&](const std::vector<double>& x) {
    double v = abs_eval(p, x);
    if (v > best_v) {
      best_v = v;
      best_x = x;
    }
  };
  if (count <= 20000) {
    std::vector<int> idx(n, 0);
    std::vector<double> x(n);
    while (true) {
      for (int i = 0; i < n; ++i)
        x[i] = lo[i] + (hi[i] - lo[i]) * idx[i] / 4.0;
      consider(x);
      int a = n - 1;
      while (a >= 0 && ++idx[a] == 5) idx[a--] = 0;
      if (a < 0) break;
    }
  } else {
    std::mt19937 rng(20260823u);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> x(n);
    for (int s = 0; s < 4000; ++s) {
      for (int i = 0; i < n; ++i) x[i] = lo[i] + (hi[i] - lo[i]) * u(rng);
      consider(x);
    }
  }
  if (!best_x.empty()) {
    inc.offer_exact(exact_value_at(p, best_x, lo, hi));
    coordinate_ascent(p, best_x, lo, hi, 6);
    inc.offer_exact(exact_value_at(p, best_x, lo, hi));
  }
  polish_in_box(p, lo, hi, inc, 6);
}

}  // namespace

// ---------------------------------------------------------------------

Box Box::unit_cube(int n_vars) {
  Box b;
  b.intervals.assign(static_cast<std::size_t>(n_vars),
                     {mpq_class(-1), mpq_class(1)});
  return b;
}

std::string method_name(EnclosureMethod m) {
  switch (m) {
    case EnclosureMethod::Bernstein:
      return "bernstein";
    case EnclosureMethod::Structural:
      return "structural";
    case EnclosureMethod::L1Fallback:
      return "l1-fallback";
    case EnclosureMethod::GridLowerOnly:
      return "grid-lower-only";
  }
  return "?";
}

std::string RangeEnclosure::to_json() const {
  nlohmann::ordered_json j;
  j["lo"] = lo;
  j["hi"] = hi;
  j["method"] = method_name(method);
  j["tol"] = tol;
  j["converged"] = converged;
  j["boxes_explored"] = boxes_explored;
  return j.dump();
}

long default_box_budget() {
  if (const char* env = std::getenv("BHCERT_BUDGET")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return v;
  }
  return 1'000'000;
}

RangeEnclosure bernstein_enclosure(const Polynomial& p, const Box& box,
                                   std::size_t tensor_budget) {
  if (box.dims() != p.n_vars())
    throw std::invalid_argument("box dimension mismatch");
  RangeEnclosure enc;
  enc.method = EnclosureMethod::Bernstein;
  enc.boxes_explored = 1;
  if (p.is_zero()) return enc;
  ExactBernstein eb = to_bernstein(p, box, tensor_budget);
  mpq_class hi = 0;
  for (const auto& c : eb.coeff) {
    mpq_class a = abs(c);
    if (a > hi) hi = a;
  }
  // Corner coefficients are exact function values at box vertices.
  mpq_class lo = 0;
  int n = static_cast<int>(eb.dims.len.size());
  int live = 0;
  for (int a = 0; a < n; ++a)
    if (eb.dims.len[a] > 1) ++live;
  if (live <= 16) {
    std::size_t count = std::size_t{1} << live;
    for (std::size_t mask = 0; mask < count; ++mask) {
      std::size_t off = 0;
      int bit = 0;
      for (int a = 0; a < n; ++a) {
        if (eb.dims.len[a] <= 1) continue;
        if (mask >> bit & 1)
          off += eb.dims.stride[a] *
                 static_cast<std::size_t>(eb.dims.len[a] - 1);
        ++bit;
      }
      mpq_class v = abs(eb.coeff[off]);
      if (v > lo) lo = v;
    }
  }
  enc.hi = RoundedInterval::from_rational(hi, 64).upper_double();
  enc.lo = RoundedInterval::from_rational(lo, 64).lower_double();
  return enc;
}

namespace {

RangeEnclosure core_sup_norm(const Polynomial& p,
                             const SupNormOptions& options) {
  RangeEnclosure enc;
  enc.method = EnclosureMethod::Bernstein;
  enc.tol = options.tol;
  if (options.tol <= 0) throw std::invalid_argument("tol must be positive");
  if (p.is_zero()) return enc;

  long budget =
      options.box_budget >= 0 ? options.box_budget : default_box_budget();
  Box box = Box::unit_cube(p.n_vars());
  ExactBernstein eb = to_bernstein(p, box, options.tensor_budget);
  Node root = make_root(eb, box);

  Incumbent inc;
  initial_incumbent(p, root.box_lo, root.box_hi, inc);
  inc.offer_double(corner_lower(root));

  std::priority_queue<Node> queue;
  queue.push(std::move(root));
  double resolved_max = inc.lo;
  long pops = 0;
  bool converged = false;
  double global_hi = std::numeric_limits<double>::infinity();

  while (!queue.empty()) {
    Node nd = queue.top();
    queue.pop();
    ++pops;
    global_hi = std::max(nd.hi, resolved_max);
    if (options.trace) options.trace(inc.lo, std::max(global_hi, inc.lo));
    if (nd.hi <= inc.lo + options.tol) {
      // Heap order: everything still queued is bounded by nd.hi.
      resolved_max = std::max(resolved_max, nd.hi);
      converged = true;
      break;
    }
    if (pops > budget) break;

    while (reduce_faces(nd)) {
    }
    inc.offer_double(corner_lower(nd));
    if (pops % 4096 == 0) polish_in_box(p, nd.box_lo, nd.box_hi, inc);
    if (nd.hi <= inc.lo + options.tol) {
      resolved_max = std::max(resolved_max, nd.hi);
      continue;
    }
    int axis = pick_split_axis(nd);
    if (axis < 0) {
      // Fully reduced to a point and still wider than tol: keep the
      // sound bound, flag non-convergence at the end.
      resolved_max = std::max(resolved_max, nd.hi);
      continue;
    }
    auto [left, right] = split_node(nd, axis);
    inc.offer_double(corner_lower(left));
    inc.offer_double(corner_lower(right));
    queue.push(std::move(left));
    queue.push(std::move(right));
  }

  if (queue.empty()) {
    converged = true;
    global_hi = resolved_max;
  } else if (converged) {
    global_hi = resolved_max;
  }
  enc.lo = inc.lo;
  enc.hi = std::max(global_hi, inc.lo);
  enc.converged = converged && enc.hi <= enc.lo + options.tol;
  enc.boxes_explored = pops;
  return enc;
}

// Additive separability: when no monomial couples two variable groups,
// the polynomial is a sum of independent pieces plus a constant, and the
// range over the cube is the (attained) sum of the pieces' ranges.
struct Decomposition {
  std::vector<Polynomial> parts;  // each in its own reduced variable space
  mpq_class constant = 0;
};

std::optional<Decomposition> additive_split(const Polynomial& p) {
  int n = p.n_vars();
  if (n <= 1) return std::nullopt;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::vector<bool> used(n, false);
  for (const auto& [idx, c] : p.terms()) {
    int first = -1;
    for (int v = 0; v < n; ++v) {
      if (idx[v] == 0) continue;
      used[v] = true;
      if (first < 0)
        first = find(v);
      else
        parent[find(v)] = first;
    }
  }
  std::vector<int> comp_of(n, -1);
  int n_comps = 0;
  for (int v = 0; v < n; ++v) {
    if (!used[v]) continue;
    int root = find(v);
    if (comp_of[root] < 0) comp_of[root] = n_comps++;
    comp_of[v] = comp_of[root];
  }
  if (n_comps <= 1) return std::nullopt;

  std::vector<int> local(n, -1);
  std::vector<int> comp_vars(n_comps, 0);
  for (int v = 0; v < n; ++v)
    if (comp_of[v] >= 0) local[v] = comp_vars[comp_of[v]]++;

  Decomposition dec;
  std::vector<std::vector<std::pair<MultiIndex, mpq_class>>> terms(n_comps);
  for (const auto& [idx, c] : p.terms()) {
    int comp = -1;
    for (int v = 0; v < n && comp < 0; ++v)
      if (idx[v] > 0) comp = comp_of[v];
    if (comp < 0) {
      dec.constant += c;
      continue;
    }
    std::vector<unsigned> e(comp_vars[comp], 0);
    for (int v = 0; v < n; ++v)
      if (idx[v] > 0) e[local[v]] = idx[v];
    terms[comp].emplace_back(MultiIndex(std::move(e)), c);
  }
  for (int i = 0; i < n_comps; ++i)
    dec.parts.push_back(Polynomial::from_terms(comp_vars[i], terms[i]));
  return dec;
}

}  // namespace

RangeEnclosure certified_sup_norm(const Polynomial& p,
                                  const SupNormOptions& options) {
  std::optional<Decomposition> dec = additive_split(p);
  if (!dec) return core_sup_norm(p, options);

  auto dn = [](double x) { return std::nextafter(x, -1e308); };
  auto up = [](double x) { return std::nextafter(x, 1e308); };

  int r = static_cast<int>(dec->parts.size());
  SupNormOptions sub = options;
  sub.trace = nullptr;
  sub.tol = options.tol / (2.0 * r);

  RoundedInterval c0 = RoundedInterval::from_rational(dec->constant, 64);
  double min_lo = c0.lower_double(), min_hi = c0.upper_double();
  double max_lo = min_lo, max_hi = min_hi;
  long boxes = 0;
  bool conv = true;

  for (const Polynomial& part : dec->parts) {
    // Shift by K > l1 so both sup runs see a positive function whose
    // maximum recovers the signed endpoint exactly.
    mpq_class K = 1;
    for (const auto& [idx, c] : part.terms()) K += abs(c);
    Polynomial shift = Polynomial::from_terms(
        part.n_vars(), {{MultiIndex(std::vector<unsigned>(part.n_vars(), 0)), K}});
    RangeEnclosure eplus = core_sup_norm(add(part, shift), sub);
    RangeEnclosure eminus = core_sup_norm(add(scale(part, -1), shift), sub);
    boxes += eplus.boxes_explored + eminus.boxes_explored;
    conv = conv && eplus.converged && eminus.converged;

    double k_lo = RoundedInterval::from_rational(K, 64).lower_double();
    double k_hi = RoundedInterval::from_rational(K, 64).upper_double();
    // part + K > 0 pointwise: sup|part + K| = K + max(part).
    max_lo = dn(max_lo + dn(eplus.lo - k_hi));
    max_hi = up(max_hi + up(eplus.hi - k_lo));
    // K - part > 0 pointwise: sup|K - part| = K - min(part).
    min_lo = dn(min_lo + dn(k_lo - eminus.hi));
    min_hi = up(min_hi + up(k_hi - eminus.lo));
  }

  auto magnitude = [](double lo, double hi) -> std::pair<double, double> {
    if (lo >= 0) return {lo, hi};
    if (hi <= 0) return {-hi, -lo};
    return {0.0, std::max(-lo, hi)};
  };
  auto [neg_lo, neg_hi] = magnitude(min_lo, min_hi);
  auto [pos_lo, pos_hi] = magnitude(max_lo, max_hi);

  RangeEnclosure enc;
  enc.method = EnclosureMethod::Bernstein;
  enc.tol = options.tol;
  enc.lo = std::max(neg_lo, pos_lo);
  enc.hi = std::max(neg_hi, pos_hi);
  enc.boxes_explored = boxes;
  enc.converged = conv && std::isfinite(enc.hi) &&
                  enc.hi <= enc.lo + options.tol;
  if (options.trace) options.trace(enc.lo, enc.hi);
  return enc;
}

RangeEnclosure certified_sup_norm(const Polynomial& p, double tol) {
  SupNormOptions opt;
  opt.tol = tol;
  return certified_sup_norm(p, opt);
}

namespace {

// Range of Q_{2^k} over the unit cube by exact propagation through the
// recursion q = a^2 - b^2 with independent halves; every bound is
// attained, so the sup norm is exact.
std::pair<mpq_class, mpq_class> q_tower_range(int k) {
  if (k == 1) return {mpq_class(-1), mpq_class(1)};
  auto [lo, hi] = q_tower_range(k - 1);
  mpq_class m = std::max(abs(lo), abs(hi));
  mpq_class sq_hi = m * m;  // square range is [0, m^2], both attained
  return {-sq_hi, sq_hi};
}

mpq_class pow_q(const mpq_class& base, int n) {
  mpq_class r = 1;
  for (int i = 0; i < n; ++i) r *= base;
  return r;
}

RangeEnclosure exact_point_enclosure(const mpq_class& v) {
  RangeEnclosure enc;
  enc.method = EnclosureMethod::Structural;
  enc.lo = RoundedInterval::from_rational(v, 64).lower_double();
  enc.hi = RoundedInterval::from_rational(v, 64).upper_double();
  return enc;
}

}  // namespace

RangeEnclosure structural_sup_norm(const FamilySpec& spec) {
  switch (spec.kind) {
    case FamilySpec::Kind::REven:
      // Disjoint blocks: the sup factors into (5/4) per block.
      return exact_point_enclosure(pow_q(mpq_class(5, 4), spec.m / 2));
    case FamilySpec::Kind::QTower:
    case FamilySpec::Kind::QTowerPower: {
      auto [lo, hi] = q_tower_range(spec.k);
      mpq_class norm = std::max(abs(lo), abs(hi));
      int n = spec.kind == FamilySpec::Kind::QTowerPower ? spec.n : 1;
      return exact_point_enclosure(pow_q(norm, n));
    }
    case FamilySpec::Kind::P4Power: {
      // ||P4^n|| = (2 sqrt(3) / 9)^n, enclosed outward.
      RoundedInterval v = RoundedInterval::from_long(3, 192)
                              .sqrt()
                              .mul(RoundedInterval::from_long(2, 192))
                              .div(RoundedInterval::from_long(9, 192))
                              .pow_ui(static_cast<unsigned long>(spec.n));
      RangeEnclosure enc;
      enc.method = EnclosureMethod::Structural;
      enc.lo = v.lower_double();
      enc.hi = v.upper_double();
      return enc;
    }
    case FamilySpec::Kind::ROdd: {
      // No exact closed form is known for the odd sup norm; the
      // certificate only needs the triangle-inequality upper bound
      // 2 * (5/4)^((m-1)/2), paired with a polished exact lower value.
      mpq_class hi = 2 * pow_q(mpq_class(5, 4), (spec.m - 1) / 2);
      RangeEnclosure enc;
      enc.method = EnclosureMethod::Structural;
      enc.hi = RoundedInterval::from_rational(hi, 64).upper_double();
      Polynomial p = r_odd(spec.m);
      Incumbent inc;
      std::vector<double> lo(p.n_vars(), -1.0), up(p.n_vars(), 1.0);
      initial_incumbent(p, lo, up, inc);
      enc.lo = inc.lo;
      return enc;
    }
  }
  throw std::logic_error("unreachable");
}

double torus_sup_estimate(const Polynomial& p, int grid_per_dim,
                          int polish_iters) {
  if (grid_per_dim < 4)
    throw std::invalid_argument("torus grid needs at least 4 points per dim");
  int n = p.n_vars();
  if (p.is_zero()) return 0.0;
  // Each term contributes coeff * exp(i <alpha, theta>).
  std::vector<double> coeffs;
  std::vector<std::vector<unsigned>> alphas;
  for (const auto& [idx, c] : p.terms()) {
    coeffs.push_back(c.get_d());
    alphas.push_back(idx.exponents);
  }
  auto modulus_at = [&](const std::vector<double>& theta) {
    double re = 0.0, im = 0.0;
    for (std::size_t t = 0; t < coeffs.size(); ++t) {
      double phase = 0.0;
      for (int v = 0; v < n; ++v) phase += alphas[t][v] * theta[v];
      re += coeffs[t] * std::cos(phase);
      im += coeffs[t] * std::sin(phase);
    }
    return std::hypot(re, im);
  };

  // Homogeneous polynomials pick up only a global phase under a common
  // rotation, so the first angle can be pinned to zero on the grid.
  unsigned deg = p.degree().value();
  int first_free = p.is_homogeneous(deg) && n > 1 ? 1 : 0;
  double points = std::pow(static_cast<double>(grid_per_dim), n - first_free);
  if (points > 4e7) throw BudgetError("torus grid too large");

  std::vector<double> theta(n, 0.0), best_theta(n, 0.0);
  double best = modulus_at(theta);
  std::vector<int> idx(n, 0);
  const double step = 2.0 * M_PI / grid_per_dim;
  while (true) {
    int a = n - 1;
    while (a >= first_free && ++idx[a] == grid_per_dim) idx[a--] = 0;
    if (a < first_free) break;
    for (int v = first_free; v < n; ++v) theta[v] = idx[v] * step;
    double m = modulus_at(theta);
    if (m > best) {
      best = m;
      best_theta = theta;
    }
  }

  // Coordinate ascent on the angles.
  std::vector<double> x = best_theta;
  for (int sweep = 0; sweep < polish_iters; ++sweep) {
    for (int axis = 0; axis < n; ++axis) {
      double center = x[axis];
      double half = step;
      double lo = center - half, hi = center + half;
      for (int it = 0; it < 60; ++it) {
        double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
        x[axis] = m1;
        double v1 = modulus_at(x);
        x[axis] = m2;
        double v2 = modulus_at(x);
        if (v1 > v2)
          hi = m2;
        else
          lo = m1;
      }
      x[axis] = 0.5 * (lo + hi);
      double v = modulus_at(x);
      if (v > best) best = v;
      else x[axis] = center;
    }
  }
  return best;
}

RangeEnclosure l1_upper(const Polynomial& p) {
  RangeEnclosure enc;
  enc.method = EnclosureMethod::L1Fallback;
  mpq_class s = 0;
  for (const auto& [idx, c] : p.terms()) s += abs(c);
  enc.hi = RoundedInterval::from_rational(s, 64).upper_double();
  enc.lo = 0.0;
  return enc;
}

RangeEnclosure grid_lower_enclosure(const Polynomial& p) {
  RangeEnclosure enc;
  enc.method = EnclosureMethod::GridLowerOnly;
  enc.hi = std::numeric_limits<double>::infinity();
  if (p.is_zero()) {
    enc.hi = 0.0;
    return enc;
  }
  Incumbent inc;
  std::vector<double> lo(p.n_vars(), -1.0), hi(p.n_vars(), 1.0);
  initial_incumbent(p, lo, hi, inc);
  enc.lo = inc.lo;
  return enc;
}

}  // namespace bhcert
