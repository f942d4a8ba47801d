// Command-line front end: construct the witness families, compute norms,
// emit certificates and sweeps, and run the numerical checks.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bhcert/certify.hpp"
#include "bhcert/normcalc.hpp"
#include "bhcert/oracle.hpp"

namespace {

using namespace bhcert;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNotConverged = 2;
constexpr int kExitInternal = 3;

struct RunConfig {
  double tol = 1e-9;
  long precision_bits = 128;
  int grid = 64;
  std::string format = "json";
  std::string out_path;
};

void write_output(const RunConfig& cfg, const std::string& payload) {
  if (cfg.out_path.empty()) {
    std::cout << payload;
    if (!payload.empty() && payload.back() != '\n') std::cout << '\n';
  } else {
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + cfg.out_path);
    out << payload;
  }
}

int cmd_family(const RunConfig& cfg, const std::string& spec_str) {
  FamilySpec spec = FamilySpec::parse(spec_str);
  Polynomial p = build_family(spec);
  std::ostringstream out;
  out << p.to_text();
  out << "# terms=" << p.term_count() << " degree=" << spec.degree()
      << " vars=" << p.n_vars() << "\n";
  write_output(cfg, out.str());
  return kExitOk;
}

int cmd_norms(const RunConfig& cfg, const std::string& spec_str) {
  FamilySpec spec = FamilySpec::parse(spec_str);
  Polynomial p = build_family(spec);
  BHExponent e = bh_exponent(spec.degree());
  BoundedReal bh = coeff_lp_norm(p, e.value, cfg.precision_bits);
  nlohmann::ordered_json j;
  j["family"] = spec.to_string();
  j["l1"] = coeff_l1(p).get_str();
  j["l2_sq"] = coeff_l2_norm_sq(p).get_str();
  j["sup"] = coeff_sup(p).get_str();
  j["bh_exponent"] = e.value.get_num().get_str() + "/" + e.value.get_den().get_str();
  j["bh_norm"] = {{"value", bh.value}, {"abs_err", bh.abs_err}};
  write_output(cfg, j.dump(2));
  return kExitOk;
}

int cmd_supnorm(const RunConfig& cfg, const std::string& spec_str,
                const std::string& method) {
  FamilySpec spec = FamilySpec::parse(spec_str);
  RangeEnclosure enc;
  if (method == "structural" || method == "auto") {
    enc = structural_sup_norm(spec);
  } else if (method == "bernstein") {
    SupNormOptions opt;
    opt.tol = cfg.tol;
    enc = certified_sup_norm(build_family(spec), opt);
  } else {
    throw CLI::ValidationError("unknown method: " + method);
  }
  write_output(cfg, enc.to_json());
  return enc.converged ? kExitOk : kExitNotConverged;
}

int cmd_certify(const RunConfig& cfg, const std::string& spec_str) {
  FamilySpec spec = FamilySpec::parse(spec_str);
  BoundCertificate cert = certify_family(spec, cfg.precision_bits);
  cert.tol = cfg.tol;
  write_output(cfg, cert.to_json());
  if (!cert.denominator.converged) return kExitNotConverged;
  if (cert.closed_form_value && cert.ratio_lower < *cert.closed_form_value)
    return kExitNotConverged;
  return kExitOk;
}

// Range token grammar: "[name=]a" or "[name=]a..b".
struct RangeToken {
  std::string name;
  int lo = 0, hi = 0;
};

RangeToken parse_range(const std::string& token) {
  RangeToken r;
  std::string body = token;
  auto eq = body.find('=');
  if (eq != std::string::npos) {
    r.name = body.substr(0, eq);
    body = body.substr(eq + 1);
  }
  auto dots = body.find("..");
  try {
    if (dots == std::string::npos) {
      r.lo = r.hi = std::stoi(body);
    } else {
      r.lo = std::stoi(body.substr(0, dots));
      r.hi = std::stoi(body.substr(dots + 2));
    }
  } catch (const std::exception&) {
    throw CLI::ValidationError("bad range token: " + token);
  }
  return r;
}

std::vector<FamilySpec> expand_sweep(const std::string& family,
                                     const std::vector<std::string>& tokens) {
  std::vector<RangeToken> ranges;
  for (const auto& t : tokens) ranges.push_back(parse_range(t));
  std::vector<FamilySpec> specs;
  auto find = [&](const std::string& name) -> const RangeToken* {
    for (const auto& r : ranges)
      if (r.name == name || (r.name.empty() && ranges.size() == 1)) return &r;
    return nullptr;
  };
  if (family == "R") {
    const RangeToken* r = find("m");
    if (!r) throw CLI::ValidationError("sweep R needs a range, e.g. 2..10");
    // Stepping by two keeps the sweep within one parity class.
    for (int m = r->lo; m <= r->hi; m += 2) specs.push_back(FamilySpec::r(m));
  } else if (family == "Q") {
    const RangeToken* r = find("k");
    if (!r) throw CLI::ValidationError("sweep Q needs a range, e.g. 1..3");
    for (int k = r->lo; k <= r->hi; ++k) specs.push_back(FamilySpec::q(k));
  } else if (family == "Qpow") {
    const RangeToken* rk = find("k");
    const RangeToken* rn = find("n");
    if (!rk || !rn)
      throw CLI::ValidationError("sweep Qpow needs k=.. and n=.. ranges");
    for (int k = rk->lo; k <= rk->hi; ++k)
      for (int n = rn->lo; n <= rn->hi; ++n)
        specs.push_back(FamilySpec::qpow(k, n));
  } else if (family == "P4pow") {
    const RangeToken* r = find("n");
    if (!r) throw CLI::ValidationError("sweep P4pow needs a range, e.g. n=1..6");
    for (int n = r->lo; n <= r->hi; ++n) specs.push_back(FamilySpec::p4pow(n));
  } else {
    throw CLI::ValidationError("unknown sweep family: " + family);
  }
  return specs;
}

std::string sweep_csv(const SweepResult& res) {
  std::ostringstream out;
  out << "m,n_vars,ratio_lower,closed_form,ratio_lower_root_m\n";
  for (const auto& c : res.certificates) {
    double root = std::pow(c.ratio_lower, 1.0 / c.m);
    out << c.m << ',' << c.n_vars << ',' << format_real(c.ratio_lower) << ','
        << (c.closed_form_value ? format_real(*c.closed_form_value) : "")
        << ',' << format_real(root) << '\n';
  }
  for (const auto& e : res.errors) out << "# error " << e << '\n';
  return out.str();
}

std::string sweep_json(const SweepResult& res) {
  std::string out = "[\n";
  for (std::size_t i = 0; i < res.certificates.size(); ++i) {
    out += res.certificates[i].to_json();
    if (i + 1 < res.certificates.size()) out += ",";
    out += "\n";
  }
  out += "]\n";
  return out;
}

std::string sweep_svg(const SweepResult& res, const std::string& family,
                      const std::vector<FamilySpec>& specs) {
  // Log-scale plot of ratio_lower^(1/m) against m, with the reference
  // levels the closed-form floors approach.
  const int w = 640, h = 420, ml = 60, mr = 20, mt = 20, mb = 40;
  double xmin = 1e300, xmax = -1e300;
  for (const auto& c : res.certificates) {
    xmin = std::min(xmin, static_cast<double>(c.m));
    xmax = std::max(xmax, static_cast<double>(c.m));
  }
  if (res.certificates.empty()) {
    xmin = 0;
    xmax = 1;
  }
  if (xmax == xmin) xmax = xmin + 1;
  double ymin = 1.0, ymax = 2.1;
  auto sx = [&](double m) {
    return ml + (m - xmin) / (xmax - xmin) * (w - ml - mr);
  };
  auto sy = [&](double v) {
    double t = (std::log(v) - std::log(ymin)) / (std::log(ymax) - std::log(ymin));
    return h - mb - t * (h - mt - mb);
  };
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
      << "\" height=\"" << h << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  struct Ref {
    double v;
    std::string label;
  };
  std::vector<Ref> refs = {{1.17, "1.17"},
                           {1.50980364847710, "27^(1/8)"},
                           {2.0, "2"}};
  if (family == "Qpow" && !specs.empty()) {
    int k = specs.front().k;
    double v = std::pow(2.0, 1.0 - std::pow(2.0, -k));
    refs.push_back({v, "2^(1-2^-" + std::to_string(k) + ")"});
  }
  for (const auto& r : refs) {
    double y = sy(r.v);
    out << "<line x1=\"" << ml << "\" y1=\"" << y << "\" x2=\"" << w - mr
        << "\" y2=\"" << y
        << "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
    out << "<text x=\"" << w - mr - 4 << "\" y=\"" << y - 3
        << "\" text-anchor=\"end\" font-size=\"11\" fill=\"#555\">" << r.label
        << "</text>\n";
  }
  out << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr
      << "\" y2=\"" << h - mb << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
      << "\" y2=\"" << h - mb << "\" stroke=\"black\"/>\n";
  std::ostringstream pts;
  for (const auto& c : res.certificates) {
    double root = std::pow(c.ratio_lower, 1.0 / c.m);
    pts << sx(c.m) << ',' << sy(std::clamp(root, ymin, ymax)) << ' ';
  }
  out << "<polyline points=\"" << pts.str()
      << "\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\"/>\n";
  for (const auto& c : res.certificates) {
    double root = std::pow(c.ratio_lower, 1.0 / c.m);
    out << "<circle cx=\"" << sx(c.m) << "\" cy=\""
        << sy(std::clamp(root, ymin, ymax))
        << "\" r=\"3\" fill=\"#1f77b4\"/>\n";
  }
  out << "<text x=\"" << (ml + w - mr) / 2 << "\" y=\"" << h - 8
      << "\" text-anchor=\"middle\" font-size=\"12\">m</text>\n";
  out << "<text x=\"14\" y=\"" << (mt + h - mb) / 2
      << "\" font-size=\"12\" transform=\"rotate(-90 14 "
      << (mt + h - mb) / 2 << ")\">ratio_lower^(1/m)</text>\n";
  out << "</svg>\n";
  return out.str();
}

int cmd_sweep(const RunConfig& cfg, const std::string& family,
              const std::vector<std::string>& tokens) {
  std::vector<FamilySpec> specs = expand_sweep(family, tokens);
  SweepResult res = sweep(specs, cfg.precision_bits);
  for (auto& c : res.certificates) c.tol = cfg.tol;
  std::string payload;
  if (cfg.format == "csv") {
    payload = sweep_csv(res);
  } else if (cfg.format == "json") {
    payload = sweep_json(res);
  } else if (cfg.format == "svg") {
    payload = sweep_svg(res, family, specs);
  } else {
    throw CLI::ValidationError("unknown format: " + cfg.format);
  }
  write_output(cfg, payload);
  return res.errors.empty() ? kExitOk : kExitNotConverged;
}

std::vector<FamilySpec> small_builtin_families() {
  std::vector<FamilySpec> specs = {FamilySpec::r(2), FamilySpec::r(4),
                                   FamilySpec::q(1), FamilySpec::q(2)};
  for (int n = 1; n <= 4; ++n) specs.push_back(FamilySpec::qpow(1, n));
  for (int n = 1; n <= 2; ++n) specs.push_back(FamilySpec::qpow(2, n));
  for (int n = 1; n <= 2; ++n) specs.push_back(FamilySpec::p4pow(n));
  return specs;
}

int cmd_check(const RunConfig& cfg, const std::string& kind) {
  std::ostringstream out;
  bool all_ok = true;
  if (kind == "visser") {
    for (const auto& spec : small_builtin_families()) {
      unsigned m = spec.degree();
      if (m > 8 || spec.variable_count() > 4) continue;
      Polynomial p = build_family(spec);
      VisserReport rep = check_visser(p, m, cfg.grid, structural_sup_norm(spec));
      out << spec.to_string() << " ratio=" << format_real(rep.ratio)
          << " bound=" << format_real(rep.bound) << " : "
          << (rep.holds ? "pass" : "inconclusive - refine") << "\n";
      all_ok = all_ok && rep.holds;
    }
  } else if (kind == "parseval") {
    for (const auto& spec : small_builtin_families()) {
      if (spec.variable_count() > 4) continue;
      Polynomial p = build_family(spec);
      bool ok = check_parseval(p, cfg.grid);
      out << spec.to_string() << " : " << (ok ? "pass" : "inconclusive")
          << "\n";
      all_ok = all_ok && ok;
    }
  } else if (kind == "identities") {
    bool a = oracle::binom_identity_check(50);
    bool b = oracle::product_inequality_check(50);
    bool c = oracle::binomial_sum_bound_check(50);
    out << "sum C(n,k)^2 == C(2n,n), n<=50 : " << (a ? "pass" : "FAIL") << "\n";
    out << "(2k+1)(2n-2k+1) <= (n+1)^2, n<=50 : " << (b ? "pass" : "FAIL")
        << "\n";
    out << "2^n <= (n+1) max_k C(n,k), n<=50 : " << (c ? "pass" : "FAIL")
        << "\n";
    all_ok = a && b && c;
  } else {
    throw CLI::ValidationError("unknown check: " + kind);
  }
  write_output(cfg, out.str());
  return all_ok ? kExitOk : kExitNotConverged;
}

int cmd_oracle(const RunConfig& cfg, const std::vector<std::string>& args) {
  if (args.empty()) throw CLI::ValidationError("oracle needs a subcommand");
  std::ostringstream out;
  if (args[0] == "grid" && args.size() == 3) {
    Polynomial p = build_family(FamilySpec::parse(args[1]));
    out << format_real(oracle::grid_sup_lower(p, std::stoi(args[2]))) << "\n";
  } else if (args[0] == "expand" && args.size() == 2) {
    out << oracle::naive_expand(FamilySpec::parse(args[1])).to_text();
  } else if (args[0] == "binom" && args.size() == 2) {
    out << (oracle::binom_identity_check(std::stoi(args[1])) ? "pass" : "FAIL")
        << "\n";
  } else if (args[0] == "stirling" && args.size() == 2) {
    out << format_real(oracle::stirling_gap(std::stoi(args[1]))) << "\n";
  } else {
    throw CLI::ValidationError("unknown oracle subcommand");
  }
  write_output(cfg, out.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Certified lower bounds for real polynomial "
               "Bohnenblust-Hille constants"};
  app.require_subcommand(1);
  app.add_option("--tol", cfg.tol, "enclosure tolerance")->check(CLI::PositiveNumber);
  app.add_option("--precision-bits", cfg.precision_bits,
                 "working precision for rounded norms")
      ->check(CLI::Range(64L, 8192L));
  app.add_option("--grid", cfg.grid, "torus grid points per dimension");
  app.add_option("--format", cfg.format, "output format: json, csv, svg");
  app.add_option("--out", cfg.out_path, "output file (default stdout)");

  std::string spec_str, method = "auto", check_kind, sweep_family;
  std::vector<std::string> sweep_tokens, oracle_args;

  auto* family = app.add_subcommand("family", "print a family polynomial");
  family->add_option("spec", spec_str)->required();
  auto* norms = app.add_subcommand("norms", "coefficient norms of a family");
  norms->add_option("spec", spec_str)->required();
  auto* supnorm = app.add_subcommand("supnorm", "certified sup-norm enclosure");
  supnorm->add_option("spec", spec_str)->required();
  supnorm->add_option("--method", method, "auto, structural, or bernstein");
  auto* certify = app.add_subcommand("certify", "emit a lower-bound certificate");
  certify->add_option("spec", spec_str)->required();
  auto* sweep_cmd = app.add_subcommand("sweep", "batch certificates over a range");
  sweep_cmd->add_option("family", sweep_family)->required();
  sweep_cmd->add_option("ranges", sweep_tokens);
  auto* check = app.add_subcommand("check", "visser, parseval, or identities");
  check->add_option("kind", check_kind)->required();
  auto* oracle_cmd = app.add_subcommand("oracle", "");
  oracle_cmd->group("");  // hidden
  oracle_cmd->add_option("args", oracle_args);

  // Global flags may appear after the subcommand.
  for (auto* sub : {family, norms, supnorm, certify, sweep_cmd, check,
                    oracle_cmd})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (family->parsed()) return cmd_family(cfg, spec_str);
    if (norms->parsed()) return cmd_norms(cfg, spec_str);
    if (supnorm->parsed()) return cmd_supnorm(cfg, spec_str, method);
    if (certify->parsed()) return cmd_certify(cfg, spec_str);
    if (sweep_cmd->parsed()) return cmd_sweep(cfg, sweep_family, sweep_tokens);
    if (check->parsed()) return cmd_check(cfg, check_kind);
    if (oracle_cmd->parsed()) return cmd_oracle(cfg, oracle_args);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const bhcert::BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNotConverged;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
