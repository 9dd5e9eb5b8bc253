#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "kronecker/kronecker.hpp"

namespace {

using kronecker::Rational;
using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitInvalid = 2;

std::string decimal(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

json opt_json(const std::optional<Rational>& v) { return v ? json(v->str()) : json(nullptr); }

json interval_json(const kronecker::AlphaInterval& a, const std::vector<std::int64_t>& set) {
  json j;
  j["set"] = set;
  j["method"] = a.method;
  j["alpha_lo"] = a.lo.str();
  j["alpha_hi"] = a.hi.str();
  j["alpha_exact"] = opt_json(a.exact);
  j["width"] = a.width().str();
  j["alpha_lo_decimal"] = decimal(a.lo.to_double());
  j["alpha_hi_decimal"] = decimal(a.hi.to_double());
  return j;
}

void print_interval(const kronecker::AlphaInterval& a, bool as_json,
                    const std::vector<std::int64_t>& set) {
  if (as_json) {
    std::cout << interval_json(a, set).dump(2) << '\n';
    return;
  }
  std::cout << "method   " << a.method << '\n';
  if (a.exact) std::cout << "alpha    " << a.exact->str() << " = " << decimal(a.exact->to_double()) << '\n';
  std::cout << "alpha_lo " << a.lo.str() << " = " << decimal(a.lo.to_double()) << '\n'
            << "alpha_hi " << a.hi.str() << " = " << decimal(a.hi.to_double()) << '\n'
            << "width    " << decimal(a.width().to_double()) << '\n';
}

kronecker::AlphaInterval exact_interval(const Rational& v, const char* method) {
  return {v, v, v, method};
}

int run_alpha(const std::vector<std::int64_t>& set, const std::string& method, double tol,
              bool as_json) {
  if (set.size() != 2 && set.size() != 3) throw kronecker::InvalidArgument("alpha takes 2 or 3 integers");
  if (!(tol > 0)) throw kronecker::InvalidArgument("tolerance must be positive");
  const Rational tol_q = Rational::from_double(tol);
  if (method == "oracle") {
    print_interval(kronecker::oracle_alpha(std::span<const std::int64_t>(set)), as_json, set);
    return kExitOk;
  }
  if (set.size() == 2) {
    print_interval(exact_interval(kronecker::alpha_pair(set[0], set[1]), "pair-formula"), as_json, set);
    return kExitOk;
  }
  const auto ct = kronecker::canonicalize({set[0], set[1], set[2]});
  if (kronecker::route_for(ct) == kronecker::Route::Oracle) {
    print_interval(kronecker::oracle_alpha(std::span<const std::int64_t>(set)), as_json, set);
    return kExitOk;
  }
  const kronecker::CoveringInstance inst(ct);
  if (method == "exact") {
    print_interval(exact_interval(kronecker::exact_alpha(inst), "exact"), as_json, set);
  } else {
    print_interval(kronecker::certified_alpha(inst, tol_q), as_json, set);
  }
  return kExitOk;
}

int run_bounds(const std::vector<std::int64_t>& set, bool as_json) {
  if (set.size() != 3) throw kronecker::InvalidArgument("bounds takes 3 integers");
  const auto ct = kronecker::canonicalize({set[0], set[1], set[2]});
  const auto rep = kronecker::bound_report(ct);
  std::optional<kronecker::LatticeResult> lr;
  if (ct.distinct_abs) lr = kronecker::lattice_params(ct);
  const auto& t = lr ? lr->triple : ct;
  if (as_json) {
    json j;
    j["set"] = set;
    j["canonical"] = {t.n1, t.n2, t.n3};
    j["distinct_abs"] = rep.distinct_abs;
    j["m"] = rep.lattice ? json(rep.lattice->m) : json(nullptr);
    j["r"] = rep.lattice ? json(rep.lattice->r) : json(nullptr);
    j["rectangular"] = rep.rectangular;
    j["trivial"] = rep.trivial.str();
    j["lower"] = opt_json(rep.lower);
    j["e1"] = opt_json(rep.e1);
    j["upper"] = opt_json(rep.upper);
    j["lambda"] = opt_json(rep.lambda);
    std::cout << j.dump(2) << '\n';
    return kExitOk;
  }
  std::cout << "canonical " << t.n1 << ' ' << t.n2 << ' ' << t.n3 << '\n';
  if (rep.lattice) std::cout << "m " << rep.lattice->m << "  r " << rep.lattice->r << '\n';
  std::cout << "trivial  " << rep.trivial.str() << '\n';
  if (!rep.distinct_abs) std::cout << "repeated absolute value: only the trivial bound applies\n";
  if (rep.rectangular) std::cout << "rectangular lattice: closed-form bounds do not apply\n";
  auto line = [](const char* name, const std::optional<Rational>& v) {
    if (v) std::cout << name << v->str() << " = " << decimal(v->to_double()) << '\n';
  };
  line("lower    ", rep.lower);
  line("e1       ", rep.e1);
  line("upper    ", rep.upper);
  line("lambda   ", rep.lambda);
  return kExitOk;
}

int run_scan(const kronecker::ScanOptions& opts, const std::string& out, const std::string& format) {
  const auto fmt = kronecker::parse_format(format);
  const auto records = kronecker::scan(opts);
  if (out.empty()) {
    kronecker::write_report(std::cout, records, fmt);
  } else {
    kronecker::emit_report(records, fmt, out);
    std::cerr << records.size() << " records written to " << out << '\n';
  }
  return kExitOk;
}

int run_verify(std::int64_t max_n3, bool five, bool conjecture, double tol, unsigned jobs,
               bool as_json) {
  if (five == conjecture) {
    throw kronecker::InvalidArgument("choose exactly one of --five-sixteenths and --conjecture");
  }
  kronecker::VerifyOptions opts;
  opts.jobs = jobs;
  if (!(tol > 0)) throw kronecker::InvalidArgument("tolerance must be positive");
  opts.tol = Rational::from_double(tol);
  const auto outcome = five ? kronecker::verify_five_sixteenths(max_n3, opts)
                            : kronecker::verify_quarter_conjecture(max_n3, opts);
  auto triple = [](const kronecker::ScanRecord& r) { return json{r.n1, r.n2, r.n3}; };
  if (as_json) {
    json j;
    j["claim"] = outcome.claim;
    j["bound"] = outcome.bound.str();
    j["max_n3"] = max_n3;
    j["classes"] = outcome.classes;
    j["exact_runs"] = outcome.exact_runs;
    j["worst"] = outcome.worst ? triple(*outcome.worst) : json(nullptr);
    j["worst_lo"] = outcome.worst_lo.str();
    j["worst_hi"] = outcome.worst_hi.str();
    j["maximizers"] = json::array();
    for (const auto& m : outcome.maximizers) j["maximizers"].push_back(triple(m));
    j["pass"] = outcome.pass;
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << (outcome.pass ? "PASS " : "FAIL ") << outcome.claim << " alpha <= "
              << outcome.bound.str() << " for n3 <= " << max_n3 << " (" << outcome.classes
              << " classes, " << outcome.exact_runs << " exact solves)\n";
    if (outcome.worst) {
      const auto& w = *outcome.worst;
      std::cout << "worst " << w.n1 << ' ' << w.n2 << ' ' << w.n3 << " in ["
                << outcome.worst_lo.str() << ", " << outcome.worst_hi.str() << "]\n";
    }
    for (const auto& m : outcome.maximizers) {
      std::cout << "attains bound: " << m.n1 << ' ' << m.n2 << ' ' << m.n3 << '\n';
    }
  }
  return outcome.pass ? kExitOk : kExitFail;
}

int run_kappa(const std::string& text) {
  const Rational alpha = Rational::parse(text);
  if (alpha < Rational(0) || alpha > Rational(1, 2)) {
    throw kronecker::InvalidArgument("alpha must lie in [0, 1/2]");
  }
  std::cout << decimal(kronecker::kappa_from_alpha(alpha.to_double())) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Angular Kronecker constants of 2- and 3-element integer sets"};
  app.require_subcommand(1);

  std::vector<std::int64_t> alpha_set;
  std::string method = "covering";
  double tol = 1e-4;
  bool as_json = false;
  auto* alpha = app.add_subcommand("alpha", "Compute alpha(S)");
  alpha->add_option("set", alpha_set, "two or three nonzero integers")->required()->expected(2, 3);
  alpha->add_option("--method", method, "covering, exact or oracle")
      ->check(CLI::IsMember({"covering", "exact", "oracle"}));
  alpha->add_option("--tol", tol, "certified interval width");
  alpha->add_flag("--json", as_json);

  std::vector<std::int64_t> bounds_set;
  auto* bounds = app.add_subcommand("bounds", "Closed-form bounds for a 3-element set");
  bounds->add_option("set", bounds_set, "three nonzero integers")->required()->expected(3);
  bounds->add_flag("--json", as_json);

  kronecker::ScanOptions scan_opts;
  double scan_tol = 1e-4;
  std::string out, format = "csv";
  auto* scan = app.add_subcommand("scan", "Scan all classes with n3 <= N");
  scan->add_option("--max-n3", scan_opts.max_n3, "largest n3")->required();
  scan->add_option("--jobs", scan_opts.jobs, "worker threads")->check(CLI::PositiveNumber);
  scan->add_option("--out", out, "output file (default: stdout)");
  scan->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  scan->add_flag("--exact", scan_opts.exact, "also compute exact values");
  scan->add_option("--tol", scan_tol, "certified interval width");
  scan->add_flag("--timing", scan_opts.timing, "record per-class runtimes");

  std::int64_t verify_n3 = 0;
  bool five = false, conjecture = false;
  double verify_tol = 1e-3;
  unsigned verify_jobs = 1;
  auto* verify = app.add_subcommand("verify", "Check alpha <= 5/16 or the 1/4 conjecture");
  verify->add_option("--max-n3", verify_n3, "largest n3")->required();
  verify->add_flag("--five-sixteenths", five);
  verify->add_flag("--conjecture", conjecture);
  verify->add_option("--tol", verify_tol, "first-pass solver tolerance");
  verify->add_option("--jobs", verify_jobs)->check(CLI::PositiveNumber);
  verify->add_flag("--json", as_json);

  std::string kappa_alpha;
  auto* kappa = app.add_subcommand("kappa", "Kronecker constant 2 sin(pi alpha)");
  kappa->add_option("--alpha", kappa_alpha, "alpha as p/q or decimal")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*alpha) return run_alpha(alpha_set, method, tol, as_json);
    if (*bounds) return run_bounds(bounds_set, as_json);
    if (*scan) {
      if (!(scan_tol > 0)) throw kronecker::InvalidArgument("tolerance must be positive");
      scan_opts.tol = Rational::from_double(scan_tol);
      return run_scan(scan_opts, out, format);
    }
    if (*verify) return run_verify(verify_n3, five, conjecture, verify_tol, verify_jobs, as_json);
    if (*kappa) return run_kappa(kappa_alpha);
  } catch (const kronecker::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const kronecker::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}
