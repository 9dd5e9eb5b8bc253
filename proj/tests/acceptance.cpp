// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"
#include "kronecker/kronecker.hpp"
#include "properties.hpp"

using namespace kronecker;
using json = nlohmann::json;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

struct CliRun {
  int code;
  std::string out;
};

CliRun cli(const std::string& args) {
  const std::string cmd = std::string(KRONECKER_CLI) + " " + args;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), p)) out += buf.data();
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

Outcome ac1() {
  const auto exact = cli("alpha -1 2 3 --method exact --json");
  if (exact.code != 0) return {false, "exact run exited " + std::to_string(exact.code)};
  const auto je = json::parse(exact.out);
  const bool exact_ok = je["alpha_exact"] == "1/4";
  const auto cov = cli("alpha -1 2 3 --method covering --tol 1e-4 --json");
  if (cov.code != 0) return {false, "covering run exited " + std::to_string(cov.code)};
  const auto jc = json::parse(cov.out);
  const Rational lo = Rational::parse(jc["alpha_lo"].get<std::string>());
  const Rational hi = Rational::parse(jc["alpha_hi"].get<std::string>());
  const bool cov_ok = lo <= Rational(1, 4) && Rational(1, 4) <= hi && hi - lo <= Rational(1, 10000);
  return {exact_ok && cov_ok, "exact " + je["alpha_exact"].get<std::string>() + ", covering [" +
                                  lo.str() + ", " + hi.str() + "] width " +
                                  fmt((hi - lo).to_double())};
}

Outcome ac2() {
  const auto r = cli("alpha -1 1 2 --method oracle --json");
  if (r.code != 0) return {false, "oracle run exited " + std::to_string(r.code)};
  const auto j = json::parse(r.out);
  const Rational lo = Rational::parse(j["alpha_lo"].get<std::string>());
  const Rational hi = Rational::parse(j["alpha_hi"].get<std::string>());
  const double mid = ((lo + hi) / Rational(2)).to_double();
  return {std::abs(mid - 1.0 / 3.0) <= 5e-3, "oracle midpoint " + fmt(mid)};
}

Outcome ac3() {
  int checked = 0, failed = 0;
  for (const auto& e : enumerate_canonical(20)) {
    if (e.lattice.r == 0) continue;
    ++checked;
    const auto a = certified_alpha(CoveringInstance(e.canonical), Rational(1, 10000));
    const Rational lower = theorem1_lower(e.canonical, e.lattice);
    const Rational upper = theorem1_upper(e.canonical, e.lattice);
    if (!(lower <= a.hi && a.lo <= upper)) ++failed;
  }
  return {failed == 0 && checked > 0,
          std::to_string(checked) + " sheared classes, " + std::to_string(failed) + " failures"};
}

Outcome ac4() {
  const auto five = cli("verify --max-n3 30 --five-sixteenths --json");
  const auto conj = cli("verify --max-n3 50 --conjecture --json");
  if (five.out.empty() || conj.out.empty()) return {false, "verify produced no output"};
  const auto jf = json::parse(five.out);
  const auto jc = json::parse(conj.out);
  const bool five_ok = five.code == 0 && jf["pass"].get<bool>() &&
                       Rational::parse(jf["worst_hi"].get<std::string>()) <=
                           kFiveSixteenths + Rational(1, 1000000);
  const bool unique = jc["maximizers"] == json::array({json::array({-1, 2, 3})});
  const bool conj_ok = conj.code == 0 && jc["pass"].get<bool>() && unique;
  return {five_ok && conj_ok,
          "5/16 up to 30: worst " + jf["worst"].dump() + " hi " + jf["worst_hi"].get<std::string>() +
              " over " + std::to_string(jf["classes"].get<int>()) + " classes; 1/4 up to 50: " +
              std::to_string(jc["classes"].get<int>()) + " classes, maximizers " +
              jc["maximizers"].dump()};
}

Outcome ac5() {
  const auto i = props::lemma1_i_suite(101, 10000);
  const auto ii = props::lemma1_ii_suite(102, 10000);
  const auto iii = props::lemma1_iii_suite(103, 10000);
  const auto l4 = props::lemma4_exhaustive(50);
  const int failed = i.failed + ii.failed + iii.failed + l4.failed;
  return {failed == 0 && i.checked == 10000 && ii.checked == 10000 && iii.checked == 10000,
          "part (i)/(ii)/(iii) failures " + std::to_string(i.failed) + "/" +
              std::to_string(ii.failed) + "/" + std::to_string(iii.failed) + ", r=m=1 classes " +
              std::to_string(l4.checked) + " with " + std::to_string(l4.failed) + " failures"};
}

Outcome ac6() {
  double worst = 0;
  std::string worst_set;
  for (const auto& e : props::sample_classes(20240601, 20, 15)) {
    const auto& c = e.canonical;
    const auto cov = certified_alpha(CoveringInstance(c), Rational(1, 10000));
    const auto orc = oracle_alpha({c.n1, c.n2, c.n3});
    const double diff = std::abs(cov.midpoint().to_double() - orc.midpoint().to_double());
    if (diff >= worst) {
      worst = diff;
      worst_set = std::to_string(c.n1) + "," + std::to_string(c.n2) + "," + std::to_string(c.n3);
    }
  }
  return {worst <= 6e-3, "20 classes, largest gap " + fmt(worst) + " at {" + worst_set + "}"};
}

Outcome ac7() {
  std::mt19937_64 rng(777);
  std::uniform_int_distribution<std::int64_t> d(-20, 20);
  double worst = 0;
  int done = 0;
  while (done < 50) {
    const std::int64_t a = d(rng), b = d(rng);
    if (a == 0 || b == 0 || a == b) continue;
    ++done;
    const double o = oracle_alpha({a, b}).midpoint().to_double();
    worst = std::max(worst, std::abs(o - alpha_pair(a, b).to_double()));
  }
  const bool sharp = alpha_pair(-5, 5) == Rational(1, 4);
  return {worst <= 5e-3 && sharp, "50 pairs, largest gap " + fmt(worst) + ", alpha{-5,5} = " +
                                      alpha_pair(-5, 5).str()};
}

Outcome ac8() {
  std::mt19937_64 rng(8);
  int periodic = 0, symmetric = 0, lipschitz = 0, widening = 0, overlap = 0, necessary = 0;
  for (const auto& e : props::sample_classes(88, 10, 25)) {
    const CoveringInstance inst(e.canonical);
    periodic += props::periodicity_violations(inst, rng, 100);
    symmetric += props::symmetry_violations(inst, rng, 50);
    lipschitz += props::lipschitz_violations(inst, rng, 100);
    widening += props::widening_violations(inst, rng, 50);
    overlap += props::overlap_violations(inst, rng, 50);
  }
  for (const auto& e : enumerate_canonical(25)) {
    if (e.lattice.r == 0) continue;
    necessary += props::necessary_condition_violations(CoveringInstance(e.canonical));
  }
  const int total = periodic + symmetric + lipschitz + widening + overlap + necessary;
  return {total == 0, "violations: periodicity " + std::to_string(periodic) + ", symmetry " +
                          std::to_string(symmetric) + ", lipschitz " + std::to_string(lipschitz) +
                          ", widening " + std::to_string(widening) + ", overlap " +
                          std::to_string(overlap) + ", necessary condition " +
                          std::to_string(necessary)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    double limit_s;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"AC-1", 5, ac1},   {"AC-2", 60, ac2},  {"AC-3", 120, ac3}, {"AC-4", 600, ac4},
      {"AC-5", 600, ac5}, {"AC-6", 600, ac6}, {"AC-7", 600, ac7}, {"AC-8", 600, ac8},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out{false, ""};
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.limit_s;
    const bool pass = out.pass && in_time;
    if (!pass) ++failures;
    std::cout << c.id << ' ' << (pass ? "PASS" : "FAIL") << "  " << out.detail << " ("
              << fmt(secs) << " s" << (in_time ? "" : ", over time limit") << ")" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
