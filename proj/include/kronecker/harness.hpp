#pragma once

// Class enumeration, batch scans and the verification of the 5/16 bound and
// the 1/4 conjecture.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "kronecker/bounds.hpp"
#include "kronecker/covering.hpp"
#include "kronecker/errors.hpp"
#include "kronecker/numbers.hpp"
#include "kronecker/rational.hpp"

namespace kronecker {

struct ClassEntry {
  Triple raw;  ///< the positive set, or the signed representative
  CanonicalTriple canonical;
  LatticeParams lattice;
};

/// One entry per class of 3-element sets with distinct absolute values and
/// n3 <= max_n3: every 0 < a < b < c with gcd 1, in (c, b, a) order.
///
/// Sign variants of a set share a class, so the classes are the same either
/// way; include_negative_n1 only selects whether raw holds the signed
/// representative (true) or the positive set (false).
inline std::vector<ClassEntry> enumerate_canonical(std::int64_t max_n3,
                                                   bool include_negative_n1 = true) {
  if (max_n3 < 3) throw InvalidArgument("max_n3 must be at least 3");
  std::vector<ClassEntry> out;
  for (std::int64_t c = 3; c <= max_n3; ++c) {
    for (std::int64_t b = 2; b < c; ++b) {
      for (std::int64_t a = 1; a < b; ++a) {
        if (std::gcd(std::gcd(a, b), c) != 1) continue;
        const auto lr = lattice_params(canonicalize({a, b, c}));
        ClassEntry e{{a, b, c}, lr.triple, lr.params};
        if (include_negative_n1) e.raw = {lr.triple.n1, lr.triple.n2, lr.triple.n3};
        out.push_back(std::move(e));
      }
    }
  }
  return out;
}

/// Covering is only defined for distinct absolute values; {-n, n, k} sets
/// go to the oracle.
enum class Route { Covering, Oracle };

inline Route route_for(const CanonicalTriple& ct) {
  return ct.distinct_abs ? Route::Covering : Route::Oracle;
}

struct ScanRecord {
  Triple raw;
  std::int64_t n1 = 0, n2 = 0, n3 = 0;
  std::int64_t m = 0, r = 0;
  bool rectangular = false;
  std::optional<Rational> trivial, lower, e1, upper;
  Rational alpha_lo, alpha_hi;
  std::optional<Rational> alpha_exact;
  bool sumset = false;  ///< n3 = |n1| + n2
  double time_ms = 0.0;

  Triple canonical() const { return {n1, n2, n3}; }
  friend bool operator==(const ScanRecord&, const ScanRecord&) = default;
};

struct ScanOptions {
  std::int64_t max_n3 = 12;
  Rational tol{1, 10000};
  unsigned jobs = 1;
  bool exact = false;
  bool timing = false;  ///< fill time_ms; reports are then no longer reproducible
  std::int64_t safety_limit = 200;
};

inline ScanRecord compute_record(const ClassEntry& entry, const ScanOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  ScanRecord rec;
  rec.raw = entry.raw;
  rec.n1 = entry.canonical.n1;
  rec.n2 = entry.canonical.n2;
  rec.n3 = entry.canonical.n3;
  rec.m = entry.lattice.m;
  rec.r = entry.lattice.r;
  rec.rectangular = entry.lattice.rectangular();
  const auto bounds = bound_report(entry.canonical);
  rec.trivial = bounds.trivial;
  rec.lower = bounds.lower;
  rec.e1 = bounds.e1;
  rec.upper = bounds.upper;
  const CoveringInstance inst(entry.canonical);
  const auto alpha = certified_alpha(inst, opts.tol);
  rec.alpha_lo = alpha.lo;
  rec.alpha_hi = alpha.hi;
  if (opts.exact) rec.alpha_exact = exact_alpha(inst);
  rec.sumset = rec.n3 == detail::iabs(rec.n1) + rec.n2;
  if (opts.timing) {
    rec.time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                      .count();
  }
  return rec;
}

/// Invariant violations of one record (empty when consistent).
inline std::vector<std::string> record_violations(const ScanRecord& rec) {
  std::vector<std::string> out;
  if (rec.alpha_hi < rec.alpha_lo) out.emplace_back("alpha_lo > alpha_hi");
  if (rec.lower && *rec.lower > rec.alpha_hi) out.emplace_back("lower bound above alpha_hi");
  if (rec.upper && rec.alpha_lo > *rec.upper) out.emplace_back("alpha_lo above upper bound");
  if (rec.alpha_exact && !(rec.alpha_lo <= *rec.alpha_exact && *rec.alpha_exact <= rec.alpha_hi)) {
    out.emplace_back("exact value outside the certified interval");
  }
  if (rec.r == 1 && rec.m == 1 && !(rec.n1 < 0 && rec.sumset)) {
    out.emplace_back("r = m = 1 without a sum set");
  }
  return out;
}

namespace detail {

inline bool record_key_less(const ScanRecord& a, const ScanRecord& b) {
  return std::tuple(a.n3, a.n2, iabs(a.n1)) < std::tuple(b.n3, b.n2, iabs(b.n1));
}

}  // namespace detail

/// One record per class, ordered by (n3, n2, |n1|) whatever the job count.
inline std::vector<ScanRecord> scan(const ScanOptions& opts) {
  if (opts.max_n3 > opts.safety_limit) {
    throw InvalidArgument("max_n3 exceeds the safety limit of " + std::to_string(opts.safety_limit));
  }
  const auto classes = enumerate_canonical(opts.max_n3);
  const unsigned jobs = std::max(1u, opts.jobs);
  std::atomic<std::size_t> next{0};
  std::vector<std::vector<ScanRecord>> buffers(jobs);
  auto work = [&](std::vector<ScanRecord>& buffer) {
    for (std::size_t i = next++; i < classes.size(); i = next++) {
      buffer.push_back(compute_record(classes[i], opts));
    }
  };
  if (jobs == 1) {
    work(buffers[0]);
  } else {
    std::vector<std::jthread> workers;
    for (unsigned j = 0; j < jobs; ++j) workers.emplace_back(work, std::ref(buffers[j]));
  }
  std::vector<ScanRecord> out;
  out.reserve(classes.size());
  for (auto& b : buffers) std::move(b.begin(), b.end(), std::back_inserter(out));
  std::sort(out.begin(), out.end(), detail::record_key_less);
  return out;
}

struct VerifyOptions {
  Rational tol{1, 1000};              ///< solver tolerance for the first pass
  Rational slack{1, 1000000};         ///< "α <= B" passes when alpha_hi <= B + slack
  Rational equality_window{1, 10000}; ///< values this close to B are settled exactly
  unsigned jobs = 1;
  std::int64_t safety_limit = 200;
};

struct VerifyOutcome {
  std::string claim;
  Rational bound;
  std::optional<ScanRecord> worst;
  Rational worst_lo;
  Rational worst_hi;
  bool pass = false;
  std::vector<ScanRecord> maximizers;  ///< classes whose exact value equals the bound
  std::size_t classes = 0;
  std::size_t exact_runs = 0;
};

inline std::pair<Rational, Rational> effective_interval(const ScanRecord& rec) {
  if (rec.alpha_exact) return {*rec.alpha_exact, *rec.alpha_exact};
  return {rec.alpha_lo, rec.alpha_hi};
}

/// Checks "α <= bound" over the records. Records that are ambiguous at the
/// first-pass tolerance, or within equality_window of the bound, get an exact
/// solve. With unique_maximizer the bound must be attained by {1,2,3} alone.
inline VerifyOutcome verify_records(std::vector<ScanRecord> records, std::string claim,
                                    const Rational& bound, bool unique_maximizer,
                                    const VerifyOptions& opts) {
  VerifyOutcome out;
  out.claim = std::move(claim);
  out.bound = bound;
  out.classes = records.size();
  const Rational ceiling = bound + opts.slack;
  bool certified_failure = false;
  for (auto& rec : records) {
    if (rec.alpha_exact) continue;
    if (rec.alpha_lo > ceiling) {
      certified_failure = true;
      continue;
    }
    if (rec.alpha_hi > ceiling || rec.alpha_hi >= bound - opts.equality_window) {
      rec.alpha_exact = exact_alpha(CoveringInstance(canonicalize(rec.canonical())));
      ++out.exact_runs;
    }
  }
  bool all_below = !certified_failure;
  for (const auto& rec : records) {
    const auto [lo, hi] = effective_interval(rec);
    if (hi > ceiling) all_below = false;
    if (!out.worst || hi > out.worst_hi) {
      out.worst = rec;
      out.worst_lo = lo;
      out.worst_hi = hi;
    }
    if (rec.alpha_exact && *rec.alpha_exact == bound) out.maximizers.push_back(rec);
  }
  out.pass = all_below;
  if (unique_maximizer) {
    const Triple base{-1, 2, 3};
    const bool base_present = std::any_of(records.begin(), records.end(),
                                          [&](const ScanRecord& r) { return r.canonical() == base; });
    const bool unique = base_present ? (out.maximizers.size() == 1 &&
                                        out.maximizers.front().canonical() == base)
                                     : out.maximizers.empty();
    out.pass = out.pass && unique;
  }
  return out;
}

inline std::vector<ScanRecord> verification_scan(std::int64_t max_n3, const VerifyOptions& opts) {
  ScanOptions so;
  so.max_n3 = max_n3;
  so.tol = opts.tol;
  so.jobs = opts.jobs;
  so.safety_limit = opts.safety_limit;
  return scan(so);
}

/// α <= 5/16 for every class with n3 <= max_n3.
inline VerifyOutcome verify_five_sixteenths(std::int64_t max_n3, const VerifyOptions& opts = {}) {
  return verify_records(verification_scan(max_n3, opts), "five-sixteenths", kFiveSixteenths, false,
                        opts);
}

/// α <= 1/4 for every class with n3 <= max_n3, with equality only at {1,2,3}.
inline VerifyOutcome verify_quarter_conjecture(std::int64_t max_n3,
                                               const VerifyOptions& opts = {}) {
  return verify_records(verification_scan(max_n3, opts), "quarter-conjecture", Rational(1, 4), true,
                        opts);
}

}  // namespace kronecker
