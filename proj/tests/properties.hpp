#pragma once

// Property checks shared by the unit tests and the acceptance runner. Each
// returns the number of violations it found.

#include <cstdint>
#include <random>
#include <vector>

#include "kronecker/kronecker.hpp"

namespace kronecker::props {

inline Rational random_rational(std::mt19937_64& rng, std::int64_t den_max = 97) {
  std::uniform_int_distribution<std::int64_t> den(1, den_max);
  const std::int64_t d = den(rng);
  std::uniform_int_distribution<std::int64_t> num(-3 * d, 3 * d);
  return Rational(num(rng), d);
}

inline EvalPoint random_point(std::mt19937_64& rng) {
  return {random_rational(rng), random_rational(rng)};
}

/// Distinct classes drawn from the enumeration with a fixed generator.
inline std::vector<ClassEntry> sample_classes(std::uint64_t seed, std::size_t count,
                                              std::int64_t max_n3) {
  auto all = enumerate_canonical(max_n3);
  std::mt19937_64 rng(seed);
  std::shuffle(all.begin(), all.end(), rng);
  if (all.size() > count) all.resize(count);
  return all;
}

inline int periodicity_violations(const CoveringInstance& inst, std::mt19937_64& rng, int points) {
  int bad = 0;
  const auto gens = inst.generators();
  for (int i = 0; i < points; ++i) {
    const auto p = random_point(rng);
    const Rational f = eval_F(inst, p);
    for (const auto& g : gens) {
      if (eval_F(inst, {p.x + g.x, p.y + g.y}) != f) ++bad;
      if (eval_F(inst, {p.x - g.x, p.y - g.y}) != f) ++bad;
    }
  }
  return bad;
}

inline int symmetry_violations(const CoveringInstance& inst, std::mt19937_64& rng, int points) {
  int bad = 0;
  for (int i = 0; i < points; ++i) {
    const auto p = random_point(rng);
    if (eval_F(inst, {-p.x, -p.y}) != eval_F(inst, p)) ++bad;
  }
  return bad;
}

/// Each requirement, for a fixed (s, t), moves by at most |dx| + |dy|.
inline int lipschitz_violations(const CoveringInstance& inst, std::mt19937_64& rng, int points) {
  int bad = 0;
  std::uniform_int_distribution<std::int64_t> shift(-3, 3);
  for (int i = 0; i < points; ++i) {
    const auto p = random_point(rng);
    const auto q = random_point(rng);
    const std::int64_t s = shift(rng), t = shift(rng);
    const auto vp = inst.constraint_values(p, s, t);
    const auto vq = inst.constraint_values(q, s, t);
    const Rational bound = (p.x - q.x).abs() + (p.y - q.y).abs();
    for (std::size_t c = 0; c < 3; ++c) {
      if ((vp[c] - vq[c]).abs() > bound) ++bad;
    }
    if (eval_F(inst, p) - eval_F(inst, q) > bound) ++bad;
  }
  return bad;
}

/// Minimizing over a window built with a larger cap gives the same F.
inline int widening_violations(const CoveringInstance& inst, std::mt19937_64& rng, int points) {
  int bad = 0;
  for (int i = 0; i < points; ++i) {
    const auto p = random_point(rng);
    const auto fv = evaluate_field(inst, p);
    const Rational wide_cap = fv.value + Rational(1, 2);
    std::optional<Rational> best;
    for (const auto& [s, t] : candidate_window(inst, p, wide_cap)) {
      const auto c = inst.constraint_values(p, s, t);
      const Rational v = max(c[0], max(c[1], c[2]));
      if (!best || v < *best) best = v;
    }
    if (!best || *best != fv.value) ++bad;
  }
  return bad;
}

/// F vanishes on lattice points.
inline int zero_set_violations(const CoveringInstance& inst) {
  int bad = 0;
  for (std::int64_t a = -2; a <= 2; ++a) {
    for (std::int64_t b = -2; b <= 2; ++b) {
      if (eval_F(inst, inst.from_cell(Rational(a), Rational(b))) != Rational(0)) ++bad;
    }
  }
  return bad;
}

/// The two overlap lengths that have closed forms, reproduced exactly at
/// levels and positions chosen to land in each case.
inline int overlap_violations(const CoveringInstance& inst, std::mt19937_64& rng, int trials) {
  if (inst.r() == 0) return 0;
  int bad = 0;
  const Rational n2(inst.n2()), n3(inst.n3()), a1(detail::iabs(inst.n1()));
  const Rational m(inst.m()), r(inst.r());
  std::uniform_int_distribution<std::int64_t> level(1, 400);
  std::uniform_int_distribution<std::int64_t> pos(-50, 50);
  for (int i = 0; i < trials; ++i) {
    const Rational e(level(rng), 1000);
    const Rational beta(pos(rng), 97);
    std::uniform_int_distribution<std::int64_t> sd(-3, 3);
    const std::int64_t s = sd(rng);
    const auto ov = overlap_lengths(inst, e, s, beta);
    const Rational len1 = Rational(2) * e * (n2 + n3) / n3;
    const Rational len2 = Rational(2) * e * ((a1 + n3) / n3) * (m / r);
    const Rational j1 = ov.j1.hi - ov.j1.lo;
    const Rational j2 = ov.j2.hi - ov.j2.lo;
    if (j1 != len1 || j2 != len2) ++bad;
    switch (ov.kind) {
      case OverlapCase::FirstInsideSecond:
        if (ov.length != len1) ++bad;
        break;
      case OverlapCase::SecondInsideFirst:
        if (ov.length != len2) ++bad;
        break;
      case OverlapCase::Partial:
        if (ov.length > min(len1, len2)) ++bad;
        break;
    }
    // Centre J2 on J1 so one interval contains the other.
    const Rational centred = Rational(s, inst.m());
    const auto nested = overlap_lengths(inst, e, s, centred);
    if (nested.kind == OverlapCase::Partial) ++bad;
    if (nested.length != min(len1, len2)) ++bad;
  }
  return bad;
}

/// Below the lower bound E0, at β = 1/(2m) no s brings -β + s/m within c(E).
inline int necessary_condition_violations(const CoveringInstance& inst) {
  if (inst.r() == 0) return 0;
  int bad = 0;
  const auto lr = lattice_params(inst.triple());
  const Rational e0 = theorem1_lower(lr.triple, lr.params);
  const Rational beta(1, 2 * inst.m());
  if (coupling_radius(inst, e0) != beta) ++bad;
  for (std::int64_t k = 1; k <= 8; ++k) {
    const Rational e = e0 * Rational(k, 9);
    const Rational c = coupling_radius(inst, e);
    for (std::int64_t s = -3; s <= 3; ++s) {
      if ((-beta + Rational(s, inst.m())).abs() <= c) ++bad;
    }
  }
  return bad;
}

inline std::array<std::int64_t, 3> random_ordered_triple(std::mt19937_64& rng, std::int64_t hi) {
  std::uniform_int_distribution<std::int64_t> d(1, hi);
  std::int64_t a, b, c;
  do {
    a = d(rng);
    b = d(rng);
    c = d(rng);
    if (a > b) std::swap(a, b);
    if (b > c) std::swap(b, c);
    if (a > b) std::swap(a, b);
  } while (!(a < b && b < c));
  std::bernoulli_distribution neg(0.5);
  return {neg(rng) ? -a : a, b, c};
}

struct LemmaCounts {
  int checked = 0;
  int failed = 0;
};

inline LemmaCounts lemma1_i_suite(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  LemmaCounts out;
  std::uniform_int_distribution<std::int64_t> frac(1, 1000);
  while (out.checked < count) {
    const auto [n1, n2, n3] = random_ordered_triple(rng, 500);
    const Rational cap(n3, 4 * (detail::iabs(n1) + n3));
    const Rational e1 = cap * Rational(frac(rng), 1000);
    if (!lemma1_i_hypothesis(n1, n3, e1)) continue;
    ++out.checked;
    if (!lemma1_i(n1, n2, n3, e1)) ++out.failed;
  }
  return out;
}

inline LemmaCounts lemma1_ii_suite(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  LemmaCounts out;
  std::uniform_int_distribution<std::int64_t> rm(1, 60);
  while (out.checked < count) {
    const auto [n1, n2, n3] = random_ordered_triple(rng, 500);
    const std::int64_t r = rm(rng), m = rm(rng);
    if (!lemma1_ii_hypothesis(r, m)) continue;
    ++out.checked;
    if (!lemma1_ii(n1, n2, n3, r, m)) ++out.failed;
  }
  return out;
}

inline LemmaCounts lemma1_iii_suite(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  LemmaCounts out;
  std::uniform_int_distribution<std::int64_t> rm(1, 6);
  while (out.checked < count) {
    const auto [n1, n2, n3] = random_ordered_triple(rng, 500);
    const std::int64_t r = rm(rng), m = rm(rng);
    if (!lemma1_iii_hypothesis(r, m)) continue;
    ++out.checked;
    if (!lemma1_iii(n1, n2, n3, r, m)) ++out.failed;
  }
  return out;
}

/// Classes with r = m = 1 that are not negative sum sets.
inline LemmaCounts lemma4_exhaustive(std::int64_t max_n3) {
  LemmaCounts out;
  for (const auto& e : enumerate_canonical(max_n3)) {
    if (e.lattice.r != 1 || e.lattice.m != 1) continue;
    ++out.checked;
    if (!lemma4_check(e.canonical, e.lattice)) ++out.failed;
  }
  return out;
}

}  // namespace kronecker::props
