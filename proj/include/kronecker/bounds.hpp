#pragma once

// Closed-form bounds on the angular Kronecker constant of 2- and 3-element
// sets, and the auxiliary inequalities behind the 5/16 estimate.

#include <cstdint>
#include <numeric>
#include <optional>

#include "kronecker/errors.hpp"
#include "kronecker/numbers.hpp"
#include "kronecker/rational.hpp"

namespace kronecker {

inline const Rational kFiveSixteenths{5, 16};

/// α(S) <= 1/2 - 1/(2d) for any d-element set without 0.
inline Rational trivial_upper_bound(std::int64_t d) {
  if (d < 1) throw InvalidArgument("set size must be positive");
  return Rational(1, 2) - Rational(1, 2 * d);
}

namespace detail {

struct BoundTerms {
  std::int64_t a1, a2, a3, m, r;
};

inline BoundTerms bound_terms(const CanonicalTriple& ct, const LatticeParams& lp) {
  if (!ct.distinct_abs) throw Unsupported("bounds need distinct absolute values");
  if (lp.r == 0) throw RectangularUnsupported("closed-form bounds need r > 0");
  if (lp.r < 0 || lp.m < 1) throw InvalidArgument("lattice parameters out of range");
  return {iabs(ct.n1), iabs(ct.n2), iabs(ct.n3), lp.m, lp.r};
}

// r(|n2|+|n3|) + m(|n1|+|n3|)
inline std::int64_t mixed_weight(const BoundTerms& t) {
  return t.r * (t.a2 + t.a3) + t.m * (t.a1 + t.a3);
}

}  // namespace detail

/// Lower bound E0 = |n3| / (2(r(|n2|+|n3|) + m(|n1|+|n3|))).
inline Rational theorem1_lower(const CanonicalTriple& ct, const LatticeParams& lp) {
  const auto t = detail::bound_terms(ct, lp);
  return Rational(t.a3, 2 * detail::mixed_weight(t));
}

/// E1: the largest of the three sufficient levels for the (1,3)/(2,3) overlap.
inline Rational compute_e1(const CanonicalTriple& ct, const LatticeParams& lp) {
  const auto t = detail::bound_terms(ct, lp);
  const Rational first(t.m, 2 * (t.a2 + t.a3));
  const Rational second(t.r, 2 * (t.a1 + t.a3));
  const Rational third(t.a3 + 2 * t.r * t.m, 2 * detail::mixed_weight(t));
  return max(first, max(second, third));
}

/// Upper bound E1 (2|n1||n2| + |n3|(|n1|+|n2|)) / (|n3|(|n1|+|n2|)).
inline Rational theorem1_upper(const CanonicalTriple& ct, const LatticeParams& lp) {
  const auto t = detail::bound_terms(ct, lp);
  const Rational factor(2 * t.a1 * t.a2 + t.a3 * (t.a1 + t.a2), t.a3 * (t.a1 + t.a2));
  return compute_e1(ct, lp) * factor;
}

/// Closed form for two-element sets, gcd(|a|,|b|) / (2(|a|+|b|)).
inline Rational alpha_pair(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) throw ZeroElement("set contains 0");
  if (a == b) throw InvalidArgument("repeated element: not a 2-element set");
  const std::int64_t aa = detail::iabs(a), ab = detail::iabs(b);
  return Rational(std::gcd(aa, ab), 2 * (aa + ab));
}

namespace detail {

inline void check_lemma_order(std::int64_t n1, std::int64_t n2, std::int64_t n3) {
  const std::int64_t a1 = iabs(n1);
  if (!(0 < a1 && a1 < n2 && n2 < n3)) {
    throw InvalidArgument("lemma inputs must satisfy 0 < |n1| < n2 < n3");
  }
}

inline void check_lemma_rm(std::int64_t r, std::int64_t m) {
  if (r < 1 || m < 1) throw InvalidArgument("lemma inputs need r, m >= 1");
}

// 2|n1|n2 + n3(|n1|+n2)
inline std::int64_t lemma_numerator(std::int64_t a1, std::int64_t n2, std::int64_t n3) {
  return 2 * a1 * n2 + n3 * (a1 + n2);
}

}  // namespace detail

inline bool lemma1_i_hypothesis(std::int64_t n1, std::int64_t n3, const Rational& e1) {
  return e1 <= Rational(n3, 4 * (detail::iabs(n1) + n3));
}

inline Rational lemma1_i_value(std::int64_t n1, std::int64_t n2, std::int64_t n3,
                               const Rational& e1) {
  detail::check_lemma_order(n1, n2, n3);
  const std::int64_t a1 = detail::iabs(n1);
  return e1 * Rational(detail::lemma_numerator(a1, n2, n3), n3 * (a1 + n2));
}

/// Whether the part-(i) expression is at most 5/16. Guaranteed whenever
/// lemma1_i_hypothesis holds.
inline bool lemma1_i(std::int64_t n1, std::int64_t n2, std::int64_t n3, const Rational& e1) {
  return lemma1_i_value(n1, n2, n3, e1) <= kFiveSixteenths;
}

inline bool lemma1_ii_hypothesis(std::int64_t r, std::int64_t m) { return r + m >= 5; }

inline Rational lemma1_ii_value(std::int64_t n1, std::int64_t n2, std::int64_t n3,
                                std::int64_t r, std::int64_t m) {
  detail::check_lemma_order(n1, n2, n3);
  detail::check_lemma_rm(r, m);
  const std::int64_t a1 = detail::iabs(n1);
  return Rational(detail::lemma_numerator(a1, n2, n3),
                  (a1 + n2) * (r * (n2 + n3) + m * (a1 + n3)));
}

inline bool lemma1_ii(std::int64_t n1, std::int64_t n2, std::int64_t n3, std::int64_t r,
                      std::int64_t m) {
  return lemma1_ii_value(n1, n2, n3, r, m) <= kFiveSixteenths;
}

inline bool lemma1_iii_hypothesis(std::int64_t r, std::int64_t m) { return !(r == 1 && m == 1); }

inline Rational lemma1_iii_value(std::int64_t n1, std::int64_t n2, std::int64_t n3,
                                 std::int64_t r, std::int64_t m) {
  detail::check_lemma_order(n1, n2, n3);
  detail::check_lemma_rm(r, m);
  const std::int64_t a1 = detail::iabs(n1);
  return Rational(detail::lemma_numerator(a1, n2, n3) * (2 + std::min(r, m)),
                  4 * (a1 + n2) * (r * (n2 + n3) + m * (a1 + n3)));
}

inline bool lemma1_iii(std::int64_t n1, std::int64_t n2, std::int64_t n3, std::int64_t r,
                       std::int64_t m) {
  return lemma1_iii_value(n1, n2, n3, r, m) <= kFiveSixteenths;
}

/// r = m = 1 forces a sum set with negative n1; vacuously true otherwise.
inline bool lemma4_check(const CanonicalTriple& ct, const LatticeParams& lp) {
  if (!ct.distinct_abs) throw Unsupported("lemma 4 needs distinct absolute values");
  if (lp.r != 1 || lp.m != 1) return true;
  return ct.n1 < 0 && ct.n3 == detail::iabs(ct.n1) + ct.n2;
}

/// Which argument of the 5/16 case analysis covers a sheared triple.
enum class FiveSixteenthsRoute {
  SmallE1,       ///< E1 is one of the first two terms: part (i)
  LargeShear,    ///< r + m >= 5: part (ii)
  SmallShear,    ///< n3 >= 12, (r, m) != (1, 1): part (iii)
  SumSet,        ///< n3 >= 12, r = m = 1: the 7/24 estimate
  Computational  ///< n3 < 12 and none of the above: needs the solver
};

inline FiveSixteenthsRoute five_sixteenths_route(const CanonicalTriple& ct,
                                                 const LatticeParams& lp) {
  const auto t = detail::bound_terms(ct, lp);
  const Rational third(t.a3 + 2 * t.r * t.m, 2 * detail::mixed_weight(t));
  if (compute_e1(ct, lp) != third) return FiveSixteenthsRoute::SmallE1;
  if (t.r + t.m >= 5) return FiveSixteenthsRoute::LargeShear;
  if (t.a3 >= 12) {
    return (t.r == 1 && t.m == 1) ? FiveSixteenthsRoute::SumSet : FiveSixteenthsRoute::SmallShear;
  }
  return FiveSixteenthsRoute::Computational;
}

struct BoundReport {
  Rational trivial;
  std::optional<Rational> lower;  ///< E0
  std::optional<Rational> e1;
  std::optional<Rational> upper;
  std::optional<Rational> lambda;  ///< e1 - lower
  bool rectangular = false;
  bool distinct_abs = true;
  std::optional<LatticeParams> lattice;
};

/// Trivial bound always; the closed-form bounds only when the lattice is sheared.
inline BoundReport bound_report(const CanonicalTriple& ct) {
  BoundReport rep;
  rep.trivial = trivial_upper_bound(3);
  rep.distinct_abs = ct.distinct_abs;
  if (!ct.distinct_abs) return rep;
  const auto lr = lattice_params(ct);
  rep.lattice = lr.params;
  rep.rectangular = lr.params.rectangular();
  if (rep.rectangular) return rep;
  rep.lower = theorem1_lower(lr.triple, lr.params);
  rep.e1 = compute_e1(lr.triple, lr.params);
  rep.upper = theorem1_upper(lr.triple, lr.params);
  rep.lambda = *rep.e1 - *rep.lower;
  return rep;
}

}  // namespace kronecker
