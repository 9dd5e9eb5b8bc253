#pragma once

// The covering formulation of α for 3-element sets.
//
// For a point (x, y) of the plane and integers (s, t) put
//   Δ = y - t m / n3,   u = β - s/m + Δ r/m = x - t r/n3 - s/m,   β = x - r y/m
// and weigh three pairwise requirements
//   (2,3): n3/(n2+n3) |Δ|
//   (1,3): n3/(|n1|+n3) |u|
//   (1,2): |n2 u - n1 Δ| / (|n1|+n2).
// F(x, y) is the minimum over (s, t) of the largest of the three. F is
// periodic under the lattice K generated by (1/m, 0) and (r/n3, m/n3), and
// α(S) is the maximum of F over one fundamental cell.
//
// Cell coordinates (a, b) write a point as a (1/m, 0) + b (r/n3, m/n3), so
// a = m β and b = n3 y / m. In these coordinates, with A = a - s, B = b - t,
//   (2,3) = |m B| / (n2 + n3)
//   (1,3) = |n3 A + r m B| / (m (|n1| + n3))
//   (1,2) = |n2 n3 A + m (n2 r - n1 m) B| / (m n3 (|n1| + n2)).
// The solvers work on dyadic points of the (a, b) unit square with integer
// numerators over one common denominator, so every comparison is exact.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "kronecker/errors.hpp"
#include "kronecker/interval.hpp"
#include "kronecker/numbers.hpp"
#include "kronecker/rational.hpp"

namespace kronecker {

/// A point of the (x, y) plane. β and Δ are derived on demand.
struct EvalPoint {
  Rational x;
  Rational y;

  Rational beta(std::int64_t r, std::int64_t m) const { return x - Rational(r, m) * y; }
  Rational delta(std::int64_t t, std::int64_t m, std::int64_t n3) const {
    return y - Rational(t * m, n3);
  }
  friend bool operator==(const EvalPoint&, const EvalPoint&) = default;
};

class CoveringInstance {
 public:
  /// Throws Unsupported when the absolute values are not distinct. The sign
  /// of n1 is normalized so that r >= 0.
  explicit CoveringInstance(const CanonicalTriple& ct) {
    if (!ct.distinct_abs) {
      throw Unsupported("covering needs distinct absolute values; use the oracle");
    }
    const auto lr = lattice_params(ct);
    triple_ = lr.triple;
    lattice_ = lr.params;
    const std::int64_t a1 = detail::iabs(triple_.n1);
    w23_ = Rational(triple_.n3, triple_.n2 + triple_.n3);
    w13_ = Rational(triple_.n3, a1 + triple_.n3);
    w12_den_ = a1 + triple_.n2;
  }

  const CanonicalTriple& triple() const { return triple_; }
  const LatticeParams& lattice() const { return lattice_; }
  std::int64_t n1() const { return triple_.n1; }
  std::int64_t n2() const { return triple_.n2; }
  std::int64_t n3() const { return triple_.n3; }
  std::int64_t m() const { return lattice_.m; }
  std::int64_t r() const { return lattice_.r; }
  const Rational& w23() const { return w23_; }
  const Rational& w13() const { return w13_; }
  std::int64_t w12_denominator() const { return w12_den_; }

  std::array<EvalPoint, 2> generators() const {
    return {EvalPoint{Rational(1, m()), Rational(0)},
            EvalPoint{Rational(r(), n3()), Rational(m(), n3())}};
  }

  EvalPoint from_cell(const Rational& a, const Rational& b) const {
    const auto g = generators();
    return {a * g[0].x + b * g[1].x, b * g[1].y};
  }

  /// (a, b) with p = a g1 + b g2.
  std::pair<Rational, Rational> to_cell(const EvalPoint& p) const {
    return {Rational(m()) * p.beta(r(), m()), Rational(n3(), m()) * p.y};
  }

  /// Values of (2,3), (1,3), (1,2) for a fixed (s, t).
  std::array<Rational, 3> constraint_values(const EvalPoint& p, std::int64_t s,
                                            std::int64_t t) const {
    const Rational delta = p.delta(t, m(), n3());
    const Rational inner = p.beta(r(), m()) - Rational(s, m()) + delta * Rational(r(), m());
    return {w23_ * delta.abs(), w13_ * inner.abs(),
            (Rational(n2()) * inner - Rational(n1()) * delta).abs() / Rational(w12_den_)};
  }

 private:
  CanonicalTriple triple_;
  LatticeParams lattice_;
  Rational w23_;
  Rational w13_;
  std::int64_t w12_den_ = 1;
};

namespace detail {

inline Rational nearest_integer(const Rational& v) {
  return Rational((v + Rational(1, 2)).floor(), mpz_class(1));
}

inline Rational floor_of(const Rational& v) { return Rational(v.floor(), mpz_class(1)); }
inline Rational ceil_of(const Rational& v) { return Rational(mpz_class(-((-v).floor())), mpz_class(1)); }

inline std::int64_t to_i64(const Rational& integral) {
  const mpz_class n = integral.numerator();
  if (!n.fits_slong_p()) throw Error("integer out of range");
  return n.get_si();
}

}  // namespace detail

/// Every (s, t) with (2,3) <= cap and (1,3) <= cap at p, hence every pair
/// whose largest requirement is at most cap.
inline std::vector<std::pair<std::int64_t, std::int64_t>> candidate_window(
    const CoveringInstance& inst, const EvalPoint& p, const Rational& cap) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  if (cap < Rational(0)) return out;
  const Rational reach_y = cap / inst.w23();
  const Rational t_scale(inst.n3(), inst.m());
  const auto t_lo = detail::to_i64(detail::ceil_of((p.y - reach_y) * t_scale));
  const auto t_hi = detail::to_i64(detail::floor_of((p.y + reach_y) * t_scale));
  const Rational reach_x = cap / inst.w13();
  for (std::int64_t t = t_lo; t <= t_hi; ++t) {
    const Rational centre = p.x - Rational(t * inst.r(), inst.n3());
    const Rational m(inst.m());
    const auto s_lo = detail::to_i64(detail::ceil_of((centre - reach_x) * m));
    const auto s_hi = detail::to_i64(detail::floor_of((centre + reach_x) * m));
    for (std::int64_t s = s_lo; s <= s_hi; ++s) out.emplace_back(s, t);
  }
  return out;
}

/// F at p together with a minimizing (s, t) and its three requirement values.
struct FieldValue {
  Rational value;
  std::int64_t s = 0;
  std::int64_t t = 0;
  std::array<Rational, 3> constraints;
};

inline FieldValue evaluate_field(const CoveringInstance& inst, const EvalPoint& p) {
  auto largest = [](const std::array<Rational, 3>& c) { return max(c[0], max(c[1], c[2])); };
  const auto t0 = detail::to_i64(detail::nearest_integer(p.y * Rational(inst.n3(), inst.m())));
  const auto s0 = detail::to_i64(detail::nearest_integer(
      Rational(inst.m()) * (p.x - Rational(t0 * inst.r(), inst.n3()))));
  FieldValue best{Rational(0), s0, t0, inst.constraint_values(p, s0, t0)};
  best.value = largest(best.constraints);
  for (const auto& [s, t] : candidate_window(inst, p, best.value)) {
    auto c = inst.constraint_values(p, s, t);
    auto v = largest(c);
    if (v < best.value || (v == best.value && std::pair(s, t) < std::pair(best.s, best.t))) {
      best = {std::move(v), s, t, std::move(c)};
    }
  }
  return best;
}

/// F(p): min over (s, t) of the largest weighted requirement.
inline Rational eval_F(const CoveringInstance& inst, const EvalPoint& p) {
  return evaluate_field(inst, p).value;
}

namespace detail {

using i128 = __int128;

inline constexpr int kScaleBits = 36;
inline constexpr std::int64_t kScale = std::int64_t{1} << kScaleBits;

inline i128 abs128(i128 v) { return v < 0 ? -v : v; }

inline i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline i128 ceil_div(i128 a, i128 b) { return -floor_div(-a, b); }

inline i128 i128_from_mpz(const mpz_class& v) {
  const mpz_class limit = mpz_class(1) << 120;
  if (abs(v) >= limit) return v < 0 ? -(static_cast<i128>(1) << 120) : (static_cast<i128>(1) << 120);
  mpz_class a = abs(v);
  const mpz_class lo_mask = (mpz_class(1) << 64) - 1;
  const mpz_class hi = a >> 64;
  const mpz_class lo = a & lo_mask;
  const i128 out = (static_cast<i128>(mpz_get_ui(hi.get_mpz_t())) << 64) |
                   static_cast<i128>(mpz_get_ui(lo.get_mpz_t()));
  return v < 0 ? -out : out;
}

/// One requirement as an integer linear form: signed value at scaled cell
/// coordinates (A, B) is (la A + lb B) e, over denominator dstar * kScale.
struct LinearForm {
  i128 la;
  i128 lb;
  i128 e;
};

/// Integer evaluation of F on dyadic points of the cell.
class Field {
 public:
  explicit Field(const CoveringInstance& inst)
      : n3_(inst.n3()), m_(inst.m()), r_(inst.r()) {
    const std::int64_t a1 = iabs(inst.n1()), n2 = inst.n2(), n3 = inst.n3(), m = inst.m(),
                       r = inst.r();
    const std::array<std::int64_t, 3> den{n2 + n3, m * (a1 + n3), m * n3 * (a1 + n2)};
    i128 lcm = 1;
    for (auto d : den) {
      lcm = lcm / std::gcd(static_cast<std::int64_t>(lcm % d), d) * d;
      if (lcm > (static_cast<i128>(1) << 60)) {
        throw Unsupported("instance too large for the integer field evaluator");
      }
    }
    dstar_ = lcm;
    forms_[0] = {0, m, dstar_ / den[0]};
    forms_[1] = {n3, static_cast<i128>(r) * m, dstar_ / den[1]};
    forms_[2] = {static_cast<i128>(n2) * n3,
                 static_cast<i128>(m) * (static_cast<i128>(n2) * r - static_cast<i128>(inst.n1()) * m),
                 dstar_ / den[2]};
  }

  const std::array<LinearForm, 3>& forms() const { return forms_; }
  i128 dstar() const { return dstar_; }
  i128 denominator() const { return dstar_ * kScale; }
  Rational to_rational(i128 num) const { return Rational::from_i128(num, denominator()); }

  std::array<i128, 3> signed_values(std::int64_t ia, std::int64_t ib, std::int64_t s,
                                    std::int64_t t) const {
    const i128 A = static_cast<i128>(ia) - static_cast<i128>(s) * kScale;
    const i128 B = static_cast<i128>(ib) - static_cast<i128>(t) * kScale;
    std::array<i128, 3> out{};
    for (std::size_t c = 0; c < 3; ++c) out[c] = (forms_[c].la * A + forms_[c].lb * B) * forms_[c].e;
    return out;
  }

  i128 largest(std::int64_t ia, std::int64_t ib, std::int64_t s, std::int64_t t) const {
    const auto v = signed_values(ia, ib, s, t);
    return std::max({abs128(v[0]), abs128(v[1]), abs128(v[2])});
  }

  /// Calls fn(s, t, values) for every (s, t) with (2,3) <= cap and (1,3) <= cap.
  /// When shrink is set the cap follows the best largest() seen so far.
  template <class Fn>
  void scan_window(std::int64_t ia, std::int64_t ib, i128& cap, bool shrink, Fn&& fn) const {
    const std::int64_t t0 = static_cast<std::int64_t>(floor_div(ib + kScale / 2, kScale));
    const i128 step23 = static_cast<i128>(m_) * forms_[0].e;
    bool up_open = true, down_open = true;
    for (std::int64_t d = 0; up_open || down_open; ++d) {
      for (int side = 0; side < 2; ++side) {
        if (d == 0 && side == 1) continue;
        bool& open = side == 0 ? up_open : down_open;
        if (!open) continue;
        const std::int64_t t = side == 0 ? t0 + d : t0 - d;
        const i128 B = static_cast<i128>(ib) - static_cast<i128>(t) * kScale;
        if (abs128(B) * step23 > cap) {
          if (d > 0) open = false;
          continue;
        }
        const i128 X = forms_[1].la * ia + forms_[1].lb * B;
        const i128 reach = cap / forms_[1].e;
        const i128 span = static_cast<i128>(n3_) * kScale;
        const i128 s_lo = ceil_div(X - reach, span);
        const i128 s_hi = floor_div(X + reach, span);
        for (i128 s = s_lo; s <= s_hi; ++s) {
          const auto v = signed_values(ia, ib, static_cast<std::int64_t>(s), t);
          const i128 g = std::max({abs128(v[0]), abs128(v[1]), abs128(v[2])});
          fn(static_cast<std::int64_t>(s), t, v, g);
          if (shrink && g < cap) cap = g;
        }
      }
    }
  }

  /// F numerator at the dyadic point (ia, ib) / kScale.
  i128 value(std::int64_t ia, std::int64_t ib) const {
    const std::int64_t t0 = static_cast<std::int64_t>(floor_div(ib + kScale / 2, kScale));
    const i128 B0 = static_cast<i128>(ib) - static_cast<i128>(t0) * kScale;
    const i128 X0 = forms_[1].la * ia + forms_[1].lb * B0;
    const i128 span = static_cast<i128>(n3_) * kScale;
    const std::int64_t s0 = static_cast<std::int64_t>(floor_div(2 * X0 + span, 2 * span));
    i128 cap = largest(ia, ib, s0, t0);
    scan_window(ia, ib, cap, true, [](std::int64_t, std::int64_t, const std::array<i128, 3>&, i128) {});
    return cap;
  }

  /// Bound on how much requirement c moves over a box of half-widths (ha, hb).
  i128 radius_of(std::size_t c, std::int64_t ha, std::int64_t hb) const {
    return (abs128(forms_[c].la) * ha + abs128(forms_[c].lb) * hb) * forms_[c].e;
  }

  i128 radius(std::int64_t ha, std::int64_t hb) const {
    return std::max({radius_of(0, ha, hb), radius_of(1, ha, hb), radius_of(2, ha, hb)});
  }

  /// Whether halving the a side shrinks the radius at least as much as b.
  bool prefer_split_a(std::int64_t ha, std::int64_t hb) const {
    i128 wa = 0, wb = 0;
    for (const auto& f : forms_) {
      wa = std::max(wa, abs128(f.la) * f.e * ha);
      wb = std::max(wb, abs128(f.lb) * f.e * hb);
    }
    return wa >= wb;
  }

 private:
  std::int64_t n3_;
  std::int64_t m_;
  std::int64_t r_;
  i128 dstar_ = 1;
  std::array<LinearForm, 3> forms_{};
};

/// Axis-aligned box of the scaled cell: centre (ca, cb), half-widths (ha, hb).
struct Box {
  std::int64_t ca, cb, ha, hb;
  i128 centre_value;
  i128 upper;
};

struct BoxOrder {
  bool operator()(const Box& x, const Box& y) const {
    if (x.upper != y.upper) return x.upper < y.upper;
    return std::tie(x.ca, x.cb, x.ha, x.hb) > std::tie(y.ca, y.cb, y.ha, y.hb);
  }
};

using BoxQueue = std::priority_queue<Box, std::vector<Box>, BoxOrder>;

inline Box make_box(const Field& f, std::int64_t ca, std::int64_t cb, std::int64_t ha,
                    std::int64_t hb) {
  const i128 v = f.value(ca, cb);
  return {ca, cb, ha, hb, v, v + f.radius(ha, hb)};
}

/// Splits along the side that reduces the radius most; nullopt if both sides
/// are at the resolution floor.
inline std::optional<std::array<Box, 2>> split_box(const Field& f, const Box& b) {
  bool along_a = f.prefer_split_a(b.ha, b.hb);
  if (along_a && b.ha == 1) along_a = false;
  if (!along_a && b.hb == 1) {
    if (b.ha == 1) return std::nullopt;
    along_a = true;
  }
  if (along_a) {
    const std::int64_t h = b.ha / 2;
    return std::array<Box, 2>{make_box(f, b.ca - h, b.cb, h, b.hb),
                              make_box(f, b.ca + h, b.cb, h, b.hb)};
  }
  const std::int64_t h = b.hb / 2;
  return std::array<Box, 2>{make_box(f, b.ca, b.cb - h, b.ha, h),
                            make_box(f, b.ca, b.cb + h, b.ha, h)};
}

}  // namespace detail

struct SolverStats {
  std::size_t boxes = 0;     ///< boxes evaluated
  std::size_t resolved = 0;  ///< boxes settled by exact local enumeration
};

/// Branch-and-bound maximization of F over the fundamental cell.
///
/// Each box's bound is F(centre) plus the most any requirement can move over
/// the box (gradients are exact in cell coordinates). Returns [best sample,
/// global upper bound] with hi - lo <= tol; α lies inside.
inline AlphaInterval certified_alpha(const CoveringInstance& inst, const Rational& tol,
                                     SolverStats* stats = nullptr) {
  using detail::i128;
  if (tol <= Rational(0)) throw InvalidArgument("tolerance must be positive");
  const detail::Field field(inst);
  const i128 tol_num = detail::i128_from_mpz((tol * Rational::from_i128(field.denominator(), 1)).floor());
  if (tol_num < 1) throw InvalidArgument("tolerance below solver resolution");

  constexpr std::int64_t half = detail::kScale / 2;
  detail::BoxQueue queue;
  queue.push(detail::make_box(field, half, half, half, half));
  i128 lo = queue.top().centre_value;
  i128 hi = lo;
  i128 stuck = 0;
  bool converged = false;
  std::size_t boxes = 1;
  while (!queue.empty()) {
    const detail::Box box = queue.top();
    queue.pop();
    if (box.upper - lo <= tol_num) {
      hi = std::max(box.upper, lo);
      converged = true;
      break;
    }
    const auto children = detail::split_box(field, box);
    if (!children) {
      stuck = std::max(stuck, box.upper);
      continue;
    }
    for (const auto& child : *children) {
      ++boxes;
      lo = std::max(lo, child.centre_value);
      if (child.upper > lo) queue.push(child);
    }
  }
  if (!converged) hi = std::max(lo, stuck);
  hi = std::max(hi, stuck);
  if (hi - lo > tol_num) throw Error("certified_alpha: resolution exhausted before tolerance");
  if (stats) stats->boxes += boxes;
  return {field.to_rational(lo), field.to_rational(hi), std::nullopt, "covering"};
}

namespace detail {

/// Affine piece (a α + b β + c) / dstar of one requirement for one (s, t).
struct Piece {
  mpz_class a, b, c;
  std::size_t group;
};

/// Rational point (na/den, nb/den) with den > 0.
struct RatPoint {
  mpz_class na, nb, den;
};

inline void normalize(RatPoint& p) {
  if (p.den < 0) {
    p.na = -p.na;
    p.nb = -p.nb;
    p.den = -p.den;
  }
}

/// Exact maximum of min_group max_piece over a box, by enumerating every
/// vertex of the arrangement of equality lines clipped to the box.
inline std::pair<Rational, RatPoint> local_maximum(const std::vector<Piece>& pieces,
                                                   std::size_t groups, const Box& box,
                                                   const i128 dstar) {
  const mpz_class Q = mpz_from_i128(kScale);
  const mpz_class a_lo = mpz_from_i128(static_cast<i128>(box.ca) - box.ha);
  const mpz_class a_hi = mpz_from_i128(static_cast<i128>(box.ca) + box.ha);
  const mpz_class b_lo = mpz_from_i128(static_cast<i128>(box.cb) - box.hb);
  const mpz_class b_hi = mpz_from_i128(static_cast<i128>(box.cb) + box.hb);

  struct Line {
    mpz_class la, lb, lc;
  };
  std::vector<Line> lines;
  const std::array<std::pair<const mpz_class*, const mpz_class*>, 4> corners{
      std::pair{&a_lo, &b_lo}, std::pair{&a_lo, &b_hi}, std::pair{&a_hi, &b_lo},
      std::pair{&a_hi, &b_hi}};
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    for (std::size_t j = i + 1; j < pieces.size(); ++j) {
      Line l{pieces[i].a - pieces[j].a, pieces[i].b - pieces[j].b, pieces[i].c - pieces[j].c};
      if (l.la == 0 && l.lb == 0) continue;
      int pos = 0, neg = 0;
      for (const auto& [ca, cb] : corners) {
        const mpz_class v = l.la * *ca + l.lb * *cb + l.lc * Q;
        pos += v > 0;
        neg += v < 0;
      }
      if (pos == 4 || neg == 4) continue;
      lines.push_back(std::move(l));
    }
  }

  std::vector<RatPoint> points;
  for (const auto& [ca, cb] : corners) points.push_back({*ca, *cb, Q});
  auto inside = [&](const RatPoint& p) {
    return a_lo * p.den <= p.na * Q && p.na * Q <= a_hi * p.den && b_lo * p.den <= p.nb * Q &&
           p.nb * Q <= b_hi * p.den;
  };
  for (const auto& l : lines) {
    if (l.lb != 0) {
      for (const mpz_class* av : {&a_lo, &a_hi}) {
        RatPoint p{*av * l.lb, -(l.la * *av + l.lc * Q), l.lb * Q};
        normalize(p);
        if (inside(p)) points.push_back(std::move(p));
      }
    }
    if (l.la != 0) {
      for (const mpz_class* bv : {&b_lo, &b_hi}) {
        RatPoint p{-(l.lb * *bv + l.lc * Q), *bv * l.la, l.la * Q};
        normalize(p);
        if (inside(p)) points.push_back(std::move(p));
      }
    }
  }
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const auto& l1 = lines[i];
      const auto& l2 = lines[j];
      mpz_class det = l1.la * l2.lb - l2.la * l1.lb;
      if (det == 0) continue;
      RatPoint p{l2.lc * l1.lb - l1.lc * l2.lb, l2.la * l1.lc - l1.la * l2.lc, det};
      normalize(p);
      if (inside(p)) points.push_back(std::move(p));
    }
  }

  std::vector<mpz_class> group_max(groups);
  std::vector<bool> seen(groups);
  bool have = false;
  mpz_class best_num, best_den;
  RatPoint best_point;
  for (const auto& p : points) {
    std::fill(seen.begin(), seen.end(), false);
    for (const auto& pc : pieces) {
      mpz_class v = pc.a * p.na + pc.b * p.nb + pc.c * p.den;
      if (!seen[pc.group] || v > group_max[pc.group]) {
        group_max[pc.group] = std::move(v);
        seen[pc.group] = true;
      }
    }
    const mpz_class* low = nullptr;
    for (std::size_t g = 0; g < groups; ++g) {
      if (seen[g] && (!low || group_max[g] < *low)) low = &group_max[g];
    }
    if (!low) continue;
    if (!have || *low * best_den > best_num * p.den) {
      best_num = *low;
      best_den = p.den;
      best_point = p;
      have = true;
    }
  }
  return {Rational(best_num, mpz_class(best_den * mpz_from_i128(dstar))), best_point};
}

inline constexpr std::size_t kMaxLocalPieces = 8;

}  // namespace detail

struct ExactResult {
  Rational value;
  EvalPoint argmax;
  SolverStats stats;
};

/// Exact maximum of F over the closed cell. F is piecewise linear, so its
/// maximum sits at a vertex of the arrangement of lines where two affine
/// pieces agree. The cell is subdivided until each box sees only a handful of
/// pieces; those pieces' arrangement is then enumerated exactly. Boxes whose
/// bound cannot beat the best value are discarded.
inline ExactResult exact_alpha_detail(const CoveringInstance& inst) {
  using detail::i128;
  const detail::Field field(inst);
  constexpr std::int64_t half = detail::kScale / 2;
  detail::BoxQueue queue;
  queue.push(detail::make_box(field, half, half, half, half));

  Rational best = field.to_rational(queue.top().centre_value);
  i128 best_floor = queue.top().centre_value;
  detail::RatPoint best_point{detail::mpz_from_i128(half), detail::mpz_from_i128(half),
                              detail::mpz_from_i128(detail::kScale)};
  const Rational full_den = Rational::from_i128(field.denominator(), 1);
  SolverStats stats;
  stats.boxes = 1;

  auto raise_best = [&](const Rational& v, detail::RatPoint p) {
    if (v <= best) return;
    best = v;
    best_floor = detail::i128_from_mpz((best * full_den).floor());
    best_point = std::move(p);
  };

  std::vector<detail::Piece> pieces;
  while (!queue.empty()) {
    const detail::Box box = queue.top();
    queue.pop();
    if (box.upper <= best_floor) continue;

    const i128 radius = field.radius(box.ha, box.hb);
    const bool at_floor = box.ha == 1 && box.hb == 1;
    bool resolved = false;
    if (at_floor || 8 * radius <= box.centre_value) {
      pieces.clear();
      std::size_t groups = 0;
      i128 cap = box.centre_value + 2 * radius;
      std::array<i128, 3> radii{field.radius_of(0, box.ha, box.hb),
                                field.radius_of(1, box.ha, box.hb),
                                field.radius_of(2, box.ha, box.hb)};
      bool too_many = false;
      field.scan_window(box.ca, box.cb, cap, false,
                        [&](std::int64_t s, std::int64_t t, const std::array<i128, 3>& v, i128 g) {
                          if (too_many || g > cap) return;
                          const std::size_t group = groups++;
                          for (std::size_t c = 0; c < 3; ++c) {
                            for (int sigma : {1, -1}) {
                              if (sigma * v[c] + radii[c] < g - radius) continue;
                              const auto& f = field.forms()[c];
                              const i128 sa = sigma * f.e * f.la;
                              const i128 sb = sigma * f.e * f.lb;
                              const mpz_class zs = static_cast<long>(s), zt = static_cast<long>(t);
                              pieces.push_back({detail::mpz_from_i128(sa), detail::mpz_from_i128(sb),
                                                -(detail::mpz_from_i128(sa) * zs +
                                                  detail::mpz_from_i128(sb) * zt),
                                                group});
                            }
                          }
                          if (pieces.size() > detail::kMaxLocalPieces && !at_floor) too_many = true;
                        });
      if (!too_many) {
        auto [value, point] = detail::local_maximum(pieces, groups, box, field.dstar());
        raise_best(value, std::move(point));
        ++stats.resolved;
        resolved = true;
      }
    }
    if (resolved) continue;

    const auto children = detail::split_box(field, box);
    if (!children) throw Error("exact_alpha: resolution exhausted");
    for (const auto& child : *children) {
      ++stats.boxes;
      if (child.centre_value > best_floor) {
        raise_best(field.to_rational(child.centre_value),
                   {detail::mpz_from_i128(child.ca), detail::mpz_from_i128(child.cb),
                    detail::mpz_from_i128(detail::kScale)});
      }
      if (child.upper > best_floor) queue.push(child);
    }
  }
  const Rational pa(best_point.na, best_point.den);
  const Rational pb(best_point.nb, best_point.den);
  return {best, inst.from_cell(pa, pb), stats};
}

inline Rational exact_alpha(const CoveringInstance& inst) {
  return exact_alpha_detail(inst).value;
}

struct ClosedInterval {
  Rational lo;
  Rational hi;
};

enum class OverlapCase { FirstInsideSecond, SecondInsideFirst, Partial };

struct Overlap {
  OverlapCase kind;
  Rational length;
  ClosedInterval j1;
  ClosedInterval j2;
};

/// Intervals of Δ allowed by (2,3) and by (1,3) for a fixed s at level E,
/// and the length of their intersection (0 when disjoint).
inline Overlap overlap_lengths(const CoveringInstance& inst, const Rational& e, std::int64_t s,
                               const Rational& beta) {
  if (e <= Rational(0)) throw InvalidArgument("overlap level must be positive");
  if (inst.r() == 0) throw RectangularUnsupported("overlap intervals need r > 0");
  const Rational reach1 = e / inst.w23();
  const Rational reach2 = e / inst.w13();
  const Rational scale(inst.m(), inst.r());
  const Rational shift = -beta + Rational(s, inst.m());
  Overlap out{OverlapCase::Partial, Rational(0), {-reach1, reach1},
              {scale * (-reach2 + shift), scale * (reach2 + shift)}};
  if (out.j2.lo <= out.j1.lo && out.j1.hi <= out.j2.hi) {
    out.kind = OverlapCase::FirstInsideSecond;
  } else if (out.j1.lo <= out.j2.lo && out.j2.hi <= out.j1.hi) {
    out.kind = OverlapCase::SecondInsideFirst;
  }
  const Rational len = min(out.j1.hi, out.j2.hi) - max(out.j1.lo, out.j2.lo);
  out.length = max(len, Rational(0));
  return out;
}

/// c(E) = E/|n3| (r/m (|n2|+|n3|) + |n1| + |n3|): how far -β + s/m may sit
/// from 0 while the two intervals still meet.
inline Rational coupling_radius(const CoveringInstance& inst, const Rational& e) {
  const std::int64_t a1 = detail::iabs(inst.n1());
  return e / Rational(inst.n3()) *
         (Rational(inst.r(), inst.m()) * Rational(inst.n2() + inst.n3()) + Rational(a1 + inst.n3()));
}

}  // namespace kronecker
