#pragma once

// Brute-force α straight from the definition:
//   α(S) = sup over targets τ in [0,1)^S of inf over x of max_j ||n_j x - τ_j||,
// with ||u|| the distance from u to the nearest integer. Independent of the
// lattice machinery in covering.hpp.
//
// Shifting x by δ moves every target by n_j δ, so the inner value depends only
// on the orbit of τ; fixing the last target coordinate to 0 therefore loses
// nothing and removes one grid dimension.

#include <algorithm>
#include <array>
#include <initializer_list>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "kronecker/errors.hpp"
#include "kronecker/interval.hpp"
#include "kronecker/rational.hpp"

namespace kronecker {

struct OracleConfig {
  std::int64_t target_grid = 64;  ///< cells per free target coordinate
  std::int64_t x_grid = 0;        ///< 0: exact breakpoint enumeration
  std::int64_t refine_rounds = 10;
  Rational shrink{1, 2};          ///< child cell side / parent side, must be 1/k
  std::size_t max_cells = std::size_t{1} << 18;

  void validate() const {
    if (target_grid < 8) throw InvalidArgument("oracle target grid must be >= 8");
    if (x_grid != 0 && x_grid < 8) throw InvalidArgument("oracle x grid must be 0 or >= 8");
    if (refine_rounds < 0) throw InvalidArgument("refine rounds must be non-negative");
    if (!(Rational(0) < shrink && shrink < Rational(1)) || shrink.numerator() != 1) {
      throw InvalidArgument("shrink must be 1/k for an integer k >= 2");
    }
  }
  std::int64_t split_factor() const { return shrink.denominator().get_si(); }
};

namespace detail {

inline double dist_to_int(double u) { return std::abs(u - std::nearbyint(u)); }

inline Rational dist_to_int(const Rational& u) {
  const Rational below(u.floor(), mpz_class(1));
  const Rational frac = u - below;
  return min(frac, Rational(1) - frac);
}

template <class T>
T set_distance(std::span<const std::int64_t> set, std::span<const T> targets, const T& x) {
  T worst = T(0);
  for (std::size_t j = 0; j < set.size(); ++j) {
    const T d = dist_to_int(T(set[j]) * x - targets[j]);
    if (worst < d) worst = d;
  }
  return worst;
}

/// Exact inner minimum. The function of x is piecewise linear; its minimum is
/// at a zero of one term or where two terms cross with opposite slope, i.e.
/// n_i x - τ_i - k_i = ±(n_j x - τ_j - k_j) for some integers k.
template <class T>
T inner_exact(std::span<const std::int64_t> set, std::span<const T> targets) {
  bool have = false;
  T best = T(0);
  auto consider = [&](const T& x) {
    const T v = set_distance<T>(set, targets, x);
    if (!have || v < best) {
      best = v;
      have = true;
    }
  };
  for (std::size_t j = 0; j < set.size(); ++j) {
    const std::int64_t n = set[j];
    const std::int64_t span = n < 0 ? -n : n;
    for (std::int64_t k = 0; k < span; ++k) consider((targets[j] + T(k)) / T(n));
  }
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = i + 1; j < set.size(); ++j) {
      for (std::int64_t sigma : {1, -1}) {
        const std::int64_t c = set[i] - sigma * set[j];
        if (c == 0) continue;
        const T rhs = targets[i] - T(sigma) * targets[j];
        const std::int64_t span = c < 0 ? -c : c;
        for (std::int64_t k = 0; k < span; ++k) consider((rhs + T(k)) / T(c));
      }
    }
  }
  return best;
}

/// Grid of x_grid points, then golden-section refinement around the best few.
/// Result is within max|n| / (2 x_grid) of the true minimum.
inline double inner_grid(std::span<const std::int64_t> set, std::span<const double> targets,
                         std::int64_t x_grid) {
  const double h = 1.0 / static_cast<double>(x_grid);
  std::vector<std::pair<double, double>> samples;
  samples.reserve(static_cast<std::size_t>(x_grid));
  for (std::int64_t k = 0; k < x_grid; ++k) {
    const double x = static_cast<double>(k) * h;
    samples.emplace_back(set_distance<double>(set, targets, x), x);
  }
  const std::size_t keep = std::min<std::size_t>(4, samples.size());
  std::partial_sort(samples.begin(), samples.begin() + static_cast<std::ptrdiff_t>(keep),
                    samples.end());
  double best = samples.front().first;
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (std::size_t i = 0; i < keep; ++i) {
    double lo = samples[i].second - h, hi = samples[i].second + h;
    double c = hi - phi * (hi - lo), d = lo + phi * (hi - lo);
    double fc = set_distance<double>(set, targets, c), fd = set_distance<double>(set, targets, d);
    for (int it = 0; it < 60; ++it) {
      if (fc < fd) {
        hi = d;
        d = c;
        fd = fc;
        c = hi - phi * (hi - lo);
        fc = set_distance<double>(set, targets, c);
      } else {
        lo = c;
        c = d;
        fc = fd;
        d = lo + phi * (hi - lo);
        fd = set_distance<double>(set, targets, d);
      }
    }
    best = std::min({best, fc, fd});
  }
  return best;
}

inline void check_oracle_set(std::span<const std::int64_t> set) {
  if (set.size() < 1 || set.size() > 3) throw InvalidArgument("oracle handles sets of size 1 to 3");
  for (auto v : set) {
    if (v == 0) throw ZeroElement("set contains 0");
  }
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = i + 1; j < set.size(); ++j) {
      if (set[i] == set[j]) throw InvalidArgument("repeated element in set");
    }
  }
}

}  // namespace detail

/// inf over x of max_j ||n_j x - τ_j||. Exact when cfg.x_grid == 0; otherwise
/// an upper estimate within max|n| / (2 x_grid).
inline Rational oracle_distance(std::span<const std::int64_t> set,
                                std::span<const Rational> targets, const OracleConfig& cfg = {}) {
  detail::check_oracle_set(set);
  if (targets.size() != set.size()) throw InvalidArgument("one target per set element");
  if (cfg.x_grid == 0) return detail::inner_exact<Rational>(set, targets);
  std::vector<double> t;
  for (const auto& v : targets) t.push_back(v.to_double());
  return Rational::from_double(detail::inner_grid(set, t, cfg.x_grid));
}

/// Heuristic enclosure of α(S) for |S| in {2, 3} (singletons return 0).
///
/// The free target coordinates are gridded; the inner value moves by at most
/// the sup-norm displacement of the targets, so each cell is bounded by its
/// centre value plus half its side. Cells whose bound can still beat the best
/// value are split for refine_rounds rounds. Returns [best found, largest
/// remaining cell bound].
inline AlphaInterval oracle_alpha(std::span<const std::int64_t> set, const OracleConfig& cfg = {}) {
  detail::check_oracle_set(set);
  cfg.validate();
  if (set.size() == 1) return {Rational(0), Rational(0), Rational(0), "oracle"};

  const std::size_t dims = set.size() - 1;
  const std::int64_t k = cfg.split_factor();

  // A cell at depth d has side 1 / (grid * k^d); index holds its lower corner.
  struct Cell {
    std::array<std::int64_t, 2> index;
    double value;
  };
  std::int64_t cells_per_axis = cfg.target_grid;
  std::vector<double> targets(set.size(), 0.0);
  auto evaluate = [&](const std::array<std::int64_t, 2>& idx) {
    for (std::size_t d = 0; d < dims; ++d) {
      targets[d] = (static_cast<double>(idx[d]) + 0.5) / static_cast<double>(cells_per_axis);
    }
    targets[dims] = 0.0;
    return cfg.x_grid == 0 ? detail::inner_exact<double>(set, targets)
                           : detail::inner_grid(set, targets, cfg.x_grid);
  };

  std::vector<Cell> cells;
  std::array<std::int64_t, 2> idx{0, 0};
  for (idx[0] = 0; idx[0] < cfg.target_grid; ++idx[0]) {
    for (idx[1] = 0; idx[1] < (dims == 2 ? cfg.target_grid : 1); ++idx[1]) {
      cells.push_back({idx, evaluate(idx)});
    }
  }
  auto best_of = [](const std::vector<Cell>& cs) {
    const Cell* b = &cs.front();
    for (const auto& c : cs) {
      if (c.value > b->value) b = &c;
    }
    return *b;
  };
  Cell best = best_of(cells);
  std::int64_t best_axis = cells_per_axis;

  for (std::int64_t round = 0; round < cfg.refine_rounds; ++round) {
    const double half = 0.5 / static_cast<double>(cells_per_axis);
    std::vector<Cell> live;
    for (const auto& c : cells) {
      if (c.value + half > best.value) live.push_back(c);
    }
    const std::size_t children = live.size() * static_cast<std::size_t>(dims == 2 ? k * k : k);
    if (children > cfg.max_cells) {
      cells = std::move(live);
      break;
    }
    cells_per_axis *= k;
    std::vector<Cell> next;
    next.reserve(children);
    for (const auto& c : live) {
      for (std::int64_t i = 0; i < k; ++i) {
        for (std::int64_t j = 0; j < (dims == 2 ? k : 1); ++j) {
          const std::array<std::int64_t, 2> child{c.index[0] * k + i,
                                                  dims == 2 ? c.index[1] * k + j : 0};
          next.push_back({child, evaluate(child)});
        }
      }
    }
    cells = std::move(next);
    const Cell round_best = best_of(cells);
    if (round_best.value > best.value) {
      best = round_best;
      best_axis = cells_per_axis;
    }
  }

  // Exact value at the best sampled target.
  std::vector<Rational> exact_targets(set.size(), Rational(0));
  for (std::size_t d = 0; d < dims; ++d) {
    exact_targets[d] = Rational(2 * best.index[d] + 1, 2 * best_axis);
  }
  const Rational lo = cfg.x_grid == 0 ? detail::inner_exact<Rational>(set, exact_targets)
                                      : Rational::from_double(best.value);
  double upper = best.value;
  const double half = 0.5 / static_cast<double>(cells_per_axis);
  for (const auto& c : cells) upper = std::max(upper, c.value + half);
  // Absorb floating-point rounding in the cell values.
  const Rational hi = max(lo, Rational::from_double(upper) + Rational(1, 1000000000));
  return {lo, hi, std::nullopt, "oracle"};
}

inline AlphaInterval oracle_alpha(std::initializer_list<std::int64_t> set,
                                  const OracleConfig& cfg = {}) {
  const std::vector<std::int64_t> v(set);
  return oracle_alpha(std::span<const std::int64_t>(v), cfg);
}

}  // namespace kronecker
