#pragma once

// Integer primitives, set canonicalization and the lattice parameters (m, r).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "kronecker/errors.hpp"
#include "kronecker/rational.hpp"

namespace kronecker {

struct EgcdResult {
  std::int64_t g;
  std::int64_t u;
  std::int64_t v;
};

/// Extended Euclid: g = gcd(|a|, |b|) > 0 and u*a + v*b = g.
inline EgcdResult egcd(std::int64_t a, std::int64_t b) {
  if (a == 0 && b == 0) throw InvalidArgument("egcd(0, 0) is undefined");
  std::int64_t old_r = a < 0 ? -a : a, r = b < 0 ? -b : b;
  std::int64_t old_u = 1, u = 0;
  std::int64_t old_v = 0, v = 1;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_u = std::exchange(u, old_u - q * u);
    old_v = std::exchange(v, old_v - q * v);
  }
  if (a < 0) old_u = -old_u;
  if (b < 0) old_v = -old_v;
  return {old_r, old_u, old_v};
}

/// Inverse of a modulo n, in [1, n-1]. For n == 1 the only residue is 0.
inline std::int64_t mod_inverse(std::int64_t a, std::int64_t n) {
  if (n <= 0) throw InvalidArgument("mod_inverse needs a positive modulus");
  if (n == 1) return 0;
  const auto [g, u, v] = egcd(a, n);
  (void)v;
  if (g != 1) {
    throw InvalidArgument("mod_inverse: " + std::to_string(a) + " is not invertible mod " +
                          std::to_string(n));
  }
  const std::int64_t inv = u % n;
  return inv < 0 ? inv + n : inv;
}

/// Raw user input, any order and signs.
struct Triple {
  std::int64_t n1 = 0;
  std::int64_t n2 = 0;
  std::int64_t n3 = 0;

  std::array<std::int64_t, 3> values() const { return {n1, n2, n3}; }
  friend bool operator==(const Triple&, const Triple&) = default;
};

/// How a canonical triple maps back to the raw input: canonical position i
/// came from raw index source[i], with its sign flipped when negated[i].
struct Provenance {
  std::array<std::size_t, 3> source{0, 1, 2};
  std::array<bool, 3> negated{false, false, false};
  friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// One representative of a set's α-equivalence class (sign flips of single
/// elements, global scaling). With distinct absolute values the form is
/// 0 < |n1| < n2 < n3 and gcd 1, the sign of n1 chosen so that r >= 0.
///
/// Equality compares the representative only; provenance is bookkeeping.
struct CanonicalTriple {
  std::int64_t n1 = 0;
  std::int64_t n2 = 0;
  std::int64_t n3 = 0;
  std::int64_t scale = 1;
  bool distinct_abs = true;
  Provenance provenance;

  std::array<std::int64_t, 3> values() const { return {n1, n2, n3}; }

  /// Reconstructs the raw input from the recorded transformations.
  Triple raw() const {
    const std::array<std::int64_t, 3> vals{n1, n2, n3};
    std::array<std::int64_t, 3> out{};
    for (std::size_t i = 0; i < 3; ++i) {
      out[provenance.source[i]] = (provenance.negated[i] ? -1 : 1) * scale * vals[i];
    }
    return {out[0], out[1], out[2]};
  }

  /// Raw indices whose sign was flipped.
  std::vector<std::size_t> sign_flips_applied() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < 3; ++i) {
      if (provenance.negated[i]) out.push_back(provenance.source[i]);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  friend bool operator==(const CanonicalTriple& a, const CanonicalTriple& b) {
    return a.n1 == b.n1 && a.n2 == b.n2 && a.n3 == b.n3 && a.distinct_abs == b.distinct_abs;
  }
};

/// m = gcd(n2, n3), n2p = n2/m, n3p = n3/m and the shear r of the lattice
/// generated by (1/m, 0) and (r/n3, m/n3).
struct LatticeParams {
  std::int64_t m = 1;
  std::int64_t n2p = 1;
  std::int64_t n3p = 1;
  std::int64_t r = 0;

  bool rectangular() const { return r == 0; }
  friend bool operator==(const LatticeParams&, const LatticeParams&) = default;
};

struct LatticeResult {
  CanonicalTriple triple;  ///< n1 possibly negated so that r >= 0
  LatticeParams params;
  bool n1_flipped = false;
};

namespace detail {

inline std::int64_t iabs(std::int64_t v) { return v < 0 ? -v : v; }

/// Representative of n1 * n2p^{-1} (mod n3p) in (-n3p/2, n3p/2].
inline std::int64_t reduced_shear(std::int64_t n1, std::int64_t n2p, std::int64_t n3p) {
  const std::int64_t inv = mod_inverse(n2p % n3p, n3p);
  const __int128 prod = static_cast<__int128>(n1) * inv;
  std::int64_t res = static_cast<std::int64_t>(prod % n3p);
  if (res < 0) res += n3p;
  if (2 * res > n3p) res -= n3p;
  return res;
}

}  // namespace detail

/// Divides out the gcd, sorts by absolute value and normalizes signs.
///
/// Throws ZeroElement for a zero entry and InvalidArgument when two entries
/// are equal (not a 3-element set). Equal absolute values of opposite sign are
/// accepted with distinct_abs = false; such triples are kept as (-n, n, k)
/// patterns with the lone element positive.
inline CanonicalTriple canonicalize(const Triple& t) {
  const auto raw = t.values();
  for (auto v : raw) {
    if (v == 0) throw ZeroElement("set contains 0");
  }
  if (raw[0] == raw[1] || raw[0] == raw[2] || raw[1] == raw[2]) {
    throw InvalidArgument("repeated element: not a 3-element set");
  }
  const std::int64_t g = std::gcd(std::gcd(detail::iabs(raw[0]), detail::iabs(raw[1])),
                                  detail::iabs(raw[2]));
  std::array<std::int64_t, 3> vals{raw[0] / g, raw[1] / g, raw[2] / g};

  std::array<std::size_t, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto aa = detail::iabs(vals[a]), ab = detail::iabs(vals[b]);
    return aa != ab ? aa < ab : vals[a] < vals[b];
  });

  CanonicalTriple ct;
  ct.scale = g;
  ct.provenance.source = order;
  std::array<std::int64_t, 3> out{vals[order[0]], vals[order[1]], vals[order[2]]};
  const std::array<std::int64_t, 3> abs_out{detail::iabs(out[0]), detail::iabs(out[1]),
                                            detail::iabs(out[2])};
  ct.distinct_abs = abs_out[0] < abs_out[1] && abs_out[1] < abs_out[2];

  std::array<std::int64_t, 3> target{};
  if (ct.distinct_abs) {
    const std::int64_t m = std::gcd(abs_out[1], abs_out[2]);
    const std::int64_t shear = detail::reduced_shear(abs_out[0], abs_out[1] / m, abs_out[2] / m);
    target = {shear < 0 ? -abs_out[0] : abs_out[0], abs_out[1], abs_out[2]};
  } else {
    // Opposite-sign pair stays (-n, n); the lone element is made positive.
    for (std::size_t i = 0; i < 3; ++i) {
      const bool paired = (i > 0 && abs_out[i] == abs_out[i - 1]) ||
                          (i < 2 && abs_out[i] == abs_out[i + 1]);
      target[i] = paired ? out[i] : abs_out[i];
    }
  }
  for (std::size_t i = 0; i < 3; ++i) ct.provenance.negated[i] = target[i] != out[i];
  ct.n1 = target[0];
  ct.n2 = target[1];
  ct.n3 = target[2];
  return ct;
}

/// Lattice parameters of a canonical triple with distinct absolute values.
/// When the congruence gives a negative shear, n1 is negated in the returned
/// triple and r becomes positive. r == 0 is the rectangular case.
inline LatticeResult lattice_params(const CanonicalTriple& ct) {
  if (!ct.distinct_abs) throw Unsupported("lattice parameters need distinct absolute values");
  const std::int64_t a1 = detail::iabs(ct.n1);
  if (!(0 < a1 && a1 < ct.n2 && ct.n2 < ct.n3)) {
    throw InvalidArgument("canonical triple must satisfy 0 < |n1| < n2 < n3");
  }
  if (std::gcd(std::gcd(a1, ct.n2), ct.n3) != 1) {
    throw InvalidArgument("canonical triple must have gcd 1");
  }
  LatticeResult out;
  out.triple = ct;
  auto& lp = out.params;
  lp.m = std::gcd(ct.n2, ct.n3);
  lp.n2p = ct.n2 / lp.m;
  lp.n3p = ct.n3 / lp.m;
  lp.r = detail::reduced_shear(ct.n1, lp.n2p, lp.n3p);
  if (lp.r < 0) {
    out.triple.n1 = -ct.n1;
    out.triple.provenance.negated[0] = !ct.provenance.negated[0];
    out.n1_flipped = true;
    lp.r = -lp.r;
  }
  return out;
}

/// κ = |e^{2πiα} - 1| = 2 sin(πα).
inline double kappa_from_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 0.5)) throw InvalidArgument("alpha must lie in [0, 1/2]");
  return 2.0 * std::sin(std::numbers::pi * alpha);
}

}  // namespace kronecker
