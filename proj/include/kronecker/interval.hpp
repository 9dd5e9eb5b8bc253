#pragma once

#include <optional>
#include <string>

#include "kronecker/rational.hpp"

namespace kronecker {

/// Enclosure [lo, hi] of an angular Kronecker constant, optionally with the
/// exact value. The method tag records which solver produced it.
struct AlphaInterval {
  Rational lo;
  Rational hi;
  std::optional<Rational> exact;
  std::string method;

  Rational width() const { return hi - lo; }
  Rational midpoint() const { return (lo + hi) / Rational(2); }
  bool contains(const Rational& v) const { return lo <= v && v <= hi; }
};

}  // namespace kronecker
