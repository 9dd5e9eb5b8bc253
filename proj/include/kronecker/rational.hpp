#pragma once

#include <gmpxx.h>

#include <cctype>
#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "kronecker/errors.hpp"

namespace kronecker {

namespace detail {

inline mpz_class mpz_from_i128(__int128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                            : static_cast<unsigned __int128>(v);
  mpz_class hi = static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64));
  mpz_class lo = static_cast<unsigned long>(static_cast<std::uint64_t>(u));
  mpz_class out = (hi << 64) + lo;
  return neg ? mpz_class(-out) : out;
}

}  // namespace detail

/// Exact fraction with positive denominator, always kept in lowest terms.
///
/// Thin value wrapper over GMP's mpq_class so that expression templates never
/// leak into the rest of the library.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t v) : q_(static_cast<long>(v)) {}  // NOLINT(implicit)
  Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw InvalidArgument("rational with zero denominator");
    q_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
    q_.canonicalize();
  }
  Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw InvalidArgument("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  static Rational from_i128(__int128 num, __int128 den) {
    return Rational(detail::mpz_from_i128(num), detail::mpz_from_i128(den));
  }

  /// Exact value of a finite double.
  static Rational from_double(double v) { return Rational(mpq_class(v)); }

  /// Accepts "p/q", integers, and decimals with optional exponent ("2.5e-3").
  static Rational parse(std::string_view text);

  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }
  const mpq_class& mpq() const { return q_; }

  /// Serialized as "p/q" even for integers.
  std::string str() const { return q_.get_num().get_str() + "/" + q_.get_den().get_str(); }
  double to_double() const { return q_.get_d(); }

  int sign() const { return sgn(q_); }
  Rational abs() const { return Rational(mpq_class(::abs(q_))); }
  bool is_integer() const { return q_.get_den() == 1; }
  mpz_class floor() const {
    mpz_class out;
    mpz_fdiv_q(out.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return out;
  }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.q_ == 0) throw InvalidArgument("division by zero rational");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class q_{0};
};

inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

inline Rational Rational::parse(std::string_view text) {
  auto fail = [&] { return InvalidArgument("cannot parse rational '" + std::string(text) + "'"); };
  if (text.empty()) throw fail();
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class num, den;
    if (num.set_str(std::string(text.substr(0, slash)), 10) != 0) throw fail();
    if (den.set_str(std::string(text.substr(slash + 1)), 10) != 0) throw fail();
    if (den == 0) throw fail();
    return Rational(num, den);
  }
  std::size_t i = 0;
  bool neg = false;
  if (text[i] == '+' || text[i] == '-') neg = text[i++] == '-';
  std::string digits;
  long frac_digits = 0;
  bool seen_dot = false;
  for (; i < text.size() && text[i] != 'e' && text[i] != 'E'; ++i) {
    const char c = text[i];
    if (c == '.') {
      if (seen_dot) throw fail();
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_dot) ++frac_digits;
    } else {
      throw fail();
    }
  }
  if (digits.empty()) throw fail();
  long exponent = 0;
  if (i < text.size()) {
    const std::string exp_text(text.substr(i + 1));
    if (exp_text.empty()) throw fail();
    std::size_t used = 0;
    try {
      exponent = std::stol(exp_text, &used);
    } catch (const std::exception&) {
      throw fail();
    }
    if (used != exp_text.size()) throw fail();
  }
  mpz_class num(digits, 10);
  if (neg) num = -num;
  const long shift = exponent - frac_digits;
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  return shift >= 0 ? Rational(mpz_class(num * pow10), mpz_class(1)) : Rational(num, pow10);
}

}  // namespace kronecker
