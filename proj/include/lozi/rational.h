#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace lozi {

/// Exact rational number, always held in lowest terms with a positive
/// denominator. Backed by GMP's mpq_class.
class Rational {
public:
  Rational() = default;
  Rational(long value) : v_(value) {}  // NOLINT: implicit from integers is intended
  Rational(long num, long den);

  /// Parses "n", "n/d" or a finite decimal such as "1.4" or "-0.25".
  /// Throws std::invalid_argument naming the offending token.
  static Rational parse(std::string_view text);

  /// Exact value of a finite double (every double is a dyadic rational).
  static Rational from_double(double value);

  std::string numerator() const { return v_.get_num().get_str(); }
  std::string denominator() const { return v_.get_den().get_str(); }
  bool is_integer() const { return v_.get_den() == 1; }

  /// Canonical "num/den" form, e.g. "15/29", "-5/4", "0/1".
  std::string str() const;

  /// Nearest-toward-zero double (GMP truncation semantics).
  double to_double() const { return v_.get_d(); }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }
  Rational abs() const;

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a);

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  const mpq_class& raw() const { return v_; }

private:
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  mpq_class v_;
};

/// rat(30, 58) == 15/29. Throws std::domain_error("division by zero") when den == 0.
Rational rat(long num, long den);

Rational pow(const Rational& base, unsigned exponent);
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace lozi
