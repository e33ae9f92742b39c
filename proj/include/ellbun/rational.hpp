#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace ellbun {

using Int = std::int64_t;

/// Exact rational number, always stored in lowest terms with a positive
/// denominator. Intermediate products are widened to 128 bits; the values
/// this library handles (slopes, dimension counts) stay far below the
/// 64-bit range.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(Int n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rational(Int n, Int d);

  Int num() const noexcept { return num_; }
  Int den() const noexcept { return den_; }

  bool is_integer() const noexcept { return den_ == 1; }

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const { return Rational(-num_, den_); }

  friend bool operator==(const Rational& a, const Rational& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept;

  /// "n" for integers, "n/d" otherwise.
  std::string str() const;

 private:
  Int num_ = 0;
  Int den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& q);

/// Slopes are rationals; kept as a distinct name for readability at call sites.
using Slope = Rational;

/// gcd(|a|, |b|) with gcd(a, 0) = |a|.
Int gcd_abs(Int a, Int b) noexcept;

}  // namespace ellbun
