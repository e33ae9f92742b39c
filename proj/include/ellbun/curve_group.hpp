#pragma once

#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ellbun/rational.hpp"

namespace ellbun {

/// Weierstrass curve y^2 = x^3 + a x + b over F_p.
struct CurveConfig {
  Int p = 101;
  Int a = 1;
  Int b = 1;

  friend bool operator==(const CurveConfig&, const CurveConfig&) = default;
};

/// Largest modulus for which point enumeration is attempted.
inline constexpr Int kMaxEnumerablePrime = 10'000;

/// Throws NotPrime or SingularCurve.
void validate_curve(const CurveConfig& cfg);

/// "p,a,b" -> CurveConfig (not validated). Throws ParseError.
CurveConfig parse_curve_config(std::string_view text);

/// A point of the curve group. Infinity sorts first, then (x, y)
/// lexicographically; infinity is stored with x = y = 0 so that the
/// defaulted comparison gives that order.
struct CurvePoint {
  bool finite = false;
  Int x = 0;
  Int y = 0;

  static constexpr CurvePoint infinity() noexcept { return {}; }
  static constexpr CurvePoint affine(Int x, Int y) noexcept { return {true, x, y}; }

  bool is_infinity() const noexcept { return !finite; }

  friend auto operator<=>(const CurvePoint&, const CurvePoint&) = default;
};

/// "inf" or "(x,y)".
std::string to_string(const CurvePoint& pt);

/// Isomorphism class of a line bundle: its degree and the Abel-Jacobi image
/// of a divisor of that degree.
struct PicClass {
  Int degree = 0;
  CurvePoint aj{};

  friend auto operator<=>(const PicClass&, const PicClass&) = default;
};

/// The rational-point group of a validated curve. Cheap to copy; the point
/// table is computed on first use and shared between copies.
class Curve {
 public:
  Curve();
  explicit Curve(const CurveConfig& cfg);

  const CurveConfig& config() const noexcept { return cfg_; }
  Int p() const noexcept { return cfg_.p; }

  bool contains(const CurvePoint& pt) const noexcept;
  /// Throws OffCurve unless contains(pt).
  void require(const CurvePoint& pt) const;

  /// Reduces coordinates mod p and checks the point is on the curve.
  CurvePoint point(Int x, Int y) const;

  CurvePoint add(const CurvePoint& P, const CurvePoint& Q) const;
  CurvePoint neg(const CurvePoint& P) const;
  CurvePoint sub(const CurvePoint& P, const CurvePoint& Q) const { return add(P, neg(Q)); }
  CurvePoint scalar_mul(Int n, const CurvePoint& P) const;

  /// All points, infinity first then ascending (x, y). Throws CurveTooLarge.
  const std::vector<CurvePoint>& points() const;
  Int order() const { return static_cast<Int>(points().size()); }
  /// Order of P in the group (requires enumeration).
  Int point_order(const CurvePoint& P) const;

  /// Points with 2P = infinity, including infinity.
  std::vector<CurvePoint> two_torsion() const;
  /// All z with 2z = q.
  std::vector<CurvePoint> halvings(const CurvePoint& q) const;
  /// All z with n z = q (n >= 1).
  std::vector<CurvePoint> divisions(Int n, const CurvePoint& q) const;

  PicClass pic_add(const PicClass& L, const PicClass& M) const;
  PicClass pic_neg(const PicClass& L) const;
  PicClass pic_sub(const PicClass& L, const PicClass& M) const { return pic_add(L, pic_neg(M)); }
  PicClass pic_scale(Int n, const PicClass& L) const;

 private:
  struct Table;

  Int mod(Int v) const noexcept;
  Int mul(Int u, Int v) const noexcept;
  Int inv(Int v) const;
  bool on_curve_raw(Int x, Int y) const noexcept;

  CurveConfig cfg_;
  std::shared_ptr<Table> table_;
};

}  // namespace ellbun
