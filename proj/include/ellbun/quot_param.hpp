#pragma once

#include <vector>

#include "ellbun/bundle.hpp"

namespace ellbun {

/// Element of the symmetric square of the curve; stored with first <= second.
class UnorderedPair {
 public:
  UnorderedPair(const CurvePoint& a, const CurvePoint& b) : first_(std::min(a, b)), second_(std::max(a, b)) {}

  const CurvePoint& first() const noexcept { return first_; }
  const CurvePoint& second() const noexcept { return second_; }
  bool diagonal() const noexcept { return first_ == second_; }

  friend auto operator<=>(const UnorderedPair&, const UnorderedPair&) = default;

 private:
  CurvePoint first_;
  CurvePoint second_;
};

/// A quotient E -> Q of a charge-(3,1) stable bundle onto a degree-1 line
/// bundle, by classification data.
struct QuotDatum {
  Bundle kernel;
  PicClass quotient;

  friend bool operator==(const QuotDatum&, const QuotDatum&) = default;
};

/// {z, z'} -> kernel O_z + O_z' (or the self-extension _2O_z on the
/// diagonal), quotient (1, p - z - z') where p is the determinant point of E.
/// Throws NotCharge31Stable or OffCurve.
QuotDatum pair_to_quot31(const Curve& curve, const Bundle& E, const UnorderedPair& pair);

/// All pairs whose quotient is (1, q): {z, c - z} with c = p - q, in
/// ascending order. Throws NotCharge31Stable, OffCurve or CurveTooLarge.
std::vector<UnorderedPair> fiber31(const Curve& curve, const Bundle& E, const CurvePoint& q);

/// Stable middle term of the universal extension of the skyscraper at pt by
/// copies of S: charge (r^2, r d + 1), determinant (r d + 1, r a + pt).
StableClass twist_middle(const Curve& curve, const StableClass& S, const CurvePoint& pt);

}  // namespace ellbun
