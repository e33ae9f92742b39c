#pragma once

#include <compare>
#include <span>
#include <vector>

#include "ellbun/curve_group.hpp"
#include "ellbun/rational.hpp"

namespace ellbun {

/// (rank, degree). Rank 0 only appears as torsion bookkeeping in analyzer
/// output, never inside a Bundle.
struct Charge {
  Int rank = 0;
  Int degree = 0;

  friend auto operator<=>(const Charge&, const Charge&) = default;
  friend Charge operator+(Charge a, Charge b) { return {a.rank + b.rank, a.degree + b.degree}; }
  friend Charge operator-(Charge a, Charge b) { return {a.rank - b.rank, a.degree - b.degree}; }
  friend Charge operator*(Int k, Charge c) { return {k * c.rank, k * c.degree}; }
};

/// Throws ZeroRankSlope for rank 0.
Slope slope(const Charge& c);

/// Stable bundle of coprime charge, determined up to isomorphism by its
/// charge and determinant.
struct StableClass {
  Charge charge;
  PicClass det;

  Int rank() const noexcept { return charge.rank; }
  Int degree() const noexcept { return charge.degree; }

  friend auto operator<=>(const StableClass&, const StableClass&) = default;
};

/// The unique h-fold iterated self-extension of a stable base.
struct Indecomposable {
  StableClass base;
  Int h = 1;

  Charge charge() const noexcept { return h * base.charge; }

  friend bool operator==(const Indecomposable&, const Indecomposable&) = default;
};

/// Isomorphism class of a vector bundle: a multiset of indecomposables kept
/// in canonical order (slope descending, rank ascending, base determinant
/// point ascending, h ascending), so that == is isomorphism.
class Bundle {
 public:
  Bundle() = default;
  explicit Bundle(std::vector<Indecomposable> summands);
  explicit Bundle(const Indecomposable& summand) : Bundle(std::vector<Indecomposable>{summand}) {}
  explicit Bundle(const StableClass& stable) : Bundle(Indecomposable{stable, 1}) {}

  const std::vector<Indecomposable>& summands() const noexcept { return summands_; }
  bool empty() const noexcept { return summands_.empty(); }

  friend bool operator==(const Bundle&, const Bundle&) = default;

 private:
  std::vector<Indecomposable> summands_;
};

/// Strict weak order used for canonical sorting of summands.
bool canonical_less(const Indecomposable& a, const Indecomposable& b);

/// Throws NotCoprime (gcd(r, d) != 1, with gcd(r, 0) = r, or r < 1) or OffCurve.
StableClass mk_stable(const Curve& curve, Int rank, Int degree, const CurvePoint& det_point);
/// Throws InvalidLength for h < 1.
Indecomposable mk_indec(const StableClass& base, Int h);

Bundle oplus(std::span<const Bundle> parts);
Bundle oplus(const Bundle& a, const Bundle& b);

/// st(1,0;inf).
StableClass trivial_line();
StableClass line_bundle(const Curve& curve, const PicClass& L);

Charge charge(const Bundle& B);
Int rank(const Bundle& B);
Int degree(const Bundle& B);
/// Throws ZeroRankSlope for the zero bundle.
Slope slope(const Bundle& B);
Slope slope(const Indecomposable& I);
Slope slope(const StableClass& S);
/// Euler characteristic; equals the degree on a genus-1 curve.
Int chi(const Bundle& B);

PicClass det(const Curve& curve, const Bundle& B);
PicClass det(const Curve& curve, const Indecomposable& I);

StableClass dual(const Curve& curve, const StableClass& S);
Bundle dual(const Curve& curve, const Bundle& B);
StableClass tensor_line(const Curve& curve, const StableClass& S, const PicClass& L);
Bundle tensor_line(const Curve& curve, const Bundle& B, const PicClass& L);

/// Generalized associated graded: every _hS becomes h copies of S.
Bundle gr(const Bundle& B);

struct HNPiece {
  Slope slope;
  Bundle part;

  friend bool operator==(const HNPiece&, const HNPiece&) = default;
};

/// Cumulative (rank, degree) vertices of the HN polygon, excluding the
/// origin.
struct HNType {
  std::vector<Charge> vertices;

  friend bool operator==(const HNType&, const HNType&) = default;
};

enum class PolygonOrder { Less, Equal, Greater, Incomparable };

std::string_view to_string(PolygonOrder order) noexcept;

/// HN pieces by strictly decreasing slope. Throws ZeroRankSlope.
std::vector<HNPiece> hn(const Bundle& B);
HNType hn_type(const Bundle& B);
/// HN type of a list of semistable pieces given by charge (slopes strictly
/// decreasing).
HNType hn_type(std::span<const Charge> pieces);
Slope mu_max(const Bundle& B);
Slope mu_min(const Bundle& B);

/// The polygon through the origin and the vertices, evaluated at x in
/// [0, last rank].
Rational polygon_height(const HNType& type, const Rational& x);

/// Shatz order for equal total charge; Incomparable otherwise.
PolygonOrder compare_hnp(const HNType& a, const HNType& b);
PolygonOrder compare_hnp(const Bundle& a, const Bundle& b);

bool is_semistable(const Bundle& B);
bool is_stable(const Bundle& B);
/// Semistable with pairwise distinct stable bases.
bool is_basic(const Bundle& B);
/// Sum of self-extension lengths (Jordan-Holder length of gr).
Int length(const Bundle& B);

}  // namespace ellbun
