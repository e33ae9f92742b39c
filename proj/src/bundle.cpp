#include "ellbun/bundle.hpp"

#include <algorithm>
#include <set>

#include "ellbun/error.hpp"

namespace ellbun {

Slope slope(const Charge& c) {
  if (c.rank == 0) throw Error(ErrorCode::ZeroRankSlope, "slope of a rank-0 charge is undefined");
  return Slope(c.degree, c.rank);
}

bool canonical_less(const Indecomposable& a, const Indecomposable& b) {
  const auto sa = slope(a.base.charge);
  const auto sb = slope(b.base.charge);
  if (sa != sb) return sa > sb;
  const Int ra = a.charge().rank;
  const Int rb = b.charge().rank;
  if (ra != rb) return ra < rb;
  if (a.base.det.aj != b.base.det.aj) return a.base.det.aj < b.base.det.aj;
  return a.h < b.h;
}

Bundle::Bundle(std::vector<Indecomposable> summands) : summands_(std::move(summands)) {
  std::stable_sort(summands_.begin(), summands_.end(), canonical_less);
}

StableClass mk_stable(const Curve& curve, Int rank, Int degree, const CurvePoint& det_point) {
  if (rank < 1) {
    throw Error(ErrorCode::NotCoprime, "stable class needs rank >= 1, got " + std::to_string(rank));
  }
  if (gcd_abs(rank, degree) != 1) {
    throw Error(ErrorCode::NotCoprime, "charge (" + std::to_string(rank) + "," + std::to_string(degree) +
                                           ") is not coprime; no stable bundle has it");
  }
  curve.require(det_point);
  return {{rank, degree}, {degree, det_point}};
}

Indecomposable mk_indec(const StableClass& base, Int h) {
  if (h < 1) throw Error(ErrorCode::InvalidLength, "self-extension length must be >= 1, got " + std::to_string(h));
  return {base, h};
}

Bundle oplus(std::span<const Bundle> parts) {
  std::vector<Indecomposable> all;
  for (const auto& b : parts) all.insert(all.end(), b.summands().begin(), b.summands().end());
  return Bundle(std::move(all));
}

Bundle oplus(const Bundle& a, const Bundle& b) {
  const Bundle both[] = {a, b};
  return oplus(both);
}

StableClass trivial_line() { return {{1, 0}, {0, CurvePoint::infinity()}}; }

StableClass line_bundle(const Curve& curve, const PicClass& L) {
  curve.require(L.aj);
  return {{1, L.degree}, L};
}

Charge charge(const Bundle& B) {
  Charge c;
  for (const auto& s : B.summands()) c = c + s.charge();
  return c;
}

Int rank(const Bundle& B) { return charge(B).rank; }
Int degree(const Bundle& B) { return charge(B).degree; }
Slope slope(const Bundle& B) { return slope(charge(B)); }
Slope slope(const Indecomposable& I) { return slope(I.base.charge); }
Slope slope(const StableClass& S) { return slope(S.charge); }
Int chi(const Bundle& B) { return degree(B); }

PicClass det(const Curve& curve, const Indecomposable& I) { return curve.pic_scale(I.h, I.base.det); }

PicClass det(const Curve& curve, const Bundle& B) {
  PicClass acc;
  for (const auto& s : B.summands()) acc = curve.pic_add(acc, det(curve, s));
  return acc;
}

StableClass dual(const Curve& curve, const StableClass& S) {
  return {{S.charge.rank, -S.charge.degree}, curve.pic_neg(S.det)};
}

Bundle dual(const Curve& curve, const Bundle& B) {
  std::vector<Indecomposable> out;
  out.reserve(B.summands().size());
  for (const auto& s : B.summands()) out.push_back({dual(curve, s.base), s.h});
  return Bundle(std::move(out));
}

StableClass tensor_line(const Curve& curve, const StableClass& S, const PicClass& L) {
  const Int r = S.charge.rank;
  return {{r, S.charge.degree + r * L.degree}, curve.pic_add(S.det, curve.pic_scale(r, L))};
}

Bundle tensor_line(const Curve& curve, const Bundle& B, const PicClass& L) {
  curve.require(L.aj);
  std::vector<Indecomposable> out;
  out.reserve(B.summands().size());
  for (const auto& s : B.summands()) out.push_back({tensor_line(curve, s.base, L), s.h});
  return Bundle(std::move(out));
}

Bundle gr(const Bundle& B) {
  std::vector<Indecomposable> out;
  for (const auto& s : B.summands()) {
    for (Int i = 0; i < s.h; ++i) out.push_back({s.base, 1});
  }
  return Bundle(std::move(out));
}

std::string_view to_string(PolygonOrder order) noexcept {
  switch (order) {
    case PolygonOrder::Less: return "Less";
    case PolygonOrder::Equal: return "Equal";
    case PolygonOrder::Greater: return "Greater";
    case PolygonOrder::Incomparable: return "Incomparable";
  }
  return "Incomparable";
}

std::vector<HNPiece> hn(const Bundle& B) {
  if (B.empty()) throw Error(ErrorCode::ZeroRankSlope, "HN filtration of the zero bundle is undefined");
  // Canonical order already groups summands by decreasing slope.
  std::vector<HNPiece> pieces;
  std::vector<Indecomposable> current;
  Slope current_slope;
  for (const auto& s : B.summands()) {
    const Slope mu = slope(s);
    if (!current.empty() && mu != current_slope) {
      pieces.push_back({current_slope, Bundle(std::move(current))});
      current.clear();
    }
    current_slope = mu;
    current.push_back(s);
  }
  pieces.push_back({current_slope, Bundle(std::move(current))});
  return pieces;
}

HNType hn_type(const Bundle& B) {
  std::vector<Charge> pieces;
  for (const auto& piece : hn(B)) pieces.push_back(charge(piece.part));
  return hn_type(pieces);
}

HNType hn_type(std::span<const Charge> pieces) {
  HNType t;
  Charge acc;
  for (const auto& c : pieces) {
    acc = acc + c;
    t.vertices.push_back(acc);
  }
  return t;
}

Slope mu_max(const Bundle& B) { return hn(B).front().slope; }
Slope mu_min(const Bundle& B) { return hn(B).back().slope; }

Rational polygon_height(const HNType& type, const Rational& x) {
  Charge prev;
  for (const auto& v : type.vertices) {
    if (x <= Rational(v.rank)) {
      const Rational t = (x - Rational(prev.rank)) / Rational(v.rank - prev.rank);
      return Rational(prev.degree) + t * Rational(v.degree - prev.degree);
    }
    prev = v;
  }
  return Rational(prev.degree);
}

PolygonOrder compare_hnp(const HNType& a, const HNType& b) {
  const Charge ta = a.vertices.empty() ? Charge{} : a.vertices.back();
  const Charge tb = b.vertices.empty() ? Charge{} : b.vertices.back();
  if (ta != tb) return PolygonOrder::Incomparable;
  std::set<Int> xs;
  for (const auto& v : a.vertices) xs.insert(v.rank);
  for (const auto& v : b.vertices) xs.insert(v.rank);
  bool above = false;
  bool below = false;
  for (Int x : xs) {
    const auto c = polygon_height(a, Rational(x)) <=> polygon_height(b, Rational(x));
    if (c > 0) above = true;
    if (c < 0) below = true;
  }
  if (above && below) return PolygonOrder::Incomparable;
  if (above) return PolygonOrder::Greater;
  if (below) return PolygonOrder::Less;
  return PolygonOrder::Equal;
}

PolygonOrder compare_hnp(const Bundle& a, const Bundle& b) {
  if (charge(a) != charge(b)) return PolygonOrder::Incomparable;
  if (a.empty()) return PolygonOrder::Equal;
  return compare_hnp(hn_type(a), hn_type(b));
}

bool is_semistable(const Bundle& B) {
  const auto& s = B.summands();
  return std::all_of(s.begin(), s.end(), [&](const Indecomposable& i) { return slope(i) == slope(s.front()); });
}

bool is_stable(const Bundle& B) { return B.summands().size() == 1 && B.summands().front().h == 1; }

bool is_basic(const Bundle& B) {
  if (!is_semistable(B)) return false;
  std::set<StableClass> bases;
  for (const auto& s : B.summands()) {
    if (!bases.insert(s.base).second) return false;
  }
  return true;
}

Int length(const Bundle& B) {
  Int n = 0;
  for (const auto& s : B.summands()) n += s.h;
  return n;
}

}  // namespace ellbun
