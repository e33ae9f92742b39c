#include "ellbun/quot_param.hpp"

#include <set>

#include "ellbun/error.hpp"

namespace ellbun {

namespace {

const StableClass& require_charge31(const Bundle& E) {
  if (!is_stable(E) || E.summands().front().base.charge != Charge{3, 1}) {
    throw Error(ErrorCode::NotCharge31Stable, "expected a single stable summand of charge (3,1)");
  }
  return E.summands().front().base;
}

StableClass degree_zero_line(const CurvePoint& z) { return {{1, 0}, {0, z}}; }

}  // namespace

QuotDatum pair_to_quot31(const Curve& curve, const Bundle& E, const UnorderedPair& pair) {
  const StableClass& base = require_charge31(E);
  curve.require(pair.first());
  curve.require(pair.second());
  const CurvePoint& z = pair.first();
  const CurvePoint& zp = pair.second();
  QuotDatum q;
  if (pair.diagonal()) {
    q.kernel = Bundle(Indecomposable{degree_zero_line(z), 2});
  } else {
    q.kernel = Bundle(std::vector<Indecomposable>{{degree_zero_line(z), 1}, {degree_zero_line(zp), 1}});
  }
  q.quotient = {1, curve.sub(base.det.aj, curve.add(z, zp))};
  return q;
}

std::vector<UnorderedPair> fiber31(const Curve& curve, const Bundle& E, const CurvePoint& q) {
  const StableClass& base = require_charge31(E);
  curve.require(q);
  const CurvePoint c = curve.sub(base.det.aj, q);
  std::set<UnorderedPair> pairs;
  for (const auto& z : curve.points()) pairs.emplace(z, curve.sub(c, z));
  return {pairs.begin(), pairs.end()};
}

StableClass twist_middle(const Curve& curve, const StableClass& S, const CurvePoint& pt) {
  curve.require(pt);
  curve.require(S.det.aj);
  const Int r = S.charge.rank;
  const Int d = r * S.charge.degree + 1;
  return {{r * r, d}, {d, curve.add(curve.scalar_mul(r, S.det.aj), pt)}};
}

}  // namespace ellbun
