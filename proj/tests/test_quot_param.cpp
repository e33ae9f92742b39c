#include <gtest/gtest.h>

#include <set>

#include "ellbun/error.hpp"
#include "ellbun/expr.hpp"
#include "ellbun/hom_ext.hpp"
#include "ellbun/quot_param.hpp"

using namespace ellbun;

namespace {

const CurvePoint kInf{};

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an ellbun::Error";
  return ErrorCode::ModelInconsistency;
}

}  // namespace

TEST(Quot31, DiagonalAtInfinity) {
  const Curve c;
  const CurvePoint p{true, 0, 1};
  const Bundle E(mk_stable(c, 3, 1, p));
  const QuotDatum q = pair_to_quot31(c, E, UnorderedPair(kInf, kInf));
  EXPECT_EQ(q.kernel, Bundle(Indecomposable{trivial_line(), 2}));
  EXPECT_EQ(q.quotient, (PicClass{1, p}));
  EXPECT_TRUE(is_basic(q.kernel));
}

TEST(Quot31, OffDiagonal) {
  const Curve c;
  const CurvePoint p{true, 0, 1};
  const CurvePoint z{true, 3, 43};
  const CurvePoint w{true, 5, 38};
  const Bundle E(mk_stable(c, 3, 1, p));
  const QuotDatum q = pair_to_quot31(c, E, UnorderedPair(w, z));
  EXPECT_EQ(det(c, q.kernel), (PicClass{0, c.add(z, w)}));
  EXPECT_EQ(c.pic_add(det(c, q.kernel), q.quotient), det(c, E));
  EXPECT_TRUE(is_basic(q.kernel));
  EXPECT_EQ(slope(q.kernel), Rational(0));
  EXPECT_EQ(length(q.kernel), 2);
}

TEST(Quot31, Errors) {
  const Curve c;
  const CurvePoint p{true, 0, 1};
  EXPECT_EQ(code_of([&] { pair_to_quot31(c, Bundle(mk_stable(c, 3, 2, p)), UnorderedPair(kInf, kInf)); }),
            ErrorCode::NotCharge31Stable);
  EXPECT_EQ(code_of([&] { fiber31(c, parse_bundle(c, "st(3,1;inf) + O"), kInf); }), ErrorCode::NotCharge31Stable);
  EXPECT_EQ(code_of([&] { fiber31(c, Bundle{}, kInf); }), ErrorCode::NotCharge31Stable);
  EXPECT_EQ(code_of([&] { pair_to_quot31(c, Bundle(mk_stable(c, 3, 1, p)), UnorderedPair(CurvePoint{true, 3, 6}, kInf)); }),
            ErrorCode::OffCurve);
  const Curve big(CurveConfig{10007, 1, 1});
  EXPECT_EQ(code_of([&] { fiber31(big, Bundle(mk_stable(big, 3, 1, kInf)), kInf); }), ErrorCode::CurveTooLarge);
}

// Exhaustive over every quotient class on several small curves: the fibers
// are read off by scanning all unordered pairs independently.
TEST(Quot31, FibersPartitionSymmetricSquare) {
  for (const CurveConfig cfg : {CurveConfig{5, 1, 1}, CurveConfig{13, 2, 3}, CurveConfig{103, -1, 0}, CurveConfig{101, 1, 1}}) {
    const Curve c(cfg);
    const auto& pts = c.points();
    const Int N = static_cast<Int>(pts.size());
    const CurvePoint p = pts[pts.size() / 2];
    const Bundle E(mk_stable(c, 3, 1, p));
    std::set<UnorderedPair> seen;
    for (const auto& q : pts) {
      const auto fiber = fiber31(c, E, q);
      const CurvePoint cc = c.sub(p, q);
      Int t = 0;
      for (const auto& z : pts) t += c.add(z, z) == cc ? 1 : 0;
      ASSERT_EQ(static_cast<Int>(fiber.size()) * 2, N + t);
      ASSERT_TRUE(std::is_sorted(fiber.begin(), fiber.end()));
      std::set<CurvePoint> diag;
      for (const auto& pr : fiber) {
        ASSERT_EQ(pair_to_quot31(c, E, pr).quotient, (PicClass{1, q}));
        ASSERT_TRUE(seen.insert(pr).second) << "pair in two fibers";
        if (pr.diagonal()) diag.insert(pr.first());
      }
      const auto halves = c.halvings(cc);
      ASSERT_EQ(diag, std::set<CurvePoint>(halves.begin(), halves.end()));
      ASSERT_EQ(static_cast<Int>(diag.size()), t);
    }
    ASSERT_EQ(static_cast<Int>(seen.size()), N * (N + 1) / 2);
  }
}

TEST(Quot31, PairsPreserveChargeAndDet) {
  for (const CurveConfig cfg : {CurveConfig{13, 2, 3}, CurveConfig{101, 1, 1}}) {
    const Curve c(cfg);
    const auto& pts = c.points();
    const Bundle E(mk_stable(c, 3, 1, pts.back()));
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i; j < pts.size(); ++j) {
        const QuotDatum q = pair_to_quot31(c, E, UnorderedPair(pts[i], pts[j]));
        ASSERT_EQ(charge(q.kernel) + (Charge{1, q.quotient.degree}), charge(E));
        ASSERT_EQ(c.pic_add(det(c, q.kernel), q.quotient), det(c, E));
        ASSERT_TRUE(is_basic(q.kernel));
        ASSERT_EQ(length(q.kernel), 2);
      }
    }
  }
}

TEST(Twist, Examples) {
  const Curve c;
  const CurvePoint p{true, 0, 1};
  const CurvePoint a{true, 3, 43};
  EXPECT_EQ(twist_middle(c, trivial_line(), p), line_bundle(c, {1, p}));
  const StableClass S = mk_stable(c, 2, 1, a);
  const StableClass M = twist_middle(c, S, p);
  EXPECT_EQ(M.charge, (Charge{4, 3}));
  EXPECT_EQ(M.det, (PicClass{3, c.add(c.scalar_mul(2, a), p)}));
  EXPECT_EQ(homext(Bundle(S), Bundle(M)).hom, 2);
  EXPECT_EQ(code_of([&] { twist_middle(c, S, CurvePoint{true, 3, 6}); }), ErrorCode::OffCurve);
}

TEST(Twist, InvariantsOverSmallCurve) {
  const Curve c(CurveConfig{13, 2, 3});
  for (const auto& pt : c.points()) {
    for (Int r = 1; r <= 5; ++r) {
      for (Int d = -6; d <= 6; ++d) {
        if (gcd_abs(r, d) != 1) continue;
        for (const auto& a : c.points()) {
          const StableClass S = mk_stable(c, r, d, a);
          const StableClass M = twist_middle(c, S, pt);
          ASSERT_EQ(M.charge, (Charge{r * r, r * d + 1}));
          ASSERT_EQ(gcd_abs(M.charge.rank, M.charge.degree), 1);
          ASSERT_EQ(M.det.degree, M.charge.degree);
          ASSERT_EQ(M.det.aj, c.add(c.scalar_mul(r, a), pt));
          ASSERT_EQ(euler(Bundle(S), Bundle(M)), r);
          ASSERT_EQ(homext(Bundle(S), Bundle(M)), (HomExt{r, 0}));
        }
      }
    }
  }
}
