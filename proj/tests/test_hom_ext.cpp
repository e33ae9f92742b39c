#include <gtest/gtest.h>

#include <algorithm>

#include "ellbun/error.hpp"
#include "ellbun/expr.hpp"
#include "ellbun/hom_ext.hpp"
#include "random_bundles.hpp"

using namespace ellbun;
using ellbun::testing::Gen;

namespace {

const Curve& curve() {
  static const Curve c;
  return c;
}

Bundle B(std::string_view text) { return parse_bundle(curve(), text); }

// Sigma_j min(h, h_j): the hom count into summands sharing the probed base.
std::vector<Int> min_sum_profile(const std::vector<Int>& lengths, Int H) {
  std::vector<Int> out;
  for (Int h = 1; h <= H; ++h) {
    Int s = 0;
    for (Int hj : lengths) s += std::min(h, hj);
    out.push_back(s);
  }
  return out;
}

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

TEST(HomExt, EulerPairing) {
  EXPECT_EQ(euler(B("O"), B("L(1;(0,1))")), 1);
  EXPECT_EQ(euler(B("O^2"), B("st(3,1;(0,1))")), 2);
  // <ind(k, kd-1) -> L(d)> = kd - (kd - 1) = 1.
  EXPECT_EQ(euler(B("st(3,2;inf)"), B("L(1;inf)")), 1);
  EXPECT_EQ(euler(B("st(4,3;inf)"), B("L(1;(0,1))")), 1);
  EXPECT_EQ(euler(B("st(5,9;inf)"), B("L(2;(3,43))")), 1);
}

TEST(HomExt, PairRule) {
  EXPECT_EQ(homext(B("O^3"), B("O^2")), (HomExt{2, 2}));
  EXPECT_EQ(homext(B("st(3,1;(0,1))"), B("L(1;(0,1))")), (HomExt{2, 0}));
  EXPECT_EQ(homext(B("st(3,2;(3,43))"), B("L(2;(5,38))")), (HomExt{4, 0}));
  EXPECT_EQ(homext(B("L(1;(0,1))"), B("O")), (HomExt{0, 1}));
  EXPECT_EQ(homext(B("O"), B("L(0;(0,1))")), (HomExt{0, 0}));
  EXPECT_EQ(homext(Bundle{}, B("O")), (HomExt{0, 0}));
}

TEST(HomExt, EndAndAut) {
  EXPECT_EQ(end_dim(B("st(5,2;(0,1))")), 1);
  EXPECT_EQ(end_dim(B("O^2")), 2);
  EXPECT_EQ(length(B("O^2")), 2);
  // (O,O) + (O,_2O) + (_2O,O) + (_2O,_2O) = 1 + 1 + 1 + 2.
  EXPECT_EQ(end_dim(B("O + O^2")), 5);
  EXPECT_EQ(aut_dim(B("O + O^2")), 5);
}

TEST(HomExt, SectionCounts) {
  EXPECT_EQ(gamma_dim(B("L(0;(0,1))")), 0);
  for (int k = 1; k <= 6; ++k) EXPECT_EQ(gamma_dim(B("O^" + std::to_string(k))), 1);
  EXPECT_EQ(gamma_dim(B("st(3,2;(3,43))")), 2);
  EXPECT_EQ(h1_dim(B("st(3,-2;(3,43))")), 2);
  EXPECT_EQ(h1_dim(B("O^3")), 1);
}

TEST(HomExt, GlobalGeneration) {
  EXPECT_FALSE(is_globally_generated(B("L(1;(0,1))")));
  EXPECT_FALSE(is_globally_generated(B("st(3,2;(3,43))")));
  EXPECT_TRUE(is_globally_generated(B("L(2;(0,1))")));
  EXPECT_TRUE(is_globally_generated(B("st(2,3;inf) + st(2,3;(0,1))^2")));
  EXPECT_EQ(code_of([] { is_globally_generated(B("O + L(2;inf)")); }), ErrorCode::NotSemistable);
  EXPECT_EQ(code_of([] { is_globally_generated(Bundle{}); }), ErrorCode::NotSemistable);
}

TEST(HomExt, Orthogonality) {
  EXPECT_FALSE(orthogonal_gr(B("O^2"), B("O + L(1;(0,1))")));
  EXPECT_TRUE(orthogonal_gr(B("O"), B("L(0;(0,1))")));
}

TEST(HomExt, ProfileAgainstMinSumOracle) {
  const StableClass O = trivial_line();
  const auto prof = hom_profile(O, B("O + O + O^3"), 4);
  EXPECT_EQ(prof, min_sum_profile({1, 1, 3}, 4));
  EXPECT_EQ(prof, (std::vector<Int>{3, 4, 5, 5}));
  EXPECT_EQ(hom_profile(O, B("L(0;(0,1))^3 + L(-1;inf)"), 3), (std::vector<Int>{0, 0, 0}));
  EXPECT_EQ(code_of([&] { hom_profile(O, B("O"), 0); }), ErrorCode::InvalidLength);
}

TEST(HomExt, RecoverMultiplicities) {
  const std::vector<Int> a{3, 4, 5, 5};
  EXPECT_EQ(recover_multiplicities(a), (std::vector<Int>{1, 1, 3}));
  const std::vector<Int> zeros{0, 0, 0};
  EXPECT_TRUE(recover_multiplicities(zeros).empty());
  const std::vector<Int> bad{1, 3};
  EXPECT_EQ(code_of([&] { recover_multiplicities(bad); }), ErrorCode::InconsistentProfile);
  const std::vector<Int> decreasing{2, 1};
  EXPECT_EQ(code_of([&] { recover_multiplicities(decreasing); }), ErrorCode::InconsistentProfile);
  // Linear tail from a larger-slope summand: hom(_hO, O + O(p)) = 1 + h for h >= 1.
  EXPECT_EQ(hom_profile(trivial_line(), B("O + L(1;(0,1))"), 3), (std::vector<Int>{2, 3, 4}));
  const std::vector<Int> tail{2, 3, 4};
  EXPECT_EQ(recover_multiplicities(tail), (std::vector<Int>{1}));
}

class HomExtProperties : public ::testing::Test {
 protected:
  Gen gen{curve(), 99173};
};

TEST_F(HomExtProperties, EulerIdentityAndSerreDuality) {
  for (int i = 0; i < 20000; ++i) {
    const Bundle e = gen.bundle(), f = gen.bundle();
    const HomExt ef = homext(e, f);
    ASSERT_EQ(ef.hom - ef.ext, euler(e, f)) << render(e) << " | " << render(f);
    ASSERT_EQ(ef.ext, homext(f, e).hom) << render(e) << " | " << render(f);
    ASSERT_GE(ef.hom, 0);
    ASSERT_GE(ef.ext, 0);
  }
}

TEST_F(HomExtProperties, Bilinearity) {
  for (int i = 0; i < 2000; ++i) {
    const Bundle a = gen.bundle(), b = gen.bundle(), c = gen.bundle();
    ASSERT_EQ(euler(oplus(a, b), c), euler(a, c) + euler(b, c));
    ASSERT_EQ(euler(c, oplus(a, b)), euler(c, a) + euler(c, b));
    ASSERT_EQ(euler(a, b), -euler(b, a));
    ASSERT_EQ(euler(a, b), euler(gr(a), gr(b)));
  }
}

TEST_F(HomExtProperties, SlopeDichotomyForIndecomposables) {
  for (int i = 0; i < 5000; ++i) {
    const Indecomposable e{gen.stable(4, 6), gen.uniform(1, 2)};
    const Indecomposable f{gen.stable(4, 6), gen.uniform(1, 2)};
    const HomExt he = homext(e, f);
    if (slope(e) < slope(f)) {
      ASSERT_EQ(he.ext, 0);
      ASSERT_EQ(he.hom, euler(e.charge(), f.charge()));
      ASSERT_GT(he.hom, 0);
    } else if (slope(e) > slope(f)) {
      ASSERT_EQ(he.hom, 0);
    }
  }
}

TEST_F(HomExtProperties, SemistableSectionCounts) {
  for (int i = 0; i < 3000; ++i) {
    const Bundle e = gen.semistable();
    const Int d = degree(e);
    if (d < 0) {
      ASSERT_EQ(gamma_dim(e), 0);
      ASSERT_EQ(h1_dim(e), -d);
    } else if (d > 0) {
      ASSERT_EQ(gamma_dim(e), d);
      ASSERT_EQ(h1_dim(e), 0);
    }
  }
}

TEST_F(HomExtProperties, OrthogonalGradeds) {
  int hits = 0;
  for (int i = 0; i < 5000; ++i) {
    const Bundle e = gen.bundle(), f = gen.bundle();
    if (!orthogonal_gr(e, f)) continue;
    ++hits;
    const HomExt he = homext(e, f);
    ASSERT_EQ(he.hom, homext(f, e).ext);
    // hom - ext = euler with ext >= 0, so the bound that always holds is
    // hom >= euler; it is an equality once every slope of E is at most
    // every slope of F.
    ASSERT_GE(he.hom, euler(e, f));
    if (rank(e) > 0 && rank(f) > 0 && mu_max(e) <= mu_min(f)) ASSERT_EQ(he.hom, euler(e, f));
  }
  EXPECT_GT(hits, 1000);
}

TEST_F(HomExtProperties, ProfileRoundtrip) {
  for (int i = 0; i < 3000; ++i) {
    const Bundle f = gen.bundle();
    const auto& parts = f.summands();
    const StableClass s =
        gen.coin(0.7) ? parts[static_cast<std::size_t>(gen.uniform(0, static_cast<Int>(parts.size()) - 1))].base
                      : gen.stable(4, 4);
    std::vector<Int> expected;
    for (const auto& x : f.summands()) {
      if (x.base == s) expected.push_back(x.h);
    }
    std::sort(expected.begin(), expected.end());
    const auto prof = hom_profile(s, f, rank(f) + 1);
    ASSERT_EQ(recover_multiplicities(prof), expected) << render(f) << " probed by " << render(s);
    // Shape: non-decreasing with non-increasing increments.
    for (std::size_t h = 1; h < prof.size(); ++h) ASSERT_LE(prof[h - 1], prof[h]);
  }
}
