#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ellbun/bundle.hpp"
#include "ellbun/quot_param.hpp"

namespace ellbun {

// Bundle expression grammar (whitespace is ignored):
//
//   bundle := '0' | term ('+' term)*
//   term   := [uint '*'] atom ['^' uint]
//   atom   := 'O' | 'L(' int ';' point ')' | 'st(' uint ',' int ';' point ')'
//   point  := '(' int ',' int ')' | 'inf'
//
// '^h' binds tighter than 'k*': "2*O^3" is two copies of _3O.

struct PointExpr {
  bool infinity = true;
  Int x = 0;
  Int y = 0;
};

struct AtomExpr {
  Int rank = 1;
  Int degree = 0;
  PointExpr point;
};

struct TermExpr {
  Int repeat = 1;
  AtomExpr atom;
  Int h = 1;
  std::size_t position = 0;
};

struct BundleExpr {
  std::vector<TermExpr> terms;
};

/// Throws Error(ParseError) with the offending position and the tokens that
/// would have been accepted there.
BundleExpr parse_bundle(std::string_view text);
/// Validates against the curve: NotCoprime, OffCurve, InvalidLength.
Bundle elaborate(const Curve& curve, const BundleExpr& expr);
Bundle parse_bundle(const Curve& curve, std::string_view text);

/// A bundle that must be a single stable summand (for commands taking S).
StableClass parse_stable(const Curve& curve, std::string_view text);
/// "(e;PT)" or a rank-1 bundle expression such as "L(2;inf)" or "O".
PicClass parse_line_class(const Curve& curve, std::string_view text);

CurvePoint parse_point(const Curve& curve, std::string_view text);
/// "PT,PT".
UnorderedPair parse_pair(const Curve& curve, std::string_view text);

std::string render(const StableClass& S);
std::string render(const Indecomposable& I);
/// Canonical text; parse_bundle(render(B)) == B.
std::string render(const Bundle& B);

}  // namespace ellbun
