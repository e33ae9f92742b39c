#include "ellbun/expr.hpp"

#include <cctype>
#include <limits>

#include "ellbun/error.hpp"

namespace ellbun {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  BundleExpr bundle() {
    BundleExpr out;
    skip();
    if (peek() == '0' && !next_is_digit_after_zero()) {
      ++pos_;
      finish();
      return out;
    }
    out.terms.push_back(term());
    while (accept('+')) out.terms.push_back(term());
    finish();
    return out;
  }

  PointExpr point_only() {
    PointExpr p = point();
    finish();
    return p;
  }

  std::pair<PointExpr, PointExpr> pair_only() {
    PointExpr a = point();
    expect(',', "','");
    PointExpr b = point();
    finish();
    return {a, b};
  }

  // "(e;PT)"
  std::pair<Int, PointExpr> line_class_only() {
    expect('(', "'('");
    const Int e = integer();
    expect(';', "';'");
    PointExpr p = point();
    expect(')', "')'");
    finish();
    return {e, p};
  }

 private:
  [[noreturn]] void fail(const std::string& expected) const {
    std::string found = pos_ < text_.size() ? "'" + std::string(1, text_[pos_]) + "'" : "end of input";
    throw Error(ErrorCode::ParseError, "parse error at position " + std::to_string(pos_) + ": expected " + expected +
                                           ", found " + found + " in \"" + std::string(text_) + "\"");
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool next_is_digit_after_zero() const {
    return pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]));
  }

  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c, const char* what) {
    if (!accept(c)) fail(what);
  }

  bool accept_word(std::string_view w) {
    skip();
    if (text_.substr(pos_, w.size()) == w) {
      pos_ += w.size();
      return true;
    }
    return false;
  }

  void finish() {
    skip();
    if (pos_ != text_.size()) fail("'+' or end of input");
  }

  Int unsigned_integer() {
    skip();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("unsigned integer");
    Int v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const Int digit = text_[pos_] - '0';
      if (v > (std::numeric_limits<Int>::max() - digit) / 10) fail("integer of at most 18 digits");
      v = v * 10 + digit;
      ++pos_;
    }
    return v;
  }

  Int integer() {
    const bool negative = accept('-');
    if (!negative) accept('+');
    const Int v = unsigned_integer();
    return negative ? -v : v;
  }

  PointExpr point() {
    if (accept_word("inf")) return {};
    if (!accept('(')) fail("'(' or 'inf'");
    PointExpr p{false, integer(), 0};
    expect(',', "','");
    p.y = integer();
    expect(')', "')'");
    return p;
  }

  AtomExpr atom() {
    AtomExpr a;
    if (accept_word("st(")) {
      a.rank = unsigned_integer();
      expect(',', "','");
      a.degree = integer();
      expect(';', "';'");
      a.point = point();
      expect(')', "')'");
    } else if (accept_word("L(")) {
      a.degree = integer();
      expect(';', "';'");
      a.point = point();
      expect(')', "')'");
    } else if (accept('O')) {
      // st(1,0;inf)
    } else {
      fail("'O', 'L(' or 'st('");
    }
    return a;
  }

  TermExpr term() {
    TermExpr t;
    skip();
    t.position = pos_;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      t.repeat = unsigned_integer();
      expect('*', "'*'");
    }
    t.atom = atom();
    if (accept('^')) t.h = unsigned_integer();
    return t;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

CurvePoint elaborate_point(const Curve& curve, const PointExpr& p) {
  if (p.infinity) return CurvePoint::infinity();
  return curve.point(p.x, p.y);
}

std::string render_atom(const StableClass& S) {
  if (S.charge == Charge{1, 0} && S.det.aj.is_infinity()) return "O";
  if (S.charge.rank == 1) return "L(" + std::to_string(S.charge.degree) + ";" + to_string(S.det.aj) + ")";
  return "st(" + std::to_string(S.charge.rank) + "," + std::to_string(S.charge.degree) + ";" + to_string(S.det.aj) + ")";
}

}  // namespace

BundleExpr parse_bundle(std::string_view text) { return Parser(text).bundle(); }

Bundle elaborate(const Curve& curve, const BundleExpr& expr) {
  std::vector<Indecomposable> summands;
  for (const auto& t : expr.terms) {
    if (t.repeat < 1) {
      throw Error(ErrorCode::InvalidLength, "repeat count at position " + std::to_string(t.position) + " must be >= 1");
    }
    const StableClass base = mk_stable(curve, t.atom.rank, t.atom.degree, elaborate_point(curve, t.atom.point));
    const Indecomposable ind = mk_indec(base, t.h);
    for (Int k = 0; k < t.repeat; ++k) summands.push_back(ind);
  }
  return Bundle(std::move(summands));
}

Bundle parse_bundle(const Curve& curve, std::string_view text) { return elaborate(curve, parse_bundle(text)); }

StableClass parse_stable(const Curve& curve, std::string_view text) {
  const Bundle B = parse_bundle(curve, text);
  if (!is_stable(B)) {
    throw Error(ErrorCode::NotCoprime, "\"" + std::string(text) + "\" is not a single stable summand");
  }
  return B.summands().front().base;
}

PicClass parse_line_class(const Curve& curve, std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i < text.size() && text[i] == '(') {
    const auto [e, p] = Parser(text).line_class_only();
    return {e, elaborate_point(curve, p)};
  }
  const StableClass S = parse_stable(curve, text);
  if (S.charge.rank != 1) {
    throw Error(ErrorCode::NotCoprime, "\"" + std::string(text) + "\" is not a line bundle");
  }
  return S.det;
}

CurvePoint parse_point(const Curve& curve, std::string_view text) {
  return elaborate_point(curve, Parser(text).point_only());
}

UnorderedPair parse_pair(const Curve& curve, std::string_view text) {
  const auto [a, b] = Parser(text).pair_only();
  return UnorderedPair(elaborate_point(curve, a), elaborate_point(curve, b));
}

std::string render(const StableClass& S) { return render_atom(S); }

std::string render(const Indecomposable& I) {
  std::string s = render_atom(I.base);
  if (I.h > 1) s += "^" + std::to_string(I.h);
  return s;
}

std::string render(const Bundle& B) {
  const auto& s = B.summands();
  if (s.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < s.size();) {
    std::size_t j = i;
    while (j < s.size() && s[j] == s[i]) ++j;
    if (!out.empty()) out += " + ";
    if (j - i > 1) out += std::to_string(j - i) + "*";
    out += render(s[i]);
    i = j;
  }
  return out;
}

}  // namespace ellbun
