#include "ellbun/curve_group.hpp"

#include <algorithm>
#include <charconv>
#include <mutex>

#include "ellbun/error.hpp"

namespace ellbun {

namespace {

bool is_prime(Int n) {
  if (n < 2) return false;
  for (Int d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Int reduce(Int v, Int p) {
  v %= p;
  return v < 0 ? v + p : v;
}

}  // namespace

void validate_curve(const CurveConfig& cfg) {
  if (cfg.p > (Int{1} << 31)) {
    throw Error(ErrorCode::CurveTooLarge, "curve modulus exceeds 2^31");
  }
  if (cfg.p <= 3 || !is_prime(cfg.p)) {
    throw Error(ErrorCode::NotPrime, "curve modulus " + std::to_string(cfg.p) + " is not a prime > 3");
  }
  const Int a = reduce(cfg.a, cfg.p);
  const Int b = reduce(cfg.b, cfg.p);
  const Int disc = reduce(4 * reduce(a * a % cfg.p * a, cfg.p) + 27 * reduce(b * b, cfg.p), cfg.p);
  if (disc == 0) {
    throw Error(ErrorCode::SingularCurve, "4a^3 + 27b^2 = 0 mod p");
  }
}

CurveConfig parse_curve_config(std::string_view text) {
  Int vals[3];
  std::size_t pos = 0;
  for (int i = 0; i < 3; ++i) {
    while (pos < text.size() && text[pos] == ' ') ++pos;
    const char* first = text.data() + pos;
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, vals[i]);
    if (ec != std::errc{}) {
      throw Error(ErrorCode::ParseError, "curve spec '" + std::string(text) + "': expected integer at position " + std::to_string(pos));
    }
    pos = static_cast<std::size_t>(ptr - text.data());
    while (pos < text.size() && text[pos] == ' ') ++pos;
    if (i < 2) {
      if (pos >= text.size() || text[pos] != ',') {
        throw Error(ErrorCode::ParseError, "curve spec '" + std::string(text) + "': expected ',' at position " + std::to_string(pos));
      }
      ++pos;
    }
  }
  if (pos != text.size()) {
    throw Error(ErrorCode::ParseError, "curve spec '" + std::string(text) + "': trailing input at position " + std::to_string(pos));
  }
  return {vals[0], vals[1], vals[2]};
}

std::string to_string(const CurvePoint& pt) {
  if (pt.is_infinity()) return "inf";
  return "(" + std::to_string(pt.x) + "," + std::to_string(pt.y) + ")";
}

struct Curve::Table {
  std::once_flag once;
  std::vector<CurvePoint> points;
};

Curve::Curve() : Curve(CurveConfig{}) {}

Curve::Curve(const CurveConfig& cfg) : table_(std::make_shared<Table>()) {
  validate_curve(cfg);
  cfg_ = {cfg.p, reduce(cfg.a, cfg.p), reduce(cfg.b, cfg.p)};
}

Int Curve::mod(Int v) const noexcept { return reduce(v, cfg_.p); }

Int Curve::mul(Int u, Int v) const noexcept { return mod(u * v); }

Int Curve::inv(Int v) const {
  // Fermat: v^(p-2).
  Int base = mod(v);
  Int e = cfg_.p - 2;
  Int acc = 1;
  while (e > 0) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

bool Curve::on_curve_raw(Int x, Int y) const noexcept {
  const Int lhs = mul(y, y);
  const Int rhs = mod(mul(mul(x, x), x) + mul(cfg_.a, x) + cfg_.b);
  return lhs == rhs;
}

bool Curve::contains(const CurvePoint& pt) const noexcept {
  if (pt.is_infinity()) return pt.x == 0 && pt.y == 0;
  if (pt.x < 0 || pt.x >= cfg_.p || pt.y < 0 || pt.y >= cfg_.p) return false;
  return on_curve_raw(pt.x, pt.y);
}

void Curve::require(const CurvePoint& pt) const {
  if (!contains(pt)) {
    throw Error(ErrorCode::OffCurve, "point " + to_string(pt) + " is not on y^2 = x^3 + " + std::to_string(cfg_.a) +
                                         "x + " + std::to_string(cfg_.b) + " mod " + std::to_string(cfg_.p));
  }
}

CurvePoint Curve::point(Int x, Int y) const {
  CurvePoint pt = CurvePoint::affine(mod(x), mod(y));
  require(pt);
  return pt;
}

CurvePoint Curve::add(const CurvePoint& P, const CurvePoint& Q) const {
  require(P);
  require(Q);
  if (P.is_infinity()) return Q;
  if (Q.is_infinity()) return P;
  Int lambda;
  if (P.x == Q.x) {
    if (mod(P.y + Q.y) == 0) return CurvePoint::infinity();
    // Tangent at P; here P == Q with y != 0.
    lambda = mul(mod(3 * mul(P.x, P.x) + cfg_.a), inv(mod(2 * P.y)));
  } else {
    lambda = mul(mod(Q.y - P.y), inv(mod(Q.x - P.x)));
  }
  const Int x3 = mod(mul(lambda, lambda) - P.x - Q.x);
  const Int y3 = mod(mul(lambda, mod(P.x - x3)) - P.y);
  return CurvePoint::affine(x3, y3);
}

CurvePoint Curve::neg(const CurvePoint& P) const {
  require(P);
  if (P.is_infinity()) return P;
  return CurvePoint::affine(P.x, mod(-P.y));
}

CurvePoint Curve::scalar_mul(Int n, const CurvePoint& P) const {
  require(P);
  CurvePoint base = n < 0 ? neg(P) : P;
  // |INT64_MIN| is not representable; no caller gets near it.
  Int k = n < 0 ? -n : n;
  CurvePoint acc = CurvePoint::infinity();
  while (k > 0) {
    if (k & 1) acc = add(acc, base);
    base = add(base, base);
    k >>= 1;
  }
  return acc;
}

const std::vector<CurvePoint>& Curve::points() const {
  if (cfg_.p > kMaxEnumerablePrime) {
    throw Error(ErrorCode::CurveTooLarge,
                "point enumeration needs p <= " + std::to_string(kMaxEnumerablePrime) + ", got " + std::to_string(cfg_.p));
  }
  std::call_once(table_->once, [this] {
    const Int p = cfg_.p;
    // roots[s] lists the square roots of s in ascending order.
    std::vector<std::vector<Int>> roots(static_cast<std::size_t>(p));
    for (Int y = 0; y < p; ++y) roots[static_cast<std::size_t>(mul(y, y))].push_back(y);
    auto& pts = table_->points;
    pts.push_back(CurvePoint::infinity());
    for (Int x = 0; x < p; ++x) {
      const Int rhs = mod(mul(mul(x, x), x) + mul(cfg_.a, x) + cfg_.b);
      for (Int y : roots[static_cast<std::size_t>(rhs)]) pts.push_back(CurvePoint::affine(x, y));
    }
  });
  return table_->points;
}

Int Curve::point_order(const CurvePoint& P) const {
  require(P);
  const Int n = order();
  // The order divides n; take the smallest divisor that kills P.
  for (Int d = 1; d <= n; ++d) {
    if (n % d == 0 && scalar_mul(d, P).is_infinity()) return d;
  }
  return n;
}

std::vector<CurvePoint> Curve::two_torsion() const { return halvings(CurvePoint::infinity()); }

std::vector<CurvePoint> Curve::halvings(const CurvePoint& q) const { return divisions(2, q); }

std::vector<CurvePoint> Curve::divisions(Int n, const CurvePoint& q) const {
  require(q);
  std::vector<CurvePoint> out;
  for (const auto& z : points()) {
    if (scalar_mul(n, z) == q) out.push_back(z);
  }
  return out;
}

PicClass Curve::pic_add(const PicClass& L, const PicClass& M) const {
  return {L.degree + M.degree, add(L.aj, M.aj)};
}

PicClass Curve::pic_neg(const PicClass& L) const { return {-L.degree, neg(L.aj)}; }

PicClass Curve::pic_scale(Int n, const PicClass& L) const { return {n * L.degree, scalar_mul(n, L.aj)}; }

}  // namespace ellbun
