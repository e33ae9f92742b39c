#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ellbun/bundle.hpp"
#include "ellbun/hom_ext.hpp"

namespace ellbun {

enum class VerdictKind {
  GenericEpi,
  GenericMonoLocallyFreeCoker,
  GenericMonoTorsionCoker,
  HypothesesNotMet,
};

std::string_view to_string(VerdictKind kind) noexcept;

/// Predicted kernel (epi case) or cokernel (mono cases) of a generic
/// morphism. For a torsion cokernel the charge has rank 0 and
/// torsion_degree is set; det then carries the torsion determinant.
struct KcPrediction {
  Charge charge;
  PicClass det;
  bool semistable_basic = false;
  std::optional<StableClass> unique_stable;
  std::optional<Int> torsion_degree;
};

struct Verdict {
  VerdictKind kind = VerdictKind::HypothesesNotMet;
  std::optional<KcPrediction> kc;
  /// Failed-hypothesis labels, e.g. "NotBasic".
  std::vector<std::string> diagnostics;
  /// Human-readable detail per label, same order.
  std::vector<std::string> notes;
};

struct ImageReport {
  std::vector<Charge> type;
  Charge total;
  Rational deficiency;
  bool mu_min_equals_source = false;
  bool mu_max_equals_target = false;
  bool is_tau_extr = false;
};

/// Dimension gap of the image stratum with total charge img for a morphism
/// src -> tgt, oriented so that rk img <= rk tgt < rk src:
///
///   (mu(img) - mu(src)) rk(src) (rk(tgt) - rk(img))
///     + (mu(tgt) - mu(img)) (rk(src) - rk(img)) rk(tgt)
///
/// Throws OrientationError when the rank/slope preconditions fail.
Rational deficiency(const Charge& src, const Charge& img, const Charge& tgt);

/// Failed-hypothesis labels for the pair (E, E'): both nonzero basic
/// semistable with mu(E) < mu(E'). Empty when the pair qualifies.
std::vector<std::string> pair_hypotheses(const Bundle& E, const Bundle& Ep,
                                         std::vector<std::string>* notes = nullptr);

/// Upper bound on the number of candidate types enumerate_image_types will
/// produce before giving up with EnumerationTooLarge.
inline constexpr std::size_t kMaxImageTypes = 200'000;

/// Every HN type with slopes strictly decreasing inside [mu(E), mu(E')] and
/// total rank at most min(rk E, rk E'), with its deficiency. In the
/// equal-rank case a full-rank image is the isomorphic image of E, so the
/// only full-rank candidate is zeta(E); lower-rank candidates use the
/// deficiency formula with rk(src) = rk(tgt). Reports are sorted by type.
/// Throws HypothesesNotMet.
std::vector<ImageReport> enumerate_image_types(const Bundle& E, const Bundle& Ep);

/// HN type of the generic image: tau(E') if rk E > rk E', else tau(E).
/// Throws HypothesesNotMet.
HNType tau_extr(const Bundle& E, const Bundle& Ep);

/// (mu_min(type) == mu(E), mu_max(type) == mu(E')).
std::pair<bool, bool> classify_extreme(const Bundle& E, const Bundle& Ep, std::span<const Charge> type);

Verdict analyze_generic(const Curve& curve, const Bundle& E, const Bundle& Ep);

enum class Direction { EmbeddingsDense, EpisDense };

struct PrescribedReport {
  bool ok = false;
  std::vector<std::string> failed;
  /// "open dense" on success.
  std::string verdict;
  std::string statement;
  Int hom_KE = 0;
  Int hom_EF = 0;
};

/// Hypotheses and dimension counts for extensions 0 -> K -> E -> F -> 0 with
/// all three terms prescribed.
PrescribedReport check_prescribed(const Curve& curve, const Bundle& K, const Bundle& E, const Bundle& F,
                                  Direction direction);

struct TripleReport {
  bool ok = false;
  std::vector<std::string> failed;
  int third_index = 0;
  Int third_gcd = 0;
  bool third_stable = false;
  /// hom(E0,E1), hom(E1,E2), ext(E2,E0).
  std::array<Int, 3> homs{};
};

/// Stability transfer for E0 -> E1 -> E2: two consecutive stable terms
/// (indices i0, i0+1 mod 3), the third basic, and a one-dimensional hom
/// between the stable pair. On success the third term must be stable and all
/// three cyclic homs one-dimensional; a violation throws ModelInconsistency.
TripleReport check_triple(const Curve& curve, const std::array<Bundle, 3>& terms, int i0);

}  // namespace ellbun
