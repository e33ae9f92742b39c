#include "ellbun/generic_analyzer.hpp"

#include <algorithm>

#include "ellbun/error.hpp"

namespace ellbun {

namespace {

Int floor_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Int ceil_div(Int a, Int b) { return -floor_div(-a, b); }

Charge dual_charge(Charge c) { return {c.rank, -c.degree}; }

/// Same formula as deficiency() without the strictness rk tgt < rk src.
Rational deficiency_formula(const Charge& src, const Charge& img, const Charge& tgt) {
  const Rational mu_s = slope(src);
  const Rational mu_i = slope(img);
  const Rational mu_t = slope(tgt);
  return (mu_i - mu_s) * Rational(src.rank) * Rational(tgt.rank - img.rank) +
         (mu_t - mu_i) * Rational(src.rank - img.rank) * Rational(tgt.rank);
}

void require_hypotheses(const Bundle& E, const Bundle& Ep) {
  std::vector<std::string> notes;
  const auto failed = pair_hypotheses(E, Ep, &notes);
  if (!failed.empty()) {
    std::string msg = "hypotheses not met:";
    for (const auto& n : notes) msg += " " + n + ";";
    throw Error(ErrorCode::HypothesesNotMet, msg);
  }
}

/// Depth-first enumeration of slope-decreasing part sequences.
class TypeEnumerator {
 public:
  TypeEnumerator(Rational lo, Rational hi, Int max_rank) : lo_(lo), hi_(hi), max_rank_(max_rank) {}

  std::vector<std::vector<Charge>> run() {
    std::vector<Charge> prefix;
    extend(prefix, 0, std::nullopt);
    return std::move(out_);
  }

 private:
  void extend(std::vector<Charge>& prefix, Int used, std::optional<Rational> bound) {
    for (Int r = 1; used + r <= max_rank_; ++r) {
      const Int d_lo = ceil_div(lo_.num() * r, lo_.den());
      const Int d_hi = floor_div(hi_.num() * r, hi_.den());
      for (Int d = d_hi; d >= d_lo; --d) {
        const Rational mu(d, r);
        if (bound && mu >= *bound) continue;
        prefix.push_back({r, d});
        if (out_.size() >= kMaxImageTypes) {
          throw Error(ErrorCode::EnumerationTooLarge,
                      "more than " + std::to_string(kMaxImageTypes) + " candidate image types");
        }
        out_.push_back(prefix);
        extend(prefix, used + r, mu);
        prefix.pop_back();
      }
    }
  }

  Rational lo_;
  Rational hi_;
  Int max_rank_;
  std::vector<std::vector<Charge>> out_;
};

Charge total_of(std::span<const Charge> type) {
  Charge t;
  for (const auto& c : type) t = t + c;
  return t;
}

}  // namespace

std::string_view to_string(VerdictKind kind) noexcept {
  switch (kind) {
    case VerdictKind::GenericEpi: return "GenericEpi";
    case VerdictKind::GenericMonoLocallyFreeCoker: return "GenericMonoLocallyFreeCoker";
    case VerdictKind::GenericMonoTorsionCoker: return "GenericMonoTorsionCoker";
    case VerdictKind::HypothesesNotMet: return "HypothesesNotMet";
  }
  return "HypothesesNotMet";
}

Rational deficiency(const Charge& src, const Charge& img, const Charge& tgt) {
  if (src.rank <= 0 || img.rank <= 0 || tgt.rank <= 0) {
    throw Error(ErrorCode::OrientationError, "deficiency needs positive ranks");
  }
  if (!(img.rank <= tgt.rank && tgt.rank < src.rank)) {
    throw Error(ErrorCode::OrientationError, "deficiency needs rk img <= rk tgt < rk src");
  }
  if (!(slope(src) <= slope(img) && slope(img) <= slope(tgt))) {
    throw Error(ErrorCode::OrientationError, "deficiency needs mu(src) <= mu(img) <= mu(tgt)");
  }
  return deficiency_formula(src, img, tgt);
}

std::vector<std::string> pair_hypotheses(const Bundle& E, const Bundle& Ep, std::vector<std::string>* notes) {
  std::vector<std::string> failed;
  auto fail = [&](const std::string& label, const std::string& note) {
    if (std::find(failed.begin(), failed.end(), label) == failed.end()) failed.push_back(label);
    if (notes) notes->push_back(note);
  };
  const std::pair<const Bundle*, const char*> sides[] = {{&E, "source"}, {&Ep, "target"}};
  for (const auto& [b, name] : sides) {
    if (b->empty()) {
      fail("ZeroBundle", std::string(name) + " is the zero bundle");
    } else if (!is_semistable(*b)) {
      fail("NotSemistable", std::string(name) + " is not semistable");
    } else if (!is_basic(*b)) {
      fail("NotBasic", std::string(name) + " is semistable but repeats a stable base");
    }
  }
  if (!E.empty() && !Ep.empty() && is_semistable(E) && is_semistable(Ep) && slope(E) >= slope(Ep)) {
    fail("SlopeNotIncreasing", "mu(source) = " + slope(E).str() + " is not below mu(target) = " + slope(Ep).str());
  }
  return failed;
}

std::vector<ImageReport> enumerate_image_types(const Bundle& E, const Bundle& Ep) {
  require_hypotheses(E, Ep);
  const Charge zs = charge(E);
  const Charge zt = charge(Ep);
  const Rational mu_s = slope(zs);
  const Rational mu_t = slope(zt);
  const Int max_rank = std::min(zs.rank, zt.rank);

  std::vector<ImageReport> reports;
  for (auto& type : TypeEnumerator(mu_s, mu_t, max_rank).run()) {
    ImageReport rep;
    rep.total = total_of(type);
    if (zs.rank > zt.rank) {
      rep.deficiency = deficiency(zs, rep.total, zt);
      rep.is_tau_extr = type.size() == 1 && type.front() == zt;
    } else if (zs.rank < zt.rank) {
      // Dual orientation: E'* -> E* is in the epi case.
      rep.deficiency = deficiency(dual_charge(zt), dual_charge(rep.total), dual_charge(zs));
      rep.is_tau_extr = type.size() == 1 && type.front() == zs;
    } else {
      if (rep.total.rank == zs.rank && !(type.size() == 1 && type.front() == zs)) continue;
      rep.deficiency = deficiency_formula(zs, rep.total, zt);
      rep.is_tau_extr = type.size() == 1 && type.front() == zs;
    }
    std::tie(rep.mu_min_equals_source, rep.mu_max_equals_target) = classify_extreme(E, Ep, type);
    rep.type = std::move(type);
    reports.push_back(std::move(rep));
  }
  std::sort(reports.begin(), reports.end(),
            [](const ImageReport& a, const ImageReport& b) { return a.type < b.type; });
  return reports;
}

HNType tau_extr(const Bundle& E, const Bundle& Ep) {
  require_hypotheses(E, Ep);
  return rank(E) > rank(Ep) ? hn_type(Ep) : hn_type(E);
}

std::pair<bool, bool> classify_extreme(const Bundle& E, const Bundle& Ep, std::span<const Charge> type) {
  if (type.empty()) return {false, false};
  Rational lo = slope(type.front());
  Rational hi = lo;
  for (const auto& c : type) {
    lo = std::min(lo, slope(c));
    hi = std::max(hi, slope(c));
  }
  return {lo == slope(E), hi == slope(Ep)};
}

Verdict analyze_generic(const Curve& curve, const Bundle& E, const Bundle& Ep) {
  Verdict v;
  v.diagnostics = pair_hypotheses(E, Ep, &v.notes);
  if (!v.diagnostics.empty()) {
    v.kind = VerdictKind::HypothesesNotMet;
    return v;
  }
  const Charge zs = charge(E);
  const Charge zt = charge(Ep);
  const PicClass ds = det(curve, E);
  const PicClass dt = det(curve, Ep);
  KcPrediction kc;
  if (zs.rank == zt.rank) {
    v.kind = VerdictKind::GenericMonoTorsionCoker;
    kc.charge = zt - zs;
    kc.det = curve.pic_sub(dt, ds);
    kc.torsion_degree = kc.charge.degree;
  } else {
    const bool epi = zs.rank > zt.rank;
    v.kind = epi ? VerdictKind::GenericEpi : VerdictKind::GenericMonoLocallyFreeCoker;
    kc.charge = epi ? zs - zt : zt - zs;
    kc.det = epi ? curve.pic_sub(ds, dt) : curve.pic_sub(dt, ds);
    kc.semistable_basic = true;
    if (gcd_abs(kc.charge.rank, kc.charge.degree) == 1) {
      kc.unique_stable = mk_stable(curve, kc.charge.rank, kc.charge.degree, kc.det.aj);
    }
  }
  v.kc = kc;
  return v;
}

PrescribedReport check_prescribed(const Curve& curve, const Bundle& K, const Bundle& E, const Bundle& F,
                                  Direction direction) {
  PrescribedReport rep;
  auto& failed = rep.failed;
  const std::pair<const Bundle*, std::string> terms[] = {{&K, "K"}, {&E, "E"}, {&F, "F"}};
  bool all_nonzero = true;
  for (const auto& [b, name] : terms) {
    if (b->empty()) {
      failed.push_back(name + "Zero");
      all_nonzero = false;
    } else if (!is_semistable(*b)) {
      failed.push_back(name + "NotSemistable");
    } else if (!is_basic(*b)) {
      failed.push_back(name + "NotBasic");
    }
  }
  if (all_nonzero && !(slope(K) < slope(F))) failed.push_back("SlopeNotIncreasing");
  if (rank(E) != rank(K) + rank(F)) failed.push_back("RankNotAdditive");
  if (det(curve, E) != curve.pic_add(det(curve, K), det(curve, F))) failed.push_back("DetNotAdditive");
  if (direction == Direction::EmbeddingsDense && !is_stable(F)) failed.push_back("FNotStable");
  if (direction == Direction::EpisDense && !is_stable(K)) failed.push_back("KNotStable");

  rep.statement = direction == Direction::EmbeddingsDense
                      ? "embeddings K -> E with cokernel F are open dense in Hom(K,E)"
                      : "epimorphisms E -> F with kernel K are open dense in Hom(E,F)";
  if (!failed.empty()) return rep;

  // Charge additivity makes mu(E) the mediant of mu(K) and mu(F).
  if (!(slope(K) < slope(E) && slope(E) < slope(F))) {
    throw Error(ErrorCode::ModelInconsistency, "mediant slope of E is not strictly between mu(K) and mu(F)");
  }
  rep.hom_KE = euler(K, E);
  rep.hom_EF = euler(E, F);
  if (homext(K, E) != HomExt{rep.hom_KE, 0} || homext(E, F) != HomExt{rep.hom_EF, 0}) {
    throw Error(ErrorCode::ModelInconsistency, "hom dimensions between slope-ordered semistable terms disagree with the Euler pairing");
  }
  rep.ok = true;
  rep.verdict = "open dense";
  return rep;
}

TripleReport check_triple(const Curve& curve, const std::array<Bundle, 3>& terms, int i0) {
  TripleReport rep;
  i0 = ((i0 % 3) + 3) % 3;
  const int i1 = (i0 + 1) % 3;
  const int i2 = (i0 + 2) % 3;
  rep.third_index = i2;
  auto& failed = rep.failed;
  const auto label = [](int i, const char* what) { return "E" + std::to_string(i) + what; };

  const bool nonzero = std::none_of(terms.begin(), terms.end(), [](const Bundle& b) { return b.empty(); });
  const bool all_ss = nonzero && std::all_of(terms.begin(), terms.end(), [](const Bundle& b) { return is_semistable(b); });
  if (!nonzero) failed.push_back("ZeroBundle");
  if (all_ss && !(slope(terms[0]) < slope(terms[1]) && slope(terms[1]) < slope(terms[2]))) {
    failed.push_back("SlopeNotIncreasing");
  }
  if (rank(terms[1]) != rank(terms[0]) + rank(terms[2])) failed.push_back("RankNotAdditive");
  if (det(curve, terms[1]) != curve.pic_add(det(curve, terms[0]), det(curve, terms[2]))) {
    failed.push_back("DetNotAdditive");
  }
  if (!is_stable(terms[i0])) failed.push_back(label(i0, "NotStable"));
  if (!is_stable(terms[i1])) failed.push_back(label(i1, "NotStable"));
  if (terms[i2].empty() || !is_basic(terms[i2])) failed.push_back(label(i2, "NotBasic"));

  // Consecutive homs in the derived sense: Hom(E2, E0[1]) = Ext^1(E2, E0).
  rep.homs = {homext(terms[0], terms[1]).hom, homext(terms[1], terms[2]).hom, homext(terms[2], terms[0]).ext};
  if (rep.homs[static_cast<std::size_t>(i0)] != 1) failed.push_back("HomNotOne");
  if (!failed.empty()) return rep;

  const Charge third = charge(terms[i2]);
  rep.third_gcd = gcd_abs(third.rank, third.degree);
  rep.third_stable = is_stable(terms[i2]);
  if (rep.third_gcd != 1 || !rep.third_stable) {
    throw Error(ErrorCode::ModelInconsistency, "third term E" + std::to_string(i2) + " is not stable");
  }
  for (Int h : rep.homs) {
    if (h != 1) throw Error(ErrorCode::ModelInconsistency, "a cyclic hom dimension differs from 1");
  }
  const Int pairings[] = {euler(terms[0], terms[1]), euler(terms[1], terms[2]), euler(terms[0], terms[2])};
  for (Int e : pairings) {
    if (e != 1) throw Error(ErrorCode::ModelInconsistency, "an Euler pairing along the triangle differs from 1");
  }
  rep.ok = true;
  return rep;
}

}  // namespace ellbun
