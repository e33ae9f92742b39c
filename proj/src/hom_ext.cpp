#include "ellbun/hom_ext.hpp"

#include <algorithm>
#include <set>

#include "ellbun/error.hpp"

namespace ellbun {

Int euler(const Charge& E, const Charge& F) noexcept { return F.degree * E.rank - E.degree * F.rank; }

Int euler(const Bundle& E, const Bundle& F) { return euler(charge(E), charge(F)); }

HomExt homext(const Indecomposable& E, const Indecomposable& F) {
  const auto order = slope(E) <=> slope(F);
  if (order < 0) return {euler(E.charge(), F.charge()), 0};
  // Serre duality: Ext^1(E, F) is dual to Hom(F, E).
  if (order > 0) return {0, euler(F.charge(), E.charge())};
  if (E.base != F.base) return {0, 0};
  const Int m = std::min(E.h, F.h);
  return {m, m};
}

HomExt homext(const Bundle& E, const Bundle& F) {
  HomExt total;
  for (const auto& e : E.summands()) {
    for (const auto& f : F.summands()) {
      const HomExt part = homext(e, f);
      total.hom += part.hom;
      total.ext += part.ext;
    }
  }
  return total;
}

Int end_dim(const Bundle& E) { return homext(E, E).hom; }

Int aut_dim(const Bundle& E) { return end_dim(E); }

Int gamma_dim(const Bundle& E) { return homext(Bundle(trivial_line()), E).hom; }

Int h1_dim(const Bundle& E) { return homext(Bundle(trivial_line()), E).ext; }

bool is_globally_generated(const Bundle& E) {
  if (E.empty() || !is_semistable(E)) {
    throw Error(ErrorCode::NotSemistable, "global-generation criterion applies to nonzero semistable bundles only");
  }
  return slope(E) > Slope(1);
}

bool orthogonal_gr(const Bundle& E, const Bundle& F) {
  std::set<StableClass> bases;
  for (const auto& s : E.summands()) bases.insert(s.base);
  for (const auto& s : F.summands()) {
    if (bases.count(s.base) != 0) return false;
  }
  return true;
}

std::vector<Int> hom_profile(const StableClass& S, const Bundle& F, Int H) {
  if (H < 1) throw Error(ErrorCode::InvalidLength, "profile window must be >= 1, got " + std::to_string(H));
  std::vector<Int> out;
  out.reserve(static_cast<std::size_t>(H));
  for (Int h = 1; h <= H; ++h) out.push_back(homext(Bundle(Indecomposable{S, h}), F).hom);
  return out;
}

std::vector<Int> recover_multiplicities(std::span<const Int> profile) {
  std::vector<Int> g;
  g.reserve(profile.size());
  Int prev = 0;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const Int diff = profile[i] - prev;
    if (diff < 0) {
      throw Error(ErrorCode::InconsistentProfile,
                  "profile decreases at h=" + std::to_string(i + 1));
    }
    if (!g.empty() && diff > g.back()) {
      throw Error(ErrorCode::InconsistentProfile, "increment at h=" + std::to_string(i + 1) + " (" +
                                                      std::to_string(diff) + ") exceeds the previous one (" +
                                                      std::to_string(g.back()) + ")");
    }
    g.push_back(diff);
    prev = profile[i];
  }
  std::vector<Int> lengths;
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    const Int count = g[i] - g[i + 1];
    for (Int k = 0; k < count; ++k) lengths.push_back(static_cast<Int>(i + 1));
  }
  return lengths;
}

}  // namespace ellbun
