#pragma once

#include <span>
#include <vector>

#include "ellbun/bundle.hpp"

namespace ellbun {

struct HomExt {
  Int hom = 0;
  Int ext = 0;

  friend bool operator==(const HomExt&, const HomExt&) = default;
};

/// <E -> F> = deg F * rk E - deg E * rk F.
Int euler(const Charge& E, const Charge& F) noexcept;
Int euler(const Bundle& E, const Bundle& F);

/// dim Hom and dim Ext^1, summed over pairs of indecomposable summands.
HomExt homext(const Indecomposable& E, const Indecomposable& F);
HomExt homext(const Bundle& E, const Bundle& F);

Int end_dim(const Bundle& E);
/// Automorphisms are open in End, so the dimensions coincide.
Int aut_dim(const Bundle& E);

/// dim H^0(E) = dim Hom(O, E).
Int gamma_dim(const Bundle& E);
/// dim H^1(E) = dim Ext^1(O, E).
Int h1_dim(const Bundle& E);

/// Semistable bundles are globally generated exactly when slope > 1.
/// Throws NotSemistable (also for the zero bundle).
bool is_globally_generated(const Bundle& E);

/// gr(E) and gr(F) share no stable class.
bool orthogonal_gr(const Bundle& E, const Bundle& F);

/// [hom(_1S, F), ..., hom(_HS, F)]. Throws InvalidLength for H < 1.
std::vector<Int> hom_profile(const StableClass& S, const Bundle& F, Int H);

/// Inverts hom_profile: returns the ascending multiset {h_j} of
/// self-extension lengths over the probed base.
///
/// With f(0) = 0 and g(h) = f(h) - f(h-1), a profile coming from
/// sum_j min(h, h_j) has g(h) = #{j : h_j >= h}. Summands of strictly larger
/// slope add a term linear in h, i.e. a constant c to every g(h); the window
/// is assumed long enough that g has settled to c at its last entry, so
/// multiplicities are read off as g(h) - g(h+1) for h < H. A profile that is
/// eventually constant has c = 0.
///
/// Throws InconsistentProfile when g is negative or increases anywhere.
std::vector<Int> recover_multiplicities(std::span<const Int> profile);

}  // namespace ellbun
