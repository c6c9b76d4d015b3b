#pragma once

// Shadows, Kruskal-Katona minima, and the cross-intersecting bounds used in
// the union-of-intersecting-families argument, each as an executable check.

#include <cstdint>
#include <span>
#include <vector>

#include "ekrlab/family.hpp"
#include "ekrlab/rational.hpp"
#include "ekrlab/verdict.hpp"

namespace ekrlab {

/// {S u {x} : S in F, x not in S} for a k-uniform F with k < n.
SetFamily upper_shadow(const SetFamily& f);
/// {S \ {x} : S in F, x in S} for a k-uniform F with k >= 1.
SetFamily lower_shadow(const SetFamily& f);

/// First m k-subsets of [n] in colex order (increasing characteristic mask).
SetFamily colex_segment(const GroundSet& ground, int k, std::uint64_t m);

/// Minimum lower shadow of m k-sets (any ground set large enough), from the
/// k-cascade of m: m = C(a_k,k) + C(a_{k-1},k-1) + ... gives
/// C(a_k,k-1) + C(a_{k-1},k-2) + ....
std::uint64_t kk_min_lower_shadow(int k, std::uint64_t m);

/// Minimum |upper_shadow(F)| over m-element F inside level k of [n]. Taking
/// complements turns upper shadows at level k into lower shadows at level n-k.
std::uint64_t kk_min_upper_shadow(int n, int k, std::uint64_t m);

/// Minimum |upper_shadow(F)| over every m-subset F of level k, for m = 0..C(n,k),
/// by enumerating all subsets of the level. n <= 6.
std::vector<std::uint64_t> min_upper_shadow_exhaustive(int n, int k);

/// |upper_shadow(F)| / C(n,k+1) >= |F| / C(n,k).
Verdict check_local_lym(const SetFamily& f);

/// Frankl-Furedi threshold C(n,l) - C(n-r,l) - C(n-r-t,l-1).
BigInt ff_level_bound(int n, int r, int t, int l);

/// Kruskal-Katona chain from level k: every m >= ff_level_bound(k) iterated
/// through minimal upper shadows stays above ff_level_bound(l) for l > k, and
/// FranklFuredi(r, t) meets every level bound with equality.
Verdict check_kk_chain(int n, int k, int r, int t);

/// Hilton: for cross-intersecting A (k-uniform), B (l-uniform) with k + l <= n,
/// |A| >= C(n,k) - C(n-t,k) implies |B| <= C(n-t, l-t).
Verdict check_hilton(const SetFamily& a, int k, const SetFamily& b, int l, int t);

struct HiltonProbe {
  int n = 0, k = 0, l = 0, t = 0;
  std::uint64_t threshold = 0;  ///< C(n,k) - C(n-t,k)
  std::uint64_t bound = 0;      ///< C(n-t, l-t)
  std::uint64_t max_b = 0;
  SetFamily witness_a{GroundSet(1)};
  SetFamily witness_b{GroundSet(1)};
  std::uint64_t nodes = 0;
  double wall_ms = 0;
};

/// Exhaustive maximum of |B| over cross-intersecting pairs with |A| at the
/// threshold. The search runs over left-shifted B only (shifting preserves
/// cross-intersection and sizes) and takes A maximal for each B. n <= 10.
HiltonProbe hilton_extremal_probe(int n, int k, int l, int t);

/// Same maximum by plain enumeration of every B inside level l; n <= 5.
std::uint64_t hilton_bruteforce_max(int n, int k, int l, int t);

/// All sets of size `level` meeting every member of g.
SetFamily cross_partner(const SetFamily& g, int level);

/// The t with C(n-t-1, k1-t-1) <= size <= C(n-t, k1-t), largest when several
/// qualify (size 0 gives k1). Throws if size > C(n, k1).
int find_t(const BigInt& size, int n, int k1);

/// |G2| + C1 |G1| <= C(n, k2), equality only when G1 is empty, for
/// cross-intersecting G1 (k1-uniform), G2 (k2-uniform). The verdict reflects
/// the conclusion; which hypotheses were met is reported under
/// details["hypotheses"] (the range constant C2 is not constructive, so only
/// its C2-free parts are checked).
Verdict check_cross_combination(const SetFamily& g1, int k1, const SetFamily& g2, int k2, const Rational& c1, int t0);

/// Pointwise indicator inequality over every k-set S for F = F_1 u ... u F_r,
/// plus the summed family-size bound. Violating sets are listed in the witness.
Verdict check_indicator_claim(std::span<const SetFamily> families, int k);

}  // namespace ekrlab
