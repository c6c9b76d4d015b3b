#include "ekrlab/shadows.hpp"

#include <algorithm>
#include <bit>
#include <bitset>
#include <chrono>
#include <stdexcept>
#include <string>

namespace ekrlab {

namespace {

int require_uniform_level(const SetFamily& f, const char* what) {
  const auto level = f.uniform_level();
  if (!level) throw std::invalid_argument(std::string(what) + " requires a non-empty uniform family");
  return *level;
}

void require_level(const SetFamily& f, int k, const char* what) {
  if (k < 0 || k > f.n() || !f.is_uniform(k)) {
    throw std::invalid_argument(std::string(what) + ": family is not " + std::to_string(k) + "-uniform");
  }
}

// Next mask with the same popcount (Gosper).
Mask next_combination(Mask v) {
  const Mask t = v | (v - 1);
  return (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(v) + 1));
}

std::vector<Mask> level_masks(int n, int k) {
  std::vector<Mask> out;
  if (k < 0 || k > n) return out;
  if (k == 0) return {0};
  const Mask limit = Mask{1} << n;
  for (Mask m = (Mask{1} << k) - 1; m < limit; m = next_combination(m)) out.push_back(m);
  return out;
}

}  // namespace

SetFamily upper_shadow(const SetFamily& f) {
  const auto k = f.empty() ? std::optional<int>() : f.uniform_level();
  if (!f.empty() && !k) throw std::invalid_argument("upper_shadow requires a uniform family");
  if (k && *k == f.n()) throw std::invalid_argument("upper_shadow undefined at level n");
  FamilyBuilder b(f.ground());
  const Mask full = f.ground().full_mask();
  f.for_each_member([&](Mask s) {
    for (Mask rest = full & ~s; rest != 0; rest &= rest - 1) b.add(s | (rest & -rest));
  });
  return std::move(b).build();
}

SetFamily lower_shadow(const SetFamily& f) {
  const auto k = f.empty() ? std::optional<int>() : f.uniform_level();
  if (!f.empty() && !k) throw std::invalid_argument("lower_shadow requires a uniform family");
  if (k && *k == 0) throw std::invalid_argument("lower_shadow undefined at level 0");
  FamilyBuilder b(f.ground());
  f.for_each_member([&](Mask s) {
    for (Mask rest = s; rest != 0; rest &= rest - 1) b.add(s & ~(rest & -rest));
  });
  return std::move(b).build();
}

SetFamily colex_segment(const GroundSet& ground, int k, std::uint64_t m) {
  const auto all = level_masks(ground.n(), k);
  if (k < 0 || k > ground.n() || m > all.size()) throw std::invalid_argument("colex segment size out of range");
  return build_from_masks(ground, std::span<const Mask>(all.data(), static_cast<std::size_t>(m)));
}

std::uint64_t kk_min_lower_shadow(int k, std::uint64_t m) {
  if (k < 1) throw std::invalid_argument("lower shadow needs k >= 1");
  std::uint64_t shadow = 0;
  std::uint64_t rest = m;
  int a = k;
  // Largest a with C(a, k) <= rest, then recurse on k-1 with the remainder.
  while (binom_u64(a + 1, k) <= rest) ++a;
  for (int i = k; i >= 1 && rest > 0; --i) {
    while (a >= i && binom_u64(a, i) > rest) --a;
    if (a < i) break;
    rest -= binom_u64(a, i);
    shadow += binom_u64(a, i - 1);
    --a;
  }
  return shadow;
}

std::uint64_t kk_min_upper_shadow(int n, int k, std::uint64_t m) {
  if (k < 0 || k >= n) throw std::invalid_argument("kk_min_upper_shadow requires 0 <= k < n");
  if (m > binom_u64(n, k)) throw std::invalid_argument("m exceeds C(n, k)");
  if (m == 0) return 0;
  return kk_min_lower_shadow(n - k, m);
}

std::vector<std::uint64_t> min_upper_shadow_exhaustive(int n, int k) {
  if (n < 1 || n > 6 || k < 0 || k >= n) throw std::invalid_argument("min_upper_shadow_exhaustive requires n <= 6, 0 <= k < n");
  const auto lower = level_masks(n, k);
  const auto upper = level_masks(n, k + 1);
  std::vector<std::uint64_t> cover(lower.size(), 0);
  for (std::size_t i = 0; i < lower.size(); ++i) {
    for (std::size_t j = 0; j < upper.size(); ++j) {
      if ((lower[i] & upper[j]) == lower[i]) cover[i] |= std::uint64_t{1} << j;
    }
  }
  std::vector<std::uint64_t> best(lower.size() + 1, ~std::uint64_t{0});
  const std::uint64_t total = std::uint64_t{1} << lower.size();
  for (std::uint64_t pick = 0; pick < total; ++pick) {
    std::uint64_t shadow = 0;
    for (std::uint64_t rest = pick; rest != 0; rest &= rest - 1) shadow |= cover[static_cast<std::size_t>(std::countr_zero(rest))];
    auto& slot = best[static_cast<std::size_t>(std::popcount(pick))];
    slot = std::min<std::uint64_t>(slot, static_cast<std::uint64_t>(std::popcount(shadow)));
  }
  return best;
}

Verdict check_local_lym(const SetFamily& f) {
  Verdict v;
  if (f.empty()) {
    v.equality = true;
    v.details = {{"lhs", "0"}, {"rhs", "0"}};
    return v;
  }
  const int k = require_uniform_level(f, "check_local_lym");
  if (k >= f.n()) throw std::invalid_argument("check_local_lym requires k < n");
  const Rational lhs = ratio(to_big(upper_shadow(f).size()), binom(f.n(), k + 1));
  const Rational rhs = ratio(to_big(f.size()), binom(f.n(), k));
  v = Verdict::from(lhs >= rhs);
  v.equality = lhs == rhs;
  v.details = {{"lhs", to_string(lhs)}, {"rhs", to_string(rhs)}};
  if (v.fails()) v.witness = "normalized upper shadow " + to_string(lhs) + " < " + to_string(rhs);
  return v;
}

BigInt ff_level_bound(int n, int r, int t, int l) { return binom(n, l) - binom(n - r, l) - binom(n - r - t, l - 1); }

Verdict check_kk_chain(int n, int k, int r, int t) {
  if (n < 1 || n > kDefaultMaxGround) throw std::invalid_argument("check_kk_chain requires 1 <= n <= 24");
  if (r < 1 || t < 0 || r + t > n) throw std::invalid_argument("check_kk_chain requires r >= 1, t >= 0, r + t <= n");
  if (k < 1 || k > n) throw std::invalid_argument("check_kk_chain requires 1 <= k <= n");
  Verdict v;
  auto bound = [&](int l) { return ff_level_bound(n, r, t, l).get_ui(); };

  bool chain_ok = true;
  const std::uint64_t top = binom_u64(n, k);
  for (std::uint64_t m = bound(k); m <= top && chain_ok; ++m) {
    std::uint64_t count = m;
    for (int l = k + 1; l <= n; ++l) {
      count = kk_min_upper_shadow(n, l - 1, count);
      if (count < bound(l)) {
        chain_ok = false;
        v.witness = "m=" + std::to_string(m) + " reaches only " + std::to_string(count) + " sets at level " +
                    std::to_string(l) + " < " + std::to_string(bound(l));
        break;
      }
    }
  }

  const GroundSet g(n);
  const SetFamily ff = construct(g, construction::FranklFuredi{r, t});
  bool levels_ok = true;
  nlohmann::json levels = nlohmann::json::array();
  for (int l = 1; l <= n; ++l) {
    const auto count = slice(ff, l).size();
    levels.push_back(count);
    if (count != bound(l)) levels_ok = false;
  }
  const SetFamily grown = up_closure(slice(ff, k));
  bool tight = true;
  for (int l = k + 1; l <= n; ++l) {
    if (slice(grown, l).size() != bound(l)) tight = false;
  }

  v.kind = chain_ok && levels_ok && tight ? VerdictKind::holds : VerdictKind::fails;
  v.equality = tight;
  v.details = {{"chain", chain_ok}, {"ff_levels_match", levels_ok}, {"ff_meets_chain", tight}, {"ff_levels", levels}};
  if (v.fails() && v.witness.empty()) {
    v.witness = levels_ok ? "FranklFuredi up-closure from level k misses the chain bound"
                          : "FranklFuredi level counts differ from the formula";
  }
  return v;
}

Verdict check_hilton(const SetFamily& a, int k, const SetFamily& b, int l, int t) {
  const int n = a.n();
  require_level(a, k, "check_hilton");
  require_level(b, l, "check_hilton");
  if (k + l > n) throw std::invalid_argument("check_hilton requires k + l <= n");
  if (t < 0) throw std::invalid_argument("check_hilton requires t >= 0");
  if (!are_cross_intersecting(a, b)) throw std::invalid_argument("check_hilton requires cross-intersecting families");
  const BigInt threshold = binom(n, k) - binom(n - t, k);
  const BigInt bound = binom(n - t, l - t);
  const BigInt size_a = to_big(a.size());
  const BigInt size_b = to_big(b.size());
  const bool premise = size_a >= threshold;
  Verdict v = Verdict::from(!premise || size_b <= bound);
  v.equality = premise && size_b == bound;
  v.details = {{"size_a", to_string(size_a)},
               {"threshold", to_string(threshold)},
               {"size_b", to_string(size_b)},
               {"bound", to_string(bound)},
               {"premise", premise}};
  if (v.fails()) v.witness = "|B| = " + to_string(size_b) + " exceeds C(n-t, l-t) = " + to_string(bound);
  return v;
}

namespace {

using KSetBits = std::bitset<256>;

struct ProbeContext {
  int n, k, l;
  std::uint64_t allowed_killed;  // k-sets allowed to miss some member of B
  std::vector<Mask> l_sets;
  std::vector<Mask> k_sets;
  std::vector<KSetBits> kills;     // k-sets disjoint from l_sets[i]
  std::vector<KSetBits> above;     // l-sets strictly above l_sets[i] in shift order
  std::vector<std::vector<int>> preds;
  std::uint64_t best = 0;
  KSetBits best_b;
  KSetBits best_killed;
  std::uint64_t nodes = 0;
};

void probe_dfs(ProbeContext& ctx, std::size_t i, KSetBits& chosen, std::uint64_t count, const KSetBits& killed,
               KSetBits blocked) {
  ++ctx.nodes;
  const std::size_t total = ctx.l_sets.size();
  // Bound: chosen plus every later set that is neither blocked nor alone too costly.
  std::uint64_t optimistic = count;
  for (std::size_t j = i; j < total; ++j) {
    if (blocked[j]) continue;
    if ((killed | ctx.kills[j]).count() > ctx.allowed_killed) {
      blocked |= ctx.above[j];
      blocked.set(j);
      continue;
    }
    ++optimistic;
  }
  if (count > ctx.best) {
    ctx.best = count;
    ctx.best_b = chosen;
    ctx.best_killed = killed;
  }
  if (optimistic <= ctx.best) return;
  std::size_t next = i;
  while (next < total && blocked[next]) ++next;
  if (next == total) return;
  const bool preds_in = std::all_of(ctx.preds[next].begin(), ctx.preds[next].end(), [&](int p) { return chosen[static_cast<std::size_t>(p)]; });
  if (preds_in) {
    const KSetBits with = killed | ctx.kills[next];
    if (with.count() <= ctx.allowed_killed) {
      chosen.set(next);
      probe_dfs(ctx, next + 1, chosen, count + 1, with, blocked);
      chosen.reset(next);
    }
  }
  KSetBits without = blocked | ctx.above[next];
  without.set(next);
  probe_dfs(ctx, next + 1, chosen, count, killed, without);
}

}  // namespace

HiltonProbe hilton_extremal_probe(int n, int k, int l, int t) {
  if (n < 2 || n > 10) throw std::invalid_argument("hilton_extremal_probe supports 2 <= n <= 10");
  if (k < 1 || l < 1 || k + l > n) throw std::invalid_argument("hilton_extremal_probe requires k, l >= 1, k + l <= n");
  if (t < 0) throw std::invalid_argument("hilton_extremal_probe requires t >= 0");
  const auto start = std::chrono::steady_clock::now();
  ProbeContext ctx{n, k, l, 0, level_masks(n, l), level_masks(n, k), {}, {}, {}, 0, {}, {}, 0};
  const std::uint64_t threshold = BigInt(binom(n, k) - binom(n - t, k)).get_ui();
  ctx.allowed_killed = ctx.k_sets.size() - threshold;
  const std::size_t total = ctx.l_sets.size();
  ctx.kills.resize(total);
  ctx.above.resize(total);
  ctx.preds.resize(total);
  for (std::size_t i = 0; i < total; ++i) {
    const Mask s = ctx.l_sets[i];
    for (std::size_t j = 0; j < ctx.k_sets.size(); ++j) {
      if ((ctx.k_sets[j] & s) == 0) ctx.kills[i].set(j);
    }
    for (int x = 1; x < n; ++x) {
      if (((s >> x) & 1U) && !((s >> (x - 1)) & 1U)) {
        const Mask p = (s & ~(Mask{1} << x)) | (Mask{1} << (x - 1));
        const auto it = std::lower_bound(ctx.l_sets.begin(), ctx.l_sets.end(), p);
        ctx.preds[i].push_back(static_cast<int>(it - ctx.l_sets.begin()));
      }
    }
  }
  // Strict up-sets in the shift order, by propagating predecessor links.
  for (std::size_t i = total; i-- > 0;) {
    for (int p : ctx.preds[i]) {
      ctx.above[static_cast<std::size_t>(p)].set(i);
      ctx.above[static_cast<std::size_t>(p)] |= ctx.above[i];
    }
  }
  KSetBits chosen;
  probe_dfs(ctx, 0, chosen, 0, KSetBits{}, KSetBits{});

  HiltonProbe out;
  out.n = n;
  out.k = k;
  out.l = l;
  out.t = t;
  out.threshold = threshold;
  out.bound = binom(n - t, l - t).get_ui();
  out.max_b = ctx.best;
  out.nodes = ctx.nodes;
  const GroundSet g(n);
  FamilyBuilder wb(g);
  for (std::size_t i = 0; i < total; ++i) {
    if (ctx.best_b[i]) wb.add(ctx.l_sets[i]);
  }
  FamilyBuilder wa(g);
  std::uint64_t taken = 0;
  for (std::size_t j = 0; j < ctx.k_sets.size() && taken < threshold; ++j) {
    if (!ctx.best_killed[j]) {
      wa.add(ctx.k_sets[j]);
      ++taken;
    }
  }
  out.witness_b = std::move(wb).build();
  out.witness_a = std::move(wa).build();
  out.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::uint64_t hilton_bruteforce_max(int n, int k, int l, int t) {
  if (n < 2 || n > 5) throw std::invalid_argument("hilton_bruteforce_max supports n <= 5");
  if (k < 1 || l < 1 || k + l > n) throw std::invalid_argument("hilton_bruteforce_max requires k + l <= n");
  const auto l_sets = level_masks(n, l);
  const auto k_sets = level_masks(n, k);
  const std::uint64_t threshold = BigInt(binom(n, k) - binom(n - t, k)).get_ui();
  std::uint64_t best = 0;
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << l_sets.size()); ++pick) {
    std::uint64_t meeting = 0;
    for (Mask a : k_sets) {
      bool ok = true;
      for (std::size_t i = 0; i < l_sets.size() && ok; ++i) {
        if (((pick >> i) & 1U) && (a & l_sets[i]) == 0) ok = false;
      }
      if (ok) ++meeting;
    }
    if (meeting >= threshold) best = std::max<std::uint64_t>(best, static_cast<std::uint64_t>(std::popcount(pick)));
  }
  return best;
}

SetFamily cross_partner(const SetFamily& g, int level) {
  if (level < 0 || level > g.n()) throw std::invalid_argument("level outside [0, n]");
  const auto members = g.members();
  FamilyBuilder b(g.ground());
  for (Mask s : level_masks(g.n(), level)) {
    if (std::all_of(members.begin(), members.end(), [s](Mask m) { return (m & s) != 0; })) b.add(s);
  }
  return std::move(b).build();
}

int find_t(const BigInt& size, int n, int k1) {
  if (size < 0 || size > binom(n, k1)) throw std::invalid_argument("size exceeds C(n, k1)");
  if (size == 0) return k1;
  int t = 0;
  while (t + 1 <= k1 && binom(n - t - 1, k1 - t - 1) >= size) ++t;
  return t;
}

Verdict check_cross_combination(const SetFamily& g1, int k1, const SetFamily& g2, int k2, const Rational& c1, int t0) {
  require_level(g1, k1, "check_cross_combination");
  require_level(g2, k2, "check_cross_combination");
  if (!are_cross_intersecting(g1, g2)) {
    throw std::invalid_argument("check_cross_combination requires cross-intersecting families");
  }
  if (c1 <= 0) throw std::invalid_argument("C1 must be positive");
  const int n = g1.n();
  const BigInt size1 = to_big(g1.size());
  const BigInt size2 = to_big(g2.size());
  const Rational half_n = ratio(n, 2);
  const Rational n_over_c1 = Rational(n) / c1;
  nlohmann::json hyp = {
      {"g1_size_at_most_C(n-t0,k1-t0)", size1 <= binom(n - t0, k1 - t0)},
      {"k1_above_n_over_C1", Rational(k1) > n_over_c1},
      {"k2_above_n_over_C1", Rational(k2) > n_over_c1},
      {"k1_below_n_over_2", Rational(k1) < half_n},
      {"k2_below_n_over_2", Rational(k2) < half_n},
      {"k_gap_at_most_C1", Rational(std::abs(k1 - k2)) <= c1},
      {"t0_positive", t0 >= 1},
  };
  bool all_met = true;
  for (const auto& [key, value] : hyp.items()) all_met = all_met && value.get<bool>();
  const Rational lhs = Rational(size2) + c1 * Rational(size1);
  const Rational rhs(binom(n, k2));
  const bool equality = lhs == rhs;
  Verdict v = Verdict::from(lhs <= rhs && (!equality || g1.empty()));
  v.equality = equality;
  const int t = find_t(size1, n, k1);
  v.details = {{"lhs", to_string(lhs)},
               {"rhs", to_string(rhs)},
               {"hypotheses", hyp},
               {"hypotheses_met", all_met},
               {"t", t},
               {"hilton_bound_g2", to_string(BigInt(binom(n, k2) - binom(n - t - 1, k2)))}};
  if (v.fails()) {
    v.witness = equality ? "equality with non-empty G1" : "|G2| + C1|G1| = " + to_string(lhs) + " exceeds C(n,k2)";
  }
  return v;
}

Verdict check_indicator_claim(std::span<const SetFamily> families, int k) {
  if (families.empty()) throw std::invalid_argument("check_indicator_claim needs r >= 1 families");
  const GroundSet g = families.front().ground();
  const int n = g.n();
  const int r = static_cast<int>(families.size());
  if (r > n) throw std::invalid_argument("check_indicator_claim requires r <= n");
  for (const auto& f : families) {
    if (!(f.ground() == g)) throw std::invalid_argument("ground-set mismatch");
    require_level(f, k, "check_indicator_claim");
  }
  const Mask head = (Mask{1} << r) - 1;

  // Pointwise route.
  std::vector<std::string> violations;
  std::int64_t sum_lhs = 0;
  std::int64_t sum_rhs = 0;
  for (Mask s : level_masks(n, k)) {
    const bool in_union = std::any_of(families.begin(), families.end(), [s](const SetFamily& f) { return f.contains(s); });
    std::int64_t rhs = (s & head) != 0 ? 1 : 0;
    for (int j = 1; j <= r; ++j) {
      const Mask bit = Mask{1} << (j - 1);
      const SetFamily& fj = families[static_cast<std::size_t>(j - 1)];
      if (fj.contains(s) && !(s & bit)) ++rhs;
      if ((s & head) == bit && !fj.contains(s)) --rhs;
    }
    const std::int64_t lhs = in_union ? 1 : 0;
    sum_lhs += lhs;
    sum_rhs += rhs;
    if (lhs > rhs && violations.size() < 16) violations.push_back(format_set(s));
    if (lhs > rhs && violations.size() >= 16) violations.back() = "...";
  }

  // Summed route through restrictions.
  SetFamily all(g);
  for (const auto& f : families) all = family_union(all, f);
  BigInt bound = binom(n, k) - binom(n - r, k);
  for (int j = 1; j <= r; ++j) {
    const SetFamily& fj = families[static_cast<std::size_t>(j - 1)];
    const Mask bit = Mask{1} << (j - 1);
    const BigInt away = to_big(restrict(fj, bit, 0).size());
    BigInt present;
    if (r < n) {
      present = to_big(restrict(fj, head, bit).size());
    } else {
      present = (k == 1 && fj.contains(bit)) ? 1 : 0;
    }
    bound += away - (binom(n - r, k - 1) - present);
  }
  const BigInt size = to_big(all.size());

  const bool routes_agree = BigInt(sum_rhs) == bound && BigInt(sum_lhs) == size;
  Verdict v = Verdict::from(violations.empty() && size <= bound && routes_agree);
  v.equality = size == bound;
  nlohmann::json viol = violations;
  v.details = {{"size", to_string(size)}, {"bound", to_string(bound)}, {"pointwise_violations", viol}, {"routes_agree", routes_agree}};
  if (v.fails()) {
    v.witness = !violations.empty() ? "pointwise inequality fails at " + violations.front()
                                    : (!routes_agree ? "pointwise and summed totals disagree" : "summed bound exceeded");
  }
  return v;
}

}  // namespace ekrlab
