// Acceptance run: one PASS/FAIL line per criterion. Library results are
// compared against the brute-force oracles in oracles.hpp wherever an
// independent computation is feasible.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "ekrlab/measure.hpp"
#include "ekrlab/search.hpp"
#include "ekrlab/shadows.hpp"
#include "ekrlab/suite.hpp"
#include "oracles.hpp"

using namespace ekrlab;

namespace {

struct Outcome {
  bool pass = true;
  std::string note;

  void expect(bool ok, const std::string& what) {
    if (!ok && pass) note = what;
    pass = pass && ok;
  }
};

const std::vector<Rational> kRussoPs = {Rational(1, 7), Rational(1, 4), Rational(1, 3), Rational(1, 2), Rational(5, 6)};

std::vector<SetFamily> increasing_corpus() {
  RandomCorpus rc;
  rc.kind = RandomKind::increasing;
  rc.count = 200;
  rc.n_lo = 1;
  rc.n_hi = 10;
  rc.seed = 4001;
  std::vector<SetFamily> out;
  for (auto& item : generate(rc)) out.push_back(std::move(item.families[0]));
  return out;
}

bool is_dictatorship(const SetFamily& f) {
  for (int j = 1; j <= f.n(); ++j) {
    const Mask bit = Mask{1} << (j - 1);
    bool all = f.size() == (std::uint64_t{1} << (f.n() - 1));
    for (Mask m : f.members()) all = all && (m & bit) != 0;
    if (all) return true;
  }
  return false;
}

SetFamily star_slice(int n, int j, int k) { return slice(construct(GroundSet(n), construction::Dictatorship{j}), k); }

SetFamily or_slice(int n, int r, int k) {
  std::vector<int> rs;
  for (int i = 1; i <= r; ++i) rs.push_back(i);
  return slice(construct(GroundSet(n), construction::OrFamily{rs}), k);
}

// --- criteria ---------------------------------------------------------------

Outcome ekr() {
  Outcome o;
  SearchLimits lim;
  lim.all_witnesses = true;
  for (auto [n, k] : {std::pair{5, 2}, {6, 2}, {7, 2}, {7, 3}}) {
    const auto out = max_intersecting(n, k, lim);
    const auto tag = "(" + std::to_string(n) + "," + std::to_string(k) + ")";
    o.expect(out.complete, tag + " incomplete");
    o.expect(to_big(out.optimum) == binom(n - 1, k - 1), tag + " optimum " + std::to_string(out.optimum));
    const auto star = oracle::canonical_members(star_slice(n, 1, k));
    o.expect(!out.witnesses.empty(), tag + " no witness");
    for (const auto& w : out.witnesses) {
      o.expect(oracle::intersecting(w), tag + " witness not intersecting");
      o.expect(oracle::canonical_members(w) == star, tag + " witness is not a dictatorship slice");
    }
  }
  return o;
}

Outcome main_union() {
  Outcome o;
  SearchLimits lim;
  lim.all_witnesses = true;
  std::string regimes;
  for (auto [n, k, r] : {std::tuple{6, 2, 2}, {7, 2, 2}, {8, 2, 2}, {7, 2, 3}}) {
    const auto out = max_union_intersecting(n, k, r, lim);
    const auto tag = "(" + std::to_string(n) + "," + std::to_string(k) + "," + std::to_string(r) + ")";
    regimes += " " + tag + (in_regime(TheoremId::main_union, n, k, r) ? "=in" : "=out");
    o.expect(out.complete, tag + " incomplete");
    o.expect(to_big(out.optimum) == binom(n, k) - binom(n - r, k), tag + " optimum " + std::to_string(out.optimum));
    o.expect(out.witnesses.size() == 1, tag + " witness count " + std::to_string(out.witnesses.size()));
    if (!out.witnesses.empty()) {
      const auto& w = out.witnesses[0];
      o.expect(oracle::union_of_intersecting(w.members(), r), tag + " witness not a union of r intersecting families");
      o.expect(oracle::canonical_members(w) == oracle::canonical_members(or_slice(n, r, k)), tag + " witness is not OR_R");
    }
  }
  if (o.pass) o.note = "regime flags:" + regimes;
  return o;
}

Outcome matching() {
  Outcome o;
  SearchLimits lim;
  lim.all_witnesses = true;
  const auto out = max_bounded_matching(8, 2, 2, lim);
  o.expect(out.complete, "incomplete");
  o.expect(out.optimum == 13 && to_big(out.optimum) == binom(8, 2) - binom(6, 2), "optimum " + std::to_string(out.optimum));
  o.expect(!out.witnesses.empty(), "no witness");
  const auto target = oracle::canonical_members(or_slice(8, 2, 2));
  for (const auto& w : out.witnesses) {
    o.expect(oracle::matching_number(w) <= 2, "witness matching number above 2");
    o.expect(oracle::canonical_members(w) == target, "witness is not OR_S");
  }
  return o;
}

Outcome russo(const std::vector<SetFamily>& corpus) {
  Outcome o;
  int equalities = 0;
  for (const auto& f : corpus) {
    for (const auto& p : kRussoPs) {
      const Rational d = derivative_at(f, p);
      const Rational inf = total_influence(f, p);
      const bool ok = d == inf && d == oracle::derivative(f, p) && inf == oracle::total_influence(f, p) &&
                      check_russo(f, p).holds();
      equalities += ok ? 1 : 0;
    }
  }
  o.expect(equalities == 1000, std::to_string(equalities) + "/1000 equalities");
  if (o.pass) o.note = std::to_string(equalities) + "/1000 equalities";
  return o;
}

Outcome integral(const std::vector<SetFamily>& corpus) {
  Outcome o;
  int equalities = 0;
  const Rational half(1, 2);
  for (const auto& f : corpus) {
    for (const auto& p : kRussoPs) {
      const Rational lhs = integral_of_influence(f, p, half);
      const Rational rhs = oracle::mu(f, half) - oracle::mu(f, p);
      const bool ok = lhs == rhs && lhs == oracle::integral_of_total_influence(f, p, half) &&
                      check_integral_identity(f, p).holds();
      equalities += ok ? 1 : 0;
    }
  }
  o.expect(equalities == 1000, std::to_string(equalities) + "/1000 equalities");
  if (o.pass) o.note = std::to_string(equalities) + "/1000 equalities";
  return o;
}

Outcome biased_ekr_fkg() {
  Outcome o;
  RandomCorpus rc;
  rc.kind = RandomKind::intersecting;
  rc.count = 500;
  rc.n_lo = 1;
  rc.n_hi = 8;
  rc.seed = 4002;
  int dict_equalities = 0;
  for (const auto& item : generate(rc)) {
    const auto& f = item.families[0];
    o.expect(oracle::intersecting(f), "corpus family not intersecting");
    for (const auto& p : {Rational(1, 4), Rational(1, 3), Rational(1, 2)}) {
      const auto v = check_biased_ekr(f, p);
      const Rational m = oracle::mu(f, p);
      o.expect(v.holds() && m <= p, "biased EKR fails on " + format_family(f));
      o.expect(v.equality == (m == p), "equality flag disagrees with oracle");
      if (p < Rational(1, 2)) {
        o.expect((m == p) == is_dictatorship(f), "equality away from a dictatorship at p < 1/2");
        dict_equalities += m == p ? 1 : 0;
      }
    }
  }

  // FKG union: 150 random tuples plus 50 distinct-dictatorship tuples.
  std::vector<std::vector<SetFamily>> tuples;
  for (int r = 1; r <= 3; ++r) {
    RandomCorpus tc = rc;
    tc.count = 50;
    tc.n_lo = 3;
    tc.group = r;
    tc.seed = 4003 + static_cast<std::uint64_t>(r);
    for (auto& item : generate(tc)) tuples.push_back(std::move(item.families));
  }
  SeededRng rng(4010);
  for (int i = 0; i < 50; ++i) {
    const int n = 3 + static_cast<int>(rng.below(6));
    const int r = 1 + static_cast<int>(rng.below(3));
    std::vector<int> js;
    while (static_cast<int>(js.size()) < r) {
      const int j = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      if (std::find(js.begin(), js.end(), j) == js.end()) js.push_back(j);
    }
    std::vector<SetFamily> t;
    for (int j : js) t.push_back(construct(GroundSet(n), construction::Dictatorship{j}));
    tuples.push_back(std::move(t));
  }
  // Equality depends on the union only, so the dictatorship case is read off
  // the union: it must be D_j1 u ... u D_jr = OR_R with |R| = r. Tuples of
  // literally distinct dictatorships are counted separately.
  int fkg_equalities = 0;
  int literal_dicts = 0;
  int union_only = 0;
  for (const auto& t : tuples) {
    std::vector<int> dict_of;
    for (const auto& f : t) dict_of.push_back(is_dictatorship(f) ? *dictatorship_index(f) : 0);
    bool literal = std::find(dict_of.begin(), dict_of.end(), 0) == dict_of.end();
    for (std::size_t a = 0; a < dict_of.size(); ++a) {
      for (std::size_t b = a + 1; b < dict_of.size(); ++b) literal = literal && dict_of[a] != dict_of[b];
    }
    SetFamily all(t[0].ground());
    for (const auto& f : t) all = family_union(all, f);
    std::vector<int> singletons;
    for (int j = 1; j <= all.n(); ++j) {
      if (all.contains(Mask{1} << (j - 1))) singletons.push_back(j);
    }
    const bool union_is_or = singletons.size() == t.size() &&
                             all == construct(all.ground(), construction::OrFamily{singletons});
    literal_dicts += literal ? 1 : 0;
    union_only += union_is_or && !literal ? 1 : 0;
    o.expect(!literal || union_is_or, "distinct dictatorships whose union is not OR_R");
    for (const auto& p : {Rational(1, 4), Rational(1, 3), Rational(1, 2)}) {
      const auto v = check_fkg_union(t, p);
      const Rational bound = 1 - oracle::rpow(1 - p, static_cast<int>(t.size()));
      const Rational m = oracle::mu(all, p);
      o.expect(v.holds() && m <= bound, "FKG union fails");
      o.expect(v.equality == (m == bound), "FKG equality flag disagrees with oracle");
      if (literal) o.expect(m == bound, "distinct dictatorships miss equality");
      if (p < Rational(1, 2)) {
        o.expect((m == bound) == union_is_or, "FKG equality away from a union of distinct dictatorships");
        fkg_equalities += m == bound ? 1 : 0;
      }
    }
  }

  if (o.pass) {
    o.note = std::to_string(tuples.size()) + " tuples; equalities at p<1/2: ekr " + std::to_string(dict_equalities) +
             ", fkg " + std::to_string(fkg_equalities) + " (" + std::to_string(literal_dicts) +
             " distinct-dictatorship tuples, " + std::to_string(union_only) +
             " other tuples whose union is OR_R)";
  }
  return o;
}

Outcome isoperimetry() {
  Outcome o;
  const std::vector<Rational> ps = {Rational(1, 4), Rational(1, 3), Rational(2, 5)};
  RandomCorpus rc;
  rc.kind = RandomKind::increasing;
  rc.count = 200;
  rc.n_lo = 1;
  rc.n_hi = 8;
  rc.seed = 4020;
  for (const auto& item : generate(rc)) {
    const auto& f = item.families[0];
    for (const auto& p : ps) {
      const auto v = check_biased_iso(f, p);
      o.expect(v.holds(), "isoperimetry fails on " + format_family(f));
      // floating-point sanity check of the same inequality
      const double m = to_double(oracle::mu(f, p));
      if (m > 0 && m < 1) {
        const double lhs = to_double(p * oracle::total_influence(f, p));
        const double rhs = m * std::log(m) / std::log(to_double(p));
        o.expect(lhs >= rhs - 1e-9, "oracle disagrees on " + format_family(f));
      }
    }
  }
  int cubes = 0;
  for (int n = 1; n <= 8; ++n) {
    for (int size = 1; size <= std::min(3, n); ++size) {
      std::vector<int> r;
      for (int i = 0; i < size; ++i) r.push_back(n - i);  // any R; take the top elements
      const auto f = construct(GroundSet(n), construction::SupersetFamily{r});
      for (const auto& p : ps) {
        const auto v = check_biased_iso(f, p);
        // mu = p^|R| so log_p mu = |R|; exact oracle equality p I = |R| mu
        const bool exact = p * oracle::total_influence(f, p) == size * oracle::mu(f, p);
        o.expect(v.holds() && v.equality && exact, "no equality at subcube n=" + std::to_string(n));
        ++cubes;
      }
    }
  }
  if (o.pass) o.note = "600 random checks, " + std::to_string(cubes) + " subcube equalities";
  return o;
}

Outcome kruskal_katona() {
  Outcome o;
  int cases = 0;
  for (int n = 2; n <= 6; ++n) {
    for (int k = 1; k < n; ++k) {
      const auto expect = oracle::min_upper_shadow(n, k);
      for (std::size_t m = 0; m < expect.size(); ++m) {
        o.expect(kk_min_upper_shadow(n, k, m) == expect[m],
                 "n=" + std::to_string(n) + " k=" + std::to_string(k) + " m=" + std::to_string(m));
        ++cases;
      }
    }
  }
  if (o.pass) o.note = std::to_string(cases) + " (n,k,m) cases";
  return o;
}

Outcome hilton() {
  Outcome o;
  int cases = 0;
  for (int n = 2; n <= 8; ++n) {
    for (int k = 1; k < n; ++k) {
      for (int l = 1; k + l <= n; ++l) {
        for (int t = 1; t <= std::min({3, k, l}); ++t) {
          const auto p = hilton_extremal_probe(n, k, l, t);
          const auto tag = "n=" + std::to_string(n) + " k=" + std::to_string(k) + " l=" + std::to_string(l) +
                           " t=" + std::to_string(t);
          o.expect(to_big(p.max_b) == binom(n - t, l - t), tag + " max " + std::to_string(p.max_b));
          o.expect(p.witness_a.size() >= p.threshold && p.witness_b.size() == p.max_b &&
                       are_cross_intersecting(p.witness_a, p.witness_b),
                   tag + " bad witness");
          if (n <= 5) o.expect(p.max_b == hilton_bruteforce_max(n, k, l, t), tag + " enumeration disagrees");
          ++cases;
        }
      }
    }
  }
  if (o.pass) o.note = std::to_string(cases) + " (n,k,l,t) cases";
  return o;
}

/// Independent pointwise evaluation of the indicator inequality.
std::pair<std::int64_t, std::int64_t> indicator_oracle(const std::vector<SetFamily>& fs, int k, int& violations) {
  const int n = fs[0].n();
  const int r = static_cast<int>(fs.size());
  std::int64_t lhs_total = 0, rhs_total = 0;
  for (Mask s : oracle::level(n, k)) {
    int hits = 0;  // elements of [r] in S
    int only = 0;
    for (int j = 1; j <= r; ++j) {
      if (s & (Mask{1} << (j - 1))) {
        ++hits;
        only = j;
      }
    }
    bool in_union = false;
    std::int64_t rhs = hits > 0 ? 1 : 0;
    for (int j = 1; j <= r; ++j) {
      const bool member = fs[static_cast<std::size_t>(j - 1)].contains(s);
      in_union = in_union || member;
      if (member && !(s & (Mask{1} << (j - 1)))) ++rhs;
      if (hits == 1 && only == j && !member) --rhs;
    }
    if ((in_union ? 1 : 0) > rhs) ++violations;
    lhs_total += in_union ? 1 : 0;
    rhs_total += rhs;
  }
  return {lhs_total, rhs_total};
}

Outcome indicator() {
  Outcome o;
  SeededRng rng(4030);
  int tuples = 0;
  int oracle_violations = 0;
  for (int i = 0; i < 500; ++i) {
    RandomCorpus rc;
    rc.kind = i % 2 ? RandomKind::intersecting_uniform : RandomKind::uniform;
    rc.count = 1;
    rc.group = 1 + static_cast<int>(rng.below(3));
    rc.n_lo = std::max(rc.group, 3);
    rc.n_hi = 9;
    rc.k = 1 + static_cast<int>(rng.below(3));
    rc.seed = rng.next();
    auto fs = generate(rc)[0].families;
    const auto v = check_indicator_claim(fs, rc.k);
    o.expect(v.holds() && v.details.at("pointwise_violations").empty(), "violation reported");
    indicator_oracle(fs, rc.k, oracle_violations);
    ++tuples;
  }
  o.expect(oracle_violations == 0, "oracle found violations");
  int equalities = 0;
  for (int n = 3; n <= 9; ++n) {
    for (int r = 1; r <= 3; ++r) {
      for (int k = 1; k <= 3 && k <= n; ++k) {
        std::vector<SetFamily> fs;
        for (int j = 1; j <= r; ++j) fs.push_back(star_slice(n, j, k));
        const auto v = check_indicator_claim(fs, k);
        int viol = 0;
        const auto [lhs, rhs] = indicator_oracle(fs, k, viol);
        o.expect(v.holds() && v.equality && lhs == rhs && viol == 0,
                 "no summed equality at n=" + std::to_string(n) + " r=" + std::to_string(r));
        ++equalities;
      }
    }
  }
  if (o.pass) o.note = std::to_string(tuples) + " random tuples, " + std::to_string(equalities) + " dictatorship equalities";
  return o;
}

Outcome kk_chain() {
  Outcome o;
  int cases = 0;
  for (int n = 4; n <= 12; ++n) {
    for (int r = 1; r <= 3; ++r) {
      for (int t = 0; t <= 3 && r + t <= n; ++t) {
        const GroundSet g(n);
        const auto ff = construct(g, construction::FranklFuredi{r, t});
        // membership straight from the definition
        const Mask head = (Mask{1} << (r - 1)) - 1;
        const Mask pivot = Mask{1} << (r - 1);
        const Mask tail = ((Mask{1} << t) - 1) << r;
        std::vector<std::uint64_t> counts(static_cast<std::size_t>(n + 1), 0);
        for (Mask s = 0; s <= g.full_mask(); ++s) {
          if ((s & head) || ((s & pivot) && (s & tail))) ++counts[static_cast<std::size_t>(std::popcount(s))];
        }
        for (int l = 1; l <= n; ++l) {
          const BigInt formula = binom(n, l) - binom(n - r, l) - binom(n - r - t, l - 1);
          o.expect(to_big(counts[static_cast<std::size_t>(l)]) == formula && to_big(slice(ff, l).size()) == formula,
                   "level count mismatch n=" + std::to_string(n) + " l=" + std::to_string(l));
        }
        for (int k = 2; k + r + t <= n; ++k) {
          const auto v = check_kk_chain(n, k, r, t);
          o.expect(v.holds(), "chain fails n=" + std::to_string(n) + " k=" + std::to_string(k) + " r=" +
                                  std::to_string(r) + " t=" + std::to_string(t));
          ++cases;
        }
      }
    }
  }
  if (o.pass) o.note = std::to_string(cases) + " (n,k,r,t) chains";
  return o;
}

Outcome reproducibility() {
  Outcome o;
  auto strip = [](nlohmann::json j) {
    j.erase("timestamp");
    return j.dump();
  };
  auto spec = default_suite();
  const auto a = run_suite(spec);
  const auto b = run_suite(spec);
  spec.workers = 3;
  const auto c = run_suite(spec);
  o.expect(a.ok, "default suite not green");
  o.expect(strip(a.json) == strip(b.json), "reruns differ");
  o.expect(strip(a.json) == strip(c.json), "worker count changes the report");
  if (o.pass) o.note = std::to_string(a.json.at("records").size()) + " records";
  return o;
}

}  // namespace

int main() {
  const auto corpus = increasing_corpus();
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"EKR desk check", ekr},
      {"union of intersecting families", main_union},
      {"bounded matching", matching},
      {"Russo identity", [&] { return russo(corpus); }},
      {"integral identity", [&] { return integral(corpus); }},
      {"biased EKR and FKG union", biased_ekr_fkg},
      {"isoperimetry", isoperimetry},
      {"Kruskal-Katona oracle", kruskal_katona},
      {"Hilton probe", hilton},
      {"indicator inequality", indicator},
      {"Kruskal-Katona chain", kk_chain},
      {"reproducibility", reproducibility},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.note = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %zu: %s  %s (%.2fs)%s%s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first, secs,
                o.note.empty() ? "" : " - ", o.note.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
