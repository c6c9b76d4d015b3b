#include "ekrlab/suite.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "ekrlab/measure.hpp"
#include "ekrlab/rational.hpp"
#include "ekrlab/shadows.hpp"

namespace ekrlab {

using nlohmann::json;

// --- randomness --------------------------------------------------------------

SeededRng::SeededRng(std::uint64_t seed) : engine_(seed) {}

std::uint64_t SeededRng::next() { return engine_(); }

std::uint64_t SeededRng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("below(0)");
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound + 1) % bound;
  std::uint64_t x;
  do {
    x = next();
  } while (x > limit);
  return x % bound;
}

bool SeededRng::chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// --- corpora -------------------------------------------------------------------

std::optional<RandomKind> parse_random_kind(std::string_view name) {
  if (name == "increasing") return RandomKind::increasing;
  if (name == "intersecting") return RandomKind::intersecting;
  if (name == "uniform") return RandomKind::uniform;
  if (name == "intersecting-uniform") return RandomKind::intersecting_uniform;
  if (name == "cross-pair") return RandomKind::cross_pair;
  return std::nullopt;
}

std::string to_string(RandomKind kind) {
  switch (kind) {
    case RandomKind::increasing: return "increasing";
    case RandomKind::intersecting: return "intersecting";
    case RandomKind::uniform: return "uniform";
    case RandomKind::intersecting_uniform: return "intersecting-uniform";
    case RandomKind::cross_pair: return "cross-pair";
  }
  return "?";
}

namespace {

Mask random_subset(SeededRng& rng, int n) { return static_cast<Mask>(rng.next()) & GroundSet(n).full_mask(); }

std::vector<Mask> level_of(int n, int k) {
  std::vector<Mask> out;
  for (Mask m = 0; m < (Mask{1} << n); ++m) {
    if (std::popcount(m) == k) out.push_back(m);
  }
  return out;
}

}  // namespace

SetFamily random_increasing(SeededRng& rng, int n) {
  const GroundSet g(n);
  FamilyBuilder b(g);
  const auto seeds = 1 + rng.below(4);
  for (std::uint64_t i = 0; i < seeds; ++i) b.add(random_subset(rng, n));
  return up_closure(std::move(b).build());
}

SetFamily random_intersecting(SeededRng& rng, int n) {
  const GroundSet g(n);
  if (rng.chance(1, 8)) {
    return construct(g, construction::Dictatorship{static_cast<int>(1 + rng.below(static_cast<std::uint64_t>(n)))});
  }
  std::vector<Mask> kept;
  for (int i = 0; i < 2 * n; ++i) {
    const Mask s = static_cast<Mask>(1 + rng.below(g.full_mask()));
    if (std::all_of(kept.begin(), kept.end(), [s](Mask m) { return (m & s) != 0; })) kept.push_back(s);
  }
  SetFamily f = build_from_masks(g, kept);
  return rng.chance(1, 2) ? up_closure(f) : f;
}

SetFamily random_uniform(SeededRng& rng, int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("uniform corpus needs 0 <= k <= n");
  const GroundSet g(n);
  const auto d = 1 + rng.below(3);
  FamilyBuilder b(g);
  for (Mask m : level_of(n, k)) {
    if (rng.chance(d, 4)) b.add(m);
  }
  return std::move(b).build();
}

SetFamily random_intersecting_uniform(SeededRng& rng, int n, int k) {
  if (k < 1 || k > n) throw std::invalid_argument("intersecting-uniform corpus needs 1 <= k <= n");
  auto sets = level_of(n, k);
  for (std::size_t i = sets.size(); i > 1; --i) std::swap(sets[i - 1], sets[rng.below(i)]);
  const auto target = 1 + rng.below(sets.size());
  std::vector<Mask> kept;
  for (Mask s : sets) {
    if (kept.size() >= target) break;
    if (std::all_of(kept.begin(), kept.end(), [s](Mask m) { return (m & s) != 0; })) kept.push_back(s);
  }
  return build_from_masks(GroundSet(n), kept);
}

std::vector<CorpusItem> generate(const RandomCorpus& c) {
  if (c.count < 0 || c.n_lo < 1 || c.n_hi < c.n_lo || c.n_hi > kDefaultMaxGround || c.group < 1) {
    throw std::invalid_argument("bad random corpus description");
  }
  SeededRng rng(c.seed);
  std::vector<CorpusItem> out;
  for (int i = 0; i < c.count; ++i) {
    const int n = c.n_lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(c.n_hi - c.n_lo + 1)));
    CorpusItem item;
    item.attrs = {{"corpus", to_string(c.kind)}, {"index", i}, {"n", n}};
    if (c.kind == RandomKind::cross_pair) {
      if (c.k < 1 || c.l < 1 || c.k + c.l > n) throw std::invalid_argument("cross-pair corpus needs k + l <= n");
      SetFamily a = random_uniform(rng, n, c.k);
      SetFamily b = cross_partner(a, c.l);
      item.families = {std::move(a), std::move(b)};
      item.attrs["k"] = c.k;
      item.attrs["l"] = c.l;
    } else {
      for (int j = 0; j < c.group; ++j) {
        switch (c.kind) {
          case RandomKind::increasing: item.families.push_back(random_increasing(rng, n)); break;
          case RandomKind::intersecting: item.families.push_back(random_intersecting(rng, n)); break;
          case RandomKind::uniform: item.families.push_back(random_uniform(rng, n, c.k)); break;
          case RandomKind::intersecting_uniform: item.families.push_back(random_intersecting_uniform(rng, n, c.k)); break;
          case RandomKind::cross_pair: break;
        }
      }
      if (c.kind == RandomKind::uniform || c.kind == RandomKind::intersecting_uniform) item.attrs["k"] = c.k;
    }
    out.push_back(std::move(item));
  }
  return out;
}

// --- checkers --------------------------------------------------------------------

namespace {

const json& need(const json& params, const char* key) {
  auto it = params.find(key);
  if (it == params.end()) throw std::invalid_argument(std::string("missing parameter '") + key + "'");
  return *it;
}

Rational rational_param(const json& params, const char* key) {
  const json& v = need(params, key);
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw std::invalid_argument(std::string("parameter '") + key + "' must be an integer or an \"a/b\" string");
}

int int_param(const json& params, const char* key) {
  const json& v = need(params, key);
  if (!v.is_number_integer()) throw std::invalid_argument(std::string("parameter '") + key + "' must be an integer");
  return v.get<int>();
}

int level_param(const json& params, const char* key, const SetFamily& f) {
  if (params.contains(key)) return int_param(params, key);
  if (auto l = f.uniform_level()) return *l;
  if (params.contains("slice")) return int_param(params, "slice");
  throw std::invalid_argument(std::string("cannot infer '") + key + "' from an empty or non-uniform family");
}

Verdict kk_oracle(int n, int k) {
  const auto brute = min_upper_shadow_exhaustive(n, k);
  json mismatches = json::array();
  for (std::size_t m = 0; m < brute.size(); ++m) {
    const auto formula = kk_min_upper_shadow(n, k, m);
    if (formula != brute[m]) mismatches.push_back({{"m", m}, {"formula", formula}, {"exhaustive", brute[m]}});
  }
  Verdict v = Verdict::from(mismatches.empty());
  v.equality = mismatches.empty();
  v.details = {{"values", brute.size()}, {"mismatches", mismatches}};
  if (v.fails()) v.witness = "formula differs from exhaustive minimum at m=" + mismatches.front()["m"].dump();
  return v;
}

Verdict probe_verdict(int n, int k, int l, int t) {
  const HiltonProbe probe = hilton_extremal_probe(n, k, l, t);
  Verdict v = Verdict::from(probe.max_b <= probe.bound);
  v.equality = probe.max_b == probe.bound;
  json b = json::array();
  probe.witness_b.for_each_member([&](Mask m) { b.push_back(format_set(m)); });
  v.details = {{"threshold", probe.threshold}, {"bound", probe.bound}, {"max_b", probe.max_b},
               {"nodes", probe.nodes}, {"witness_b", b}};
  if (v.fails()) v.witness = "found |B| = " + std::to_string(probe.max_b) + " above " + std::to_string(probe.bound);
  return v;
}

}  // namespace

const std::vector<CheckerInfo>& checker_registry() {
  static const std::vector<CheckerInfo> registry = {
      {"check_biased_ekr", Arity::single, {"p"}, "mu_p(F) <= p for intersecting F, 0 < p <= 1/2"},
      {"check_biased_iso", Arity::single, {"p"}, "p I^p[A] >= mu_p(A) log_p mu_p(A) for increasing A"},
      {"check_chernoff", Arity::none, {"n", "p", "delta"}, "binomial lower tail below exp(-delta^2 n p / 2)"},
      {"check_cross_combination", Arity::pair, {"c1", "t0", "k1?", "k2?"}, "|G2| + C1 |G1| <= C(n, k2)"},
      {"check_fkg_union", Arity::tuple, {"p"}, "mu_p of a union of r intersecting families <= 1 - (1-p)^r"},
      {"check_going_up", Arity::single, {"p"}, "mu_p(G up) >= density(G) Pr[Bin(n,p) >= k]"},
      {"check_harris", Arity::pair, {"p"}, "mu_p(A n B) >= mu_p(A) mu_p(B)"},
      {"check_harris_many", Arity::tuple, {"p"}, "Harris inequality for several monotone families"},
      {"check_hilton", Arity::pair, {"t", "k?", "l?"}, "|A| >= C(n,k) - C(n-t,k) implies |B| <= C(n-t, l-t)"},
      {"check_indicator_claim", Arity::tuple, {"k?"}, "pointwise indicator inequality and summed bound"},
      {"check_influence_duality", Arity::single, {"p"}, "I^p[F] == I^{1-p}[F*]"},
      {"check_integral_identity", Arity::single, {"p"}, "integral of I^q from p to 1/2 equals mu_{1/2} - mu_p"},
      {"check_kk_chain", Arity::none, {"n", "k", "r", "t"}, "Kruskal-Katona chain above the Frankl-Furedi levels"},
      {"check_local_lym", Arity::single, {}, "normalized upper shadow at least normalized size"},
      {"check_logp_monotone", Arity::single, {"p1", "p2"}, "log_p mu_p(A) is non-increasing in p"},
      {"check_russo", Arity::single, {"p"}, "d/dp mu_p(F) == I^p[F] for increasing F"},
      {"hilton_extremal_probe", Arity::none, {"n", "k", "l", "t"}, "exhaustive max |B| at the Hilton threshold"},
      {"kk_min_upper_shadow", Arity::none, {"n", "k"}, "cascade minimum upper shadow equals exhaustive minimum"},
      {"verify_theorem", Arity::none, {"theorem", "n", "k", "r?"}, "extremal search against the theorem's formula"},
  };
  return registry;
}

const CheckerInfo* find_checker(std::string_view id) {
  const auto& reg = checker_registry();
  const auto it = std::find_if(reg.begin(), reg.end(), [&](const CheckerInfo& c) { return c.id == id; });
  return it == reg.end() ? nullptr : &*it;
}

Verdict run_checker(std::string_view id, std::span<const SetFamily> fs, const json& params, int precision_bits,
                    const SearchLimits& limits) {
  const CheckerInfo* info = find_checker(id);
  if (!info) throw std::invalid_argument("unknown checker '" + std::string(id) + "'");
  const std::size_t want = info->arity == Arity::none ? 0 : info->arity == Arity::single ? 1 : info->arity == Arity::pair ? 2 : 0;
  if (info->arity == Arity::tuple ? fs.empty() : fs.size() != want) {
    throw std::invalid_argument(info->id + " expects " + (info->arity == Arity::tuple ? std::string("at least 1") : std::to_string(want)) +
                                " families, got " + std::to_string(fs.size()));
  }
  if (id == "check_russo") return check_russo(fs[0], rational_param(params, "p"));
  if (id == "check_integral_identity") return check_integral_identity(fs[0], rational_param(params, "p"));
  if (id == "check_biased_ekr") return check_biased_ekr(fs[0], rational_param(params, "p"));
  if (id == "check_harris") return check_harris(fs[0], fs[1], rational_param(params, "p"));
  if (id == "check_harris_many") return check_harris_many(fs, rational_param(params, "p"));
  if (id == "check_biased_iso") return check_biased_iso(fs[0], rational_param(params, "p"));
  if (id == "check_logp_monotone") {
    return check_logp_monotone(fs[0], rational_param(params, "p1"), rational_param(params, "p2"), precision_bits);
  }
  if (id == "check_chernoff") {
    return check_chernoff(int_param(params, "n"), rational_param(params, "p"), rational_param(params, "delta"), precision_bits);
  }
  if (id == "check_going_up") return check_going_up(fs[0], rational_param(params, "p"));
  if (id == "check_fkg_union") return check_fkg_union(fs, rational_param(params, "p"));
  if (id == "check_influence_duality") return check_influence_duality(fs[0], rational_param(params, "p"));
  if (id == "check_local_lym") return check_local_lym(fs[0]);
  if (id == "kk_min_upper_shadow") return kk_oracle(int_param(params, "n"), int_param(params, "k"));
  if (id == "check_kk_chain") {
    return check_kk_chain(int_param(params, "n"), int_param(params, "k"), int_param(params, "r"), int_param(params, "t"));
  }
  if (id == "check_hilton") {
    return check_hilton(fs[0], level_param(params, "k", fs[0]), fs[1], level_param(params, "l", fs[1]), int_param(params, "t"));
  }
  if (id == "hilton_extremal_probe") {
    return probe_verdict(int_param(params, "n"), int_param(params, "k"), int_param(params, "l"), int_param(params, "t"));
  }
  if (id == "check_cross_combination") {
    return check_cross_combination(fs[0], level_param(params, "k1", fs[0]), fs[1], level_param(params, "k2", fs[1]),
                                   rational_param(params, "c1"), int_param(params, "t0"));
  }
  if (id == "check_indicator_claim") {
    int k = -1;
    if (params.contains("k")) {
      k = int_param(params, "k");
    } else {
      for (const auto& f : fs) {
        if (auto l = f.uniform_level()) k = *l;
      }
      if (k < 0 && params.contains("slice")) k = int_param(params, "slice");
      if (k < 0) throw std::invalid_argument("cannot infer 'k' from empty families");
    }
    return check_indicator_claim(fs, k);
  }
  if (id == "verify_theorem") {
    const auto th = parse_theorem(need(params, "theorem").get<std::string>());
    if (!th) throw std::invalid_argument("unknown theorem");
    const int r = params.contains("r") ? int_param(params, "r") : 0;
    TheoremReport rep = verify_theorem(*th, int_param(params, "n"), int_param(params, "k"), r, limits);
    rep.verdict.details = rep.json;
    return rep.verdict;
  }
  throw std::logic_error("checker registered without implementation: " + std::string(id));
}

// --- theorems ------------------------------------------------------------------------

std::optional<TheoremId> parse_theorem(std::string_view name) {
  if (name == "ekr") return TheoremId::ekr;
  if (name == "ff-union") return TheoremId::ff_union;
  if (name == "main-union") return TheoremId::main_union;
  if (name == "matching") return TheoremId::matching;
  return std::nullopt;
}

std::string to_string(TheoremId id) {
  switch (id) {
    case TheoremId::ekr: return "ekr";
    case TheoremId::ff_union: return "ff-union";
    case TheoremId::main_union: return "main-union";
    case TheoremId::matching: return "matching";
  }
  return "?";
}

namespace {

// n > (3 + sqrt 5) k / 2, decided in integers.
bool above_golden_threshold(int n, int k) {
  const long d = 2L * n - 3L * k;
  return d > 0 && d * d > 5L * k * k;
}

int effective_r(TheoremId id, int r) {
  switch (id) {
    case TheoremId::ekr: return 1;
    case TheoremId::ff_union:
      if (r != 0 && r != 2) throw std::invalid_argument("ff-union concerns two families (r = 2)");
      return 2;
    case TheoremId::main_union:
    case TheoremId::matching:
      if (r < 1) throw std::invalid_argument("r or s must be at least 1");
      return r;
  }
  return r;
}

}  // namespace

bool in_regime(TheoremId id, int n, int k, int r) {
  r = effective_r(id, r);
  switch (id) {
    case TheoremId::ekr: return 2 * k < n;
    case TheoremId::ff_union: return above_golden_threshold(n, k);
    case TheoremId::main_union:
      if (r == 1) return 2 * k < n;
      return (r == 2 && above_golden_threshold(n, k)) || n >= (2 * r + 1) * k - r;
    case TheoremId::matching: return n >= (2 * r + 1) * k - r;
  }
  return false;
}

std::uint64_t theorem_formula(TheoremId id, int n, int k, int r) {
  r = effective_r(id, r);
  if (id == TheoremId::ekr) return binom(n - 1, k - 1).get_ui();
  return BigInt(binom(n, k) - binom(n - r, k)).get_ui();
}

TheoremReport verify_theorem(TheoremId id, int n, int k, int r, SearchLimits limits) {
  r = effective_r(id, r);
  limits.all_witnesses = true;
  SearchProblem problem{ProblemKind::max_union_intersecting, n, k, r, limits};
  if (id == TheoremId::matching) problem.kind = ProblemKind::max_bounded_matching;
  if (id == TheoremId::ekr && 2 * k < n) problem.kind = ProblemKind::max_intersecting;
  const SearchOutcome out = solve(problem);

  const bool regime = in_regime(id, n, k, r);
  const std::uint64_t formula = theorem_formula(id, n, k, r);
  const GroundSet g(n);
  std::vector<int> core(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) core[static_cast<std::size_t>(i)] = i + 1;
  const SetFamily expected = slice(construct(g, construction::OrFamily{core}), k);

  bool shapes = !out.witnesses.empty();
  if (n <= kCanonicalMaxGround) {
    const CanonicalForm want = canonicalize(expected);
    for (const auto& w : out.witnesses) shapes = shapes && canonicalize(w) == want;
  } else {
    // Without canonical forms: the witness must be OR_R for R = its set of
    // full-degree elements.
    for (const auto& w : out.witnesses) {
      std::vector<int> r_set;
      for (int i = 1; i <= n; ++i) {
        const SetFamily star = slice(construct(g, construction::Dictatorship{i}), k);
        if (star.is_subfamily_of(w)) r_set.push_back(i);
      }
      shapes = shapes && static_cast<int>(r_set.size()) == r && w == slice(construct(g, construction::OrFamily{r_set}), k);
    }
  }
  const bool matches = out.optimum == formula;
  const bool unique = out.witnesses.size() == 1;

  Verdict v;
  if (!out.complete) {
    v.kind = VerdictKind::indeterminate;
    v.witness = "search budget exhausted";
  } else if (regime) {
    v = Verdict::from(matches && shapes && unique);
    if (v.fails()) {
      v.witness = !matches ? "optimum " + std::to_string(out.optimum) + " differs from formula " + std::to_string(formula)
                           : "extremal families other than the expected construction";
    }
  }
  v.equality = out.complete && matches;

  json j = {{"theorem", to_string(id)},
            {"n", n},
            {"k", k},
            {"regime", regime ? "IN-REGIME" : "OUT-OF-REGIME"},
            {"asserted", regime},
            {"formula", formula},
            {"optimum", out.optimum},
            {"complete", out.complete},
            {"matches_formula", matches},
            {"witness_count", out.witnesses.size()},
            {"unique", unique},
            {"witnesses_match_extremal", shapes},
            {"verdict", !out.complete ? "INDETERMINATE" : regime ? to_string(v.kind) : "NOT-ASSERTED"}};
  if (id == TheoremId::matching) {
    j["s"] = r;
  } else if (id != TheoremId::ekr) {
    j["r"] = r;
  }
  j["search"] = out.to_json(false);
  j["search"]["problem"] = problem.to_json();
  j["search"]["problem"].erase("limits");
  return TheoremReport{std::move(j), std::move(v)};
}

// --- suites -------------------------------------------------------------------

SuiteSpec SuiteSpec::from_json(const json& j, const std::string& base_dir) {
  if (!j.is_object()) throw std::invalid_argument("suite spec must be a JSON object");
  SuiteSpec s;
  s.base_dir = base_dir;
  s.name = j.value("name", s.name);
  s.seed = j.value("seed", s.seed);
  s.precision_bits = j.value("precision_bits", s.precision_bits);
  s.workers = j.value("workers", s.workers);
  s.record_timing = j.value("record_timing", s.record_timing);
  if (auto it = j.find("budgets"); it != j.end()) {
    s.limits.node_budget = it->value("nodes", std::uint64_t{0});
    s.limits.time_budget_s = it->value("seconds", 0.0);
  }
  if (s.precision_bits < 16) throw std::invalid_argument("precision_bits must be at least 16");
  if (s.workers < 1) throw std::invalid_argument("workers must be positive");
  for (const auto& c : j.at("checks")) {
    CheckDescriptor d;
    d.checker = c.at("checker").get<std::string>();
    if (!find_checker(d.checker)) throw std::invalid_argument("unknown checker '" + d.checker + "'");
    d.params = c.value("params", json::object());
    if (!d.params.is_object()) throw std::invalid_argument("params must be an object");
    d.corpus = c.value("corpus", json());
    d.allow_indeterminate = c.value("allow_indeterminate", false);
    s.checks.push_back(std::move(d));
  }
  return s;
}

json SuiteSpec::to_json() const {
  json checks = json::array();
  for (const auto& c : this->checks) {
    json d = {{"checker", c.checker}, {"params", c.params}};
    if (!c.corpus.is_null()) d["corpus"] = c.corpus;
    if (c.allow_indeterminate) d["allow_indeterminate"] = true;
    checks.push_back(std::move(d));
  }
  return {{"name", name},
          {"seed", seed},
          {"precision_bits", precision_bits},
          {"workers", workers},
          {"record_timing", record_timing},
          {"budgets", {{"nodes", limits.node_budget}, {"seconds", limits.time_budget_s}}},
          {"checks", checks}};
}

SuiteSpec load_suite_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open suite file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("malformed suite file " + path + ": " + e.what());
  }
  const auto dir = std::filesystem::path(path).parent_path();
  return SuiteSpec::from_json(j, dir.empty() ? "." : dir.string());
}

namespace {

struct Job {
  std::string checker;
  json params;
  std::vector<SetFamily> families;
  std::string setup_error;
  bool allow_indeterminate = false;
};

std::pair<int, int> int_range(const json& v, const char* what) {
  if (v.is_number_integer()) return {v.get<int>(), v.get<int>()};
  if (v.is_array() && v.size() == 2) return {v[0].get<int>(), v[1].get<int>()};
  throw std::invalid_argument(std::string(what) + " must be an integer or [lo, hi]");
}

std::vector<json> expand_grid(const json& params) {
  std::vector<json> out{json::object()};
  for (const auto& [key, value] : params.items()) {
    std::vector<json> next;
    const json values = value.is_array() ? value : json::array({value});
    for (const auto& base : out) {
      for (const auto& v : values) {
        json p = base;
        p[key] = v;
        next.push_back(std::move(p));
      }
    }
    out = std::move(next);
  }
  return out;
}

// Construction corpus entries are a construction string or an array of them;
// "partner:<l>" stands for the level-l cross partner of the first family.
std::vector<SetFamily> build_entry(const json& entry, int n, std::optional<int> level) {
  const GroundSet g(n);
  std::vector<SetFamily> out;
  const json names = entry.is_array() ? entry : json::array({entry});
  for (const auto& name : names) {
    const std::string text = name.get<std::string>();
    if (text.rfind("partner:", 0) == 0) {
      if (out.empty()) throw std::invalid_argument("partner needs a preceding family");
      out.push_back(cross_partner(out.front(), std::stoi(text.substr(8))));
      continue;
    }
    SetFamily f = construct(g, parse_construction(text));
    out.push_back(level ? slice(f, *level) : std::move(f));
  }
  return out;
}

std::vector<CorpusItem> corpus_items(const json& corpus, std::uint64_t seed, const std::string& base_dir,
                                     std::vector<std::string>& errors, std::vector<json>& error_attrs) {
  std::vector<CorpusItem> items;
  if (auto it = corpus.find("constructions"); it != corpus.end()) {
    const auto [lo, hi] = int_range(corpus.at("n"), "n");
    std::optional<int> level;
    if (corpus.contains("slice")) level = corpus.at("slice").get<int>();
    for (int n = lo; n <= hi; ++n) {
      for (const auto& entry : *it) {
        json attrs = {{"n", n}, {"family", entry}};
        if (level) attrs["slice"] = *level;
        try {
          items.push_back(CorpusItem{build_entry(entry, n, level), attrs});
        } catch (const std::exception& e) {
          errors.push_back(e.what());
          error_attrs.push_back(attrs);
        }
      }
    }
  } else if (auto rt = corpus.find("random"); rt != corpus.end()) {
    const auto kind = parse_random_kind(rt->get<std::string>());
    if (!kind) throw std::invalid_argument("unknown random corpus kind " + rt->dump());
    RandomCorpus rc;
    rc.kind = *kind;
    rc.count = corpus.value("count", 1);
    std::tie(rc.n_lo, rc.n_hi) = int_range(corpus.at("n"), "n");
    rc.k = corpus.value("k", 1);
    rc.l = corpus.value("l", 1);
    rc.group = corpus.value("group", 1);
    rc.seed = corpus.value("seed", seed);
    items = generate(rc);
  } else if (auto ft = corpus.find("files"); ft != corpus.end()) {
    for (const auto& entry : *ft) {
      const json names = entry.is_array() ? entry : json::array({entry});
      json attrs = {{"file", entry}};
      try {
        std::vector<SetFamily> fs;
        for (const auto& name : names) {
          std::filesystem::path p(name.get<std::string>());
          if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
          fs.push_back(load_family_file(p.string()));
        }
        items.push_back(CorpusItem{std::move(fs), attrs});
      } catch (const std::exception& e) {
        errors.push_back(e.what());
        error_attrs.push_back(attrs);
      }
    }
  } else {
    throw std::invalid_argument("corpus needs one of constructions, random or files");
  }
  return items;
}

json run_job(const Job& job, int precision_bits, const SearchLimits& limits, bool timing) {
  json rec = {{"checker", job.checker}, {"params", job.params}};
  const auto start = std::chrono::steady_clock::now();
  if (!job.setup_error.empty()) {
    rec["verdict"] = "ERROR";
    rec["error"] = job.setup_error;
  } else {
    try {
      const Verdict v = run_checker(job.checker, job.families, job.params, precision_bits, limits);
      rec["verdict"] = to_string(v.kind);
      rec["equality"] = v.equality;
      if (!v.witness.empty()) rec["witness"] = v.witness;
      if (v.precision_bits) rec["precision_bits"] = *v.precision_bits;
      rec["details"] = v.details;
      if (v.indeterminate() && !job.allow_indeterminate) rec["unexpected"] = true;
    } catch (const std::exception& e) {
      rec["verdict"] = "ERROR";
      rec["error"] = e.what();
    }
  }
  if (timing) rec["wall_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

Report run_suite(const SuiteSpec& spec) {
  std::vector<Job> jobs;
  for (std::size_t d = 0; d < spec.checks.size(); ++d) {
    const auto& desc = spec.checks[d];
    const CheckerInfo& info = *find_checker(desc.checker);
    const auto grid = expand_grid(desc.params);
    std::vector<CorpusItem> items;
    std::vector<std::string> errors;
    std::vector<json> error_attrs;
    if (info.arity == Arity::none) {
      if (!desc.corpus.is_null()) throw std::invalid_argument(desc.checker + " takes no corpus");
      items.push_back(CorpusItem{{}, json::object()});
    } else {
      if (desc.corpus.is_null()) throw std::invalid_argument(desc.checker + " needs a corpus");
      items = corpus_items(desc.corpus, mix_seed(spec.seed, d), spec.base_dir, errors, error_attrs);
    }
    for (const auto& p : grid) {
      for (const auto& item : items) {
        Job job{desc.checker, item.attrs, item.families, "", desc.allow_indeterminate};
        job.params.update(p);
        jobs.push_back(std::move(job));
      }
      for (std::size_t e = 0; e < errors.size(); ++e) {
        Job job{desc.checker, error_attrs[e], {}, errors[e], desc.allow_indeterminate};
        job.params.update(p);
        jobs.push_back(std::move(job));
      }
    }
  }

  std::vector<json> records(jobs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) {
      records[i] = run_job(jobs[i], spec.precision_bits, spec.limits, spec.record_timing);
    }
  };
  if (spec.workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < spec.workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  std::stable_sort(records.begin(), records.end(), [](const json& a, const json& b) {
    if (a["checker"] != b["checker"]) return a["checker"] < b["checker"];
    return a["params"] < b["params"];
  });

  std::uint64_t holds = 0, fails = 0, indeterminate = 0, errors = 0, unexpected = 0;
  for (const auto& r : records) {
    const auto v = r["verdict"].get<std::string>();
    if (v == "HOLDS") ++holds;
    if (v == "FAILS") ++fails;
    if (v == "INDETERMINATE") ++indeterminate;
    if (v == "ERROR") ++errors;
    if (r.contains("unexpected")) ++unexpected;
  }
  Report rep;
  rep.ok = fails == 0 && errors == 0 && unexpected == 0;
  rep.json = {{"suite", spec.name},
              {"version", kVersion},
              {"seed", spec.seed},
              {"precision_bits", spec.precision_bits},
              {"timestamp", utc_timestamp()},
              {"records", records},
              {"summary",
               {{"total", records.size()},
                {"holds", holds},
                {"fails", fails},
                {"indeterminate", indeterminate},
                {"unexpected_indeterminate", unexpected},
                {"errors", errors}}},
              {"ok", rep.ok}};
  return rep;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string report_csv(const json& report) {
  std::ostringstream out;
  out << "checker,params,verdict,equality,witness,error\n";
  for (const auto& r : report.at("records")) {
    out << csv_field(r.at("checker").get<std::string>()) << ',' << csv_field(r.at("params").dump()) << ','
        << r.at("verdict").get<std::string>() << ',' << (r.value("equality", false) ? "true" : "false") << ','
        << csv_field(r.value("witness", std::string())) << ',' << csv_field(r.value("error", std::string())) << '\n';
  }
  return out.str();
}

SuiteSpec default_suite() {
  static const char* text = R"json({
  "name": "paper-tools",
  "seed": 20240601,
  "precision_bits": 256,
  "checks": [
    {"checker": "check_russo", "params": {"p": ["1/4", "1/3", "1/2", "3/4"]},
     "corpus": {"constructions": ["dict:1", "or:1,2", "sup:1,2", "subcube:1,2/1,2", "ff:2,1", "full", "empty"], "n": [4, 6]}},
    {"checker": "check_russo", "params": {"p": "2/5"}, "corpus": {"random": "increasing", "count": 20, "n": [3, 8]}},
    {"checker": "check_integral_identity", "params": {"p": ["1/4", "1/3"]},
     "corpus": {"constructions": ["dict:1", "or:1,2", "sup:1,2", "ff:2,1"], "n": [4, 6]}},
    {"checker": "check_integral_identity", "params": {"p": "1/5"}, "corpus": {"random": "increasing", "count": 20, "n": [3, 8]}},
    {"checker": "check_biased_ekr", "params": {"p": ["1/4", "1/3", "1/2"]},
     "corpus": {"constructions": ["dict:1", "dict:3", "sup:1,2", "ff:1,2", "empty"], "n": [4, 6]}},
    {"checker": "check_biased_ekr", "params": {"p": ["1/4", "1/2"]}, "corpus": {"random": "intersecting", "count": 20, "n": [3, 8]}},
    {"checker": "check_harris", "params": {"p": ["1/3", "1/2"]},
     "corpus": {"constructions": [["dict:1", "dict:2"], ["or:1,2", "sup:2,3"], ["dict:1", "dict:1"]], "n": [4, 6]}},
    {"checker": "check_harris_many", "params": {"p": "1/3"}, "corpus": {"random": "increasing", "count": 10, "n": [3, 7], "group": 3}},
    {"checker": "check_biased_iso", "params": {"p": ["1/4", "1/3", "2/5"]},
     "corpus": {"constructions": ["sup:1", "sup:1,2", "sup:1,2,3", "dict:2", "or:1,2", "ff:2,1", "full", "empty"], "n": [4, 7]}},
    {"checker": "check_biased_iso", "params": {"p": "1/3"}, "corpus": {"random": "increasing", "count": 20, "n": [3, 8]}},
    {"checker": "check_logp_monotone", "params": {"p1": "1/4", "p2": ["1/3", "1/2"]}, "allow_indeterminate": true,
     "corpus": {"constructions": ["sup:1,2", "or:1,2", "ff:2,1"], "n": [4, 6]}},
    {"checker": "check_logp_monotone", "params": {"p1": "1/5", "p2": "2/3"}, "allow_indeterminate": true,
     "corpus": {"random": "increasing", "count": 10, "n": [3, 7]}},
    {"checker": "check_chernoff", "params": {"n": [10, 30, 60], "p": ["1/4", "1/2"], "delta": ["1/4", "1/2"]}, "allow_indeterminate": true},
    {"checker": "check_going_up", "params": {"p": ["1/4", "1/2"]},
     "corpus": {"constructions": ["level:2", "dict:1", "or:1,2"], "n": [4, 6], "slice": 2}},
    {"checker": "check_going_up", "params": {"p": "1/3"}, "corpus": {"random": "uniform", "count": 10, "n": [4, 7], "k": 2}},
    {"checker": "check_fkg_union", "params": {"p": ["1/4", "1/2"]},
     "corpus": {"constructions": [["dict:1", "dict:2"], ["dict:1", "dict:2", "dict:3"], ["dict:1", "dict:1"], ["sup:1,2", "dict:3"]], "n": [4, 6]}},
    {"checker": "check_fkg_union", "params": {"p": "1/3"}, "corpus": {"random": "intersecting", "count": 10, "n": [3, 7], "group": 2}},
    {"checker": "check_influence_duality", "params": {"p": ["1/4", "1/3"]},
     "corpus": {"constructions": ["dict:1", "or:1,2", "subcube:1,2/1", "level:2", "ff:2,2"], "n": [4, 6]}},
    {"checker": "check_influence_duality", "params": {"p": "2/7"}, "corpus": {"random": "increasing", "count": 10, "n": [3, 8]}},
    {"checker": "check_local_lym", "corpus": {"constructions": ["level:2", "dict:1", "or:1,2", "ff:2,1"], "n": [4, 7], "slice": 2}},
    {"checker": "check_local_lym", "corpus": {"random": "uniform", "count": 20, "n": [5, 8], "k": 3}},
    {"checker": "kk_min_upper_shadow", "params": {"n": [4, 5, 6], "k": [1, 2, 3]}},
    {"checker": "check_kk_chain", "params": {"n": [6, 8, 10], "k": [2, 3], "r": [1, 2], "t": [0, 1, 2]}},
    {"checker": "check_hilton", "params": {"t": [1, 2]},
     "corpus": {"constructions": [["dict:1", "dict:1"], ["or:1,2", "sup:1,2"]], "n": [5, 7], "slice": 2}},
    {"checker": "check_hilton", "params": {"t": [1, 2]}, "corpus": {"random": "cross-pair", "count": 10, "n": [5, 8], "k": 2, "l": 2}},
    {"checker": "hilton_extremal_probe", "params": {"n": [4, 5, 6], "k": [1, 2], "l": [1, 2], "t": [0, 1, 2]}},
    {"checker": "check_cross_combination", "params": {"c1": "2", "t0": 2},
     "corpus": {"constructions": [["sup:1,2", "partner:3"], ["empty", "partner:3"]], "n": 9, "slice": 3}},
    {"checker": "check_indicator_claim",
     "corpus": {"constructions": [["dict:1", "dict:2"], ["dict:1", "dict:2", "dict:3"], ["empty", "empty"]], "n": [4, 7], "slice": 2}},
    {"checker": "check_indicator_claim", "corpus": {"random": "uniform", "count": 20, "n": [4, 8], "k": 2, "group": 2}},
    {"checker": "verify_theorem", "params": {"theorem": "ekr", "n": [5, 6, 7], "k": 2}},
    {"checker": "verify_theorem", "params": {"theorem": "main-union", "n": [6, 7], "k": 2, "r": 2}},
    {"checker": "verify_theorem", "params": {"theorem": "matching", "n": 8, "k": 2, "r": 2}}
  ]
})json";
  return SuiteSpec::from_json(json::parse(text));
}

}  // namespace ekrlab
