#include "ekrlab/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "ekrlab/rational.hpp"

namespace ekrlab {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Fixed-width dynamic bitset over Kneser-graph vertices.
class Bits {
 public:
  Bits() = default;
  explicit Bits(std::size_t n) : w_((n + 63) / 64, 0) {}

  void set(std::size_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1U; }

  bool none() const {
    return std::all_of(w_.begin(), w_.end(), [](std::uint64_t w) { return w == 0; });
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  int first() const {
    for (std::size_t i = 0; i < w_.size(); ++i) {
      if (w_[i] != 0) return static_cast<int>((i << 6) + static_cast<std::size_t>(std::countr_zero(w_[i])));
    }
    return -1;
  }
  bool intersects(const Bits& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i) {
      if (w_[i] & o.w_[i]) return true;
    }
    return false;
  }
  Bits& operator&=(const Bits& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  Bits& and_not(const Bits& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
    return *this;
  }
  friend Bits operator&(Bits a, const Bits& b) { return a &= b; }

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t i = 0; i < w_.size(); ++i) {
      for (std::uint64_t w = w_[i]; w != 0; w &= w - 1) fn(static_cast<int>((i << 6) + static_cast<std::size_t>(std::countr_zero(w))));
    }
  }

 private:
  std::vector<std::uint64_t> w_;
};

std::vector<Mask> level_masks(int n, int k) {
  std::vector<Mask> out;
  const Mask limit = Mask{1} << n;
  if (k == 0) return {0};
  for (Mask m = (Mask{1} << k) - 1; m < limit;) {
    out.push_back(m);
    const Mask t = m | (m - 1);
    m = (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(m) + 1));
  }
  return out;
}

// r-colourability of a small graph given as adjacency lists over 0..m-1.
class Colorer {
 public:
  Colorer(const std::vector<std::vector<int>>& adj, int r) : adj_(adj), r_(r), color_(adj.size(), -1) {}

  bool run() {
    const int m = static_cast<int>(adj_.size());
    if (r_ == 1) {
      return std::all_of(adj_.begin(), adj_.end(), [](const auto& a) { return a.empty(); });
    }
    if (r_ == 2) return bipartite();
    order_.resize(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) order_[static_cast<std::size_t>(i)] = i;
    std::stable_sort(order_.begin(), order_.end(),
                     [&](int a, int b) { return adj_[static_cast<std::size_t>(a)].size() > adj_[static_cast<std::size_t>(b)].size(); });
    return assign(0, 0);
  }

 private:
  bool bipartite() {
    std::vector<int> queue;
    for (std::size_t s = 0; s < adj_.size(); ++s) {
      if (color_[s] >= 0) continue;
      color_[s] = 0;
      queue.assign(1, static_cast<int>(s));
      for (std::size_t h = 0; h < queue.size(); ++h) {
        const int x = queue[h];
        for (int y : adj_[static_cast<std::size_t>(x)]) {
          auto& cy = color_[static_cast<std::size_t>(y)];
          if (cy < 0) {
            cy = 1 - color_[static_cast<std::size_t>(x)];
            queue.push_back(y);
          } else if (cy == color_[static_cast<std::size_t>(x)]) {
            return false;
          }
        }
      }
    }
    return true;
  }

  bool assign(std::size_t pos, int used) {
    if (pos == order_.size()) return true;
    const int x = order_[pos];
    const int limit = std::min(r_, used + 1);
    for (int c = 0; c < limit; ++c) {
      const bool clash = std::any_of(adj_[static_cast<std::size_t>(x)].begin(), adj_[static_cast<std::size_t>(x)].end(),
                                     [&](int y) { return color_[static_cast<std::size_t>(y)] == c; });
      if (clash) continue;
      color_[static_cast<std::size_t>(x)] = c;
      if (assign(pos + 1, std::max(used, c + 1))) return true;
      color_[static_cast<std::size_t>(x)] = -1;
    }
    return false;
  }

  const std::vector<std::vector<int>>& adj_;
  int r_;
  std::vector<int> color_;
  std::vector<int> order_;
};

bool colorable_masks(std::span<const Mask> sets, int r) {
  std::vector<std::vector<int>> adj(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (sets[i] == 0) return false;  // the empty set is disjoint from itself
    for (std::size_t j = 0; j < i; ++j) {
      if ((sets[i] & sets[j]) == 0) {
        adj[i].push_back(static_cast<int>(j));
        adj[j].push_back(static_cast<int>(i));
      }
    }
  }
  return Colorer(adj, r).run();
}

struct UnitResult {
  bool found = false;
  std::uint64_t best = 0;
  std::vector<std::vector<int>> witnesses;
};

class Engine {
 public:
  explicit Engine(const SearchProblem& p) : p_(p), verts_(level_masks(p.n, p.k)) {
    const std::size_t nv = verts_.size();
    adj_.assign(nv, Bits(nv));
    for (std::size_t i = 0; i < nv; ++i) {
      for (std::size_t j = 0; j < nv; ++j) {
        if ((verts_[i] & verts_[j]) == 0) adj_[i].set(j);
      }
    }
    workers_ = std::max(1, p.limits.workers);
    // Ties must survive pruning whenever the reported witness could otherwise
    // depend on which unit finds an optimum first.
    strict_ = !p.limits.all_witnesses && workers_ == 1;
    cap_ = static_cast<std::uint64_t>(p.kind == ProblemKind::max_intersecting ? 1 : p.bound);
  }

  SearchOutcome run() {
    const auto start = Clock::now();
    start_ = start;
    const std::size_t nv = verts_.size();

    // Any non-empty family can be relabelled to contain {1, ..., k}.
    Unit root;
    root.chosen = {0};
    root.in_f = Bits(nv);
    root.in_f.set(0);
    Bits all(nv);
    for (std::size_t i = 1; i < nv; ++i) all.set(i);
    root.cand = filter_after({}, Bits(nv), 0, all);

    std::vector<Unit> units;
    split(root, workers_ == 1 ? 1 : static_cast<std::size_t>(workers_) * 8, units);
    std::vector<UnitResult> results(units.size());

    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (std::size_t i; (i = next.fetch_add(1)) < units.size();) {
        Unit u = std::move(units[i]);
        dfs(u.chosen, u.in_f, std::move(u.cand), results[i]);
      }
    };
    if (workers_ == 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (int w = 0; w < workers_; ++w) pool.emplace_back(work);
      for (auto& t : pool) t.join();
    }

    SearchOutcome out;
    out.complete = !aborted_.load();
    out.stats.nodes = nodes_.load();
    out.stats.prunes = prunes_.load();
    for (const auto& r : results) {
      if (r.found) out.optimum = std::max(out.optimum, r.best);
    }
    const GroundSet g(p_.n);
    std::vector<SetFamily> raw;
    for (const auto& r : results) {
      if (!r.found || r.best != out.optimum) continue;
      for (const auto& w : r.witnesses) {
        std::vector<Mask> masks;
        for (int v : w) masks.push_back(verts_[static_cast<std::size_t>(v)]);
        raw.push_back(build_from_masks(g, masks));
        if (!p_.limits.all_witnesses) break;
      }
      if (!p_.limits.all_witnesses && !raw.empty()) break;
    }
    if (p_.n <= kCanonicalMaxGround) {
      std::vector<CanonicalForm> forms;
      for (const auto& f : raw) forms.push_back(canonicalize(f));
      std::sort(forms.begin(), forms.end());
      forms.erase(std::unique(forms.begin(), forms.end()), forms.end());
      for (auto& c : forms) out.witnesses.push_back(std::move(c.family));
    } else {
      out.witnesses_canonical = false;
      out.witnesses = std::move(raw);
    }
    out.stats.wall_ms = elapsed_ms(start);
    return out;
  }

 private:
  struct Unit {
    std::vector<int> chosen;
    Bits in_f;
    Bits cand;
  };

  // Candidates of `cand` that stay feasible once v joins the chosen vertices.
  Bits filter_after(const std::vector<int>& chosen, const Bits& in_f, int v, const Bits& cand) const {
    const auto& nv = adj_[static_cast<std::size_t>(v)];
    if (cap_ == 1) {
      Bits out = cand;
      return out.and_not(nv);
    }
    Bits out = cand;
    if (p_.kind == ProblemKind::max_bounded_matching) {
      // Only cliques through both v and w are new.
      (cand & nv).for_each([&](int w) {
        Bits common = nv & adj_[static_cast<std::size_t>(w)];
        common &= in_f;
        if (has_clique(common, static_cast<int>(cap_) - 1)) out.reset(static_cast<std::size_t>(w));
      });
      return out;
    }
    const bool v_linked = nv.intersects(in_f);
    std::vector<int> base = chosen;
    base.push_back(v);
    cand.for_each([&](int w) {
      const auto& nw = adj_[static_cast<std::size_t>(w)];
      const bool w_linked = nw.intersects(in_f) || nw.test(static_cast<std::size_t>(v));
      if (!w_linked) return;
      if (!v_linked && !nw.test(static_cast<std::size_t>(v))) return;
      base.push_back(w);
      if (!colorable(base)) out.reset(static_cast<std::size_t>(w));
      base.pop_back();
    });
    return out;
  }

  bool has_clique(const Bits& pool, int need) const {
    if (need <= 0) return true;
    if (pool.count() < static_cast<std::size_t>(need)) return false;
    bool found = false;
    Bits rest = pool;
    pool.for_each([&](int x) {
      if (found) return;
      rest.reset(static_cast<std::size_t>(x));
      if (has_clique(rest & adj_[static_cast<std::size_t>(x)], need - 1)) found = true;
    });
    return found;
  }

  bool colorable(const std::vector<int>& vs) const {
    std::vector<std::vector<int>> adj(vs.size());
    for (std::size_t i = 0; i < vs.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (adj_[static_cast<std::size_t>(vs[i])].test(static_cast<std::size_t>(vs[j]))) {
          adj[i].push_back(static_cast<int>(j));
          adj[j].push_back(static_cast<int>(i));
        }
      }
    }
    return Colorer(adj, static_cast<int>(cap_)).run();
  }

  // Greedy partition of the candidates into cliques; each clique contributes
  // at most cap_ vertices.
  std::uint64_t clique_bound(const Bits& cand) const {
    Bits rem = cand;
    std::uint64_t total = 0;
    for (int v; (v = rem.first()) >= 0;) {
      rem.reset(static_cast<std::size_t>(v));
      std::uint64_t size = 1;
      Bits p = rem & adj_[static_cast<std::size_t>(v)];
      for (int w; (w = p.first()) >= 0;) {
        ++size;
        rem.reset(static_cast<std::size_t>(w));
        p.reset(static_cast<std::size_t>(w));
        p &= adj_[static_cast<std::size_t>(w)];
      }
      total += std::min(size, cap_);
    }
    return total;
  }

  // Expands nodes breadth-first (include before exclude) until there are
  // enough independent subtrees; the order of `out` is DFS order.
  void split(Unit root, std::size_t target, std::vector<Unit>& out) const {
    std::vector<Unit> level;
    level.push_back(std::move(root));
    while (level.size() < target) {
      std::vector<Unit> next;
      bool grew = false;
      for (auto& u : level) {
        const int v = u.cand.first();
        if (v < 0) {
          next.push_back(std::move(u));
          continue;
        }
        grew = true;
        Bits rest = u.cand;
        rest.reset(static_cast<std::size_t>(v));
        Unit inc{u.chosen, u.in_f, filter_after(u.chosen, u.in_f, v, rest)};
        inc.chosen.push_back(v);
        inc.in_f.set(static_cast<std::size_t>(v));
        next.push_back(std::move(inc));
        u.cand = std::move(rest);
        next.push_back(std::move(u));
      }
      level = std::move(next);
      if (!grew) break;
    }
    out = std::move(level);
  }

  bool out_of_budget() {
    const std::uint64_t n = nodes_.fetch_add(1, std::memory_order_relaxed) + 1;
    if (p_.limits.node_budget != 0 && n > p_.limits.node_budget) aborted_ = true;
    if (p_.limits.time_budget_s > 0 && (n & 1023) == 0 && elapsed_ms(start_) > p_.limits.time_budget_s * 1000) {
      aborted_ = true;
    }
    return aborted_.load(std::memory_order_relaxed);
  }

  void record(const std::vector<int>& chosen, UnitResult& out) {
    const std::uint64_t size = chosen.size();
    if (!out.found || size > out.best) {
      out.found = true;
      out.best = size;
      out.witnesses.assign(1, chosen);
    } else if (size == out.best && p_.limits.all_witnesses) {
      out.witnesses.push_back(chosen);
    }
    std::uint64_t cur = best_.load();
    while (size > cur && !best_.compare_exchange_weak(cur, size)) {
    }
  }

  void dfs(std::vector<int>& chosen, Bits& in_f, Bits cand, UnitResult& out) {
    if (out_of_budget()) return;
    if (cand.none()) {
      record(chosen, out);
      return;
    }
    const std::uint64_t bound = chosen.size() + clique_bound(cand);
    const std::uint64_t best = best_.load();
    if (bound < best || (strict_ && bound <= best)) {
      prunes_.fetch_add(1, std::memory_order_relaxed);
      return;
    }
    const int v = cand.first();
    cand.reset(static_cast<std::size_t>(v));
    {
      Bits inc = filter_after(chosen, in_f, v, cand);
      chosen.push_back(v);
      in_f.set(static_cast<std::size_t>(v));
      dfs(chosen, in_f, std::move(inc), out);
      in_f.reset(static_cast<std::size_t>(v));
      chosen.pop_back();
    }
    dfs(chosen, in_f, std::move(cand), out);
  }

  const SearchProblem& p_;
  std::vector<Mask> verts_;
  std::vector<Bits> adj_;
  int workers_ = 1;
  bool strict_ = true;
  std::uint64_t cap_ = 1;
  Clock::time_point start_;
  std::atomic<std::uint64_t> best_{0};
  std::atomic<std::uint64_t> nodes_{0};
  std::atomic<std::uint64_t> prunes_{0};
  std::atomic<bool> aborted_{false};
};

// Lexicographic comparison where running out counts as +infinity.
int compare_extension(const std::vector<Mask>& a, const std::vector<Mask>& b) {
  const std::size_t m = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < m; ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  if (a.size() == b.size()) return 0;
  return a.size() > b.size() ? -1 : 1;
}

Mask swap_bits(Mask m, int a, int b) {
  const Mask ba = (m >> a) & 1U;
  const Mask bb = (m >> b) & 1U;
  if (ba == bb) return m;
  return m ^ ((Mask{1} << a) | (Mask{1} << b));
}

}  // namespace

std::strong_ordering operator<=>(const CanonicalForm& a, const CanonicalForm& b) {
  if (auto c = a.family.n() <=> b.family.n(); c != 0) return c;
  const auto ma = a.family.members();
  const auto mb = b.family.members();
  return std::lexicographical_compare_three_way(ma.begin(), ma.end(), mb.begin(), mb.end());
}

CanonicalForm canonicalize(const SetFamily& f) {
  const int n = f.n();
  if (n > kCanonicalMaxGround) throw std::invalid_argument("canonicalize supports n <= 12");

  // Transposition twins: swapping them fixes F, so only one needs trying.
  std::vector<std::vector<bool>> twin(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), false));
  const auto members = f.members();
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const bool fixed =
          std::all_of(members.begin(), members.end(), [&](Mask m) { return f.contains(swap_bits(m, a, b)); });
      twin[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = fixed;
      twin[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = fixed;
    }
  }

  struct State {
    std::vector<int> order;  // order[j] = old bit placed at new bit j
    Mask used = 0;
  };
  std::vector<State> ties{State{}};
  std::vector<Mask> prefix;
  if (f.contains(0)) prefix.push_back(0);

  std::vector<Mask> ext;
  std::vector<Mask> best;
  for (int j = 0; j < n; ++j) {
    std::vector<State> next;
    bool have = false;
    for (const auto& st : ties) {
      for (int e = 0; e < n; ++e) {
        if ((st.used >> e) & 1U) continue;
        bool shadowed = false;
        for (int e2 = 0; e2 < e && !shadowed; ++e2) {
          shadowed = !((st.used >> e2) & 1U) && twin[static_cast<std::size_t>(e)][static_cast<std::size_t>(e2)];
        }
        if (shadowed) continue;
        ext.clear();
        for (Mask t = 0; t < (Mask{1} << j); ++t) {
          Mask old = Mask{1} << e;
          for (Mask rest = t; rest != 0; rest &= rest - 1) old |= Mask{1} << st.order[static_cast<std::size_t>(std::countr_zero(rest))];
          if (f.contains(old)) ext.push_back(t | (Mask{1} << j));
        }
        const int c = have ? compare_extension(ext, best) : -1;
        if (c > 0) continue;
        if (c < 0) {
          best = ext;
          next.clear();
          have = true;
        }
        State s = st;
        s.order.push_back(e);
        s.used |= Mask{1} << e;
        next.push_back(std::move(s));
      }
    }
    prefix.insert(prefix.end(), best.begin(), best.end());
    ties = std::move(next);
  }
  return CanonicalForm{build_from_masks(f.ground(), prefix)};
}

SetFamily relabel(const SetFamily& f, std::span<const int> perm) {
  const int n = f.n();
  if (static_cast<int>(perm.size()) != n) throw std::invalid_argument("permutation length must equal n");
  Mask seen = 0;
  for (int x : perm) {
    if (x < 1 || x > n || ((seen >> (x - 1)) & 1U)) throw std::invalid_argument("not a permutation of 1..n");
    seen |= Mask{1} << (x - 1);
  }
  FamilyBuilder b(f.ground());
  f.for_each_member([&](Mask m) {
    Mask image = 0;
    for (Mask rest = m; rest != 0; rest &= rest - 1) image |= Mask{1} << (perm[static_cast<std::size_t>(std::countr_zero(rest))] - 1);
    b.add(image);
  });
  return std::move(b).build();
}

std::string to_string(ProblemKind k) {
  switch (k) {
    case ProblemKind::max_intersecting: return "max-intersecting";
    case ProblemKind::max_union_intersecting: return "max-union-intersecting";
    case ProblemKind::max_bounded_matching: return "max-bounded-matching";
  }
  return "?";
}

int default_worker_count() {
  if (const char* env = std::getenv("EKRLAB_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 256) return static_cast<int>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

void SearchProblem::validate() const {
  if (n < 1 || n > kSearchMaxGround) throw std::invalid_argument("search requires 1 <= n <= 14");
  if (k < 1 || k > n || 2 * k > n + 4) throw std::invalid_argument("search requires 1 <= k <= min(n, n/2 + 2)");
  if (bound < 1 || bound > 4) throw std::invalid_argument("r and s must lie in 1..4");
  if (kind == ProblemKind::max_intersecting && (bound != 1 || 2 * k >= n)) {
    throw std::invalid_argument("max_intersecting requires k < n/2");
  }
  if (limits.workers < 1) throw std::invalid_argument("workers must be positive");
  if (limits.time_budget_s < 0) throw std::invalid_argument("time budget must be non-negative");
}

nlohmann::json SearchProblem::to_json() const {
  nlohmann::json j = {{"kind", to_string(kind)}, {"n", n}, {"k", k}};
  if (kind == ProblemKind::max_union_intersecting) j["r"] = bound;
  if (kind == ProblemKind::max_bounded_matching) j["s"] = bound;
  j["limits"] = {{"node_budget", limits.node_budget},
                 {"time_budget_s", limits.time_budget_s},
                 {"all_witnesses", limits.all_witnesses}};
  return j;
}

nlohmann::json SearchOutcome::to_json(bool with_stats) const {
  nlohmann::json ws = nlohmann::json::array();
  for (const auto& w : witnesses) {
    nlohmann::json sets = nlohmann::json::array();
    w.for_each_member([&](Mask m) { sets.push_back(format_set(m)); });
    ws.push_back(sets);
  }
  nlohmann::json j = {{"optimum", optimum}, {"complete", complete}, {"witnesses_canonical", witnesses_canonical}, {"witnesses", ws}};
  if (with_stats) j["stats"] = {{"nodes", stats.nodes}, {"prunes", stats.prunes}, {"wall_ms", stats.wall_ms}};
  return j;
}

SearchOutcome solve(const SearchProblem& problem) {
  problem.validate();
  Engine engine(problem);
  return engine.run();
}

SearchOutcome max_intersecting(int n, int k, const SearchLimits& limits) {
  return solve(SearchProblem{ProblemKind::max_intersecting, n, k, 1, limits});
}

SearchOutcome max_union_intersecting(int n, int k, int r, const SearchLimits& limits) {
  return solve(SearchProblem{ProblemKind::max_union_intersecting, n, k, r, limits});
}

SearchOutcome max_bounded_matching(int n, int k, int s, const SearchLimits& limits) {
  return solve(SearchProblem{ProblemKind::max_bounded_matching, n, k, s, limits});
}

bool satisfies_constraint(const SearchProblem& problem, const SetFamily& f) {
  if (f.n() != problem.n) return false;
  if (!f.empty() && !f.is_uniform(problem.k)) return false;
  switch (problem.kind) {
    case ProblemKind::max_intersecting: return is_intersecting(f);
    case ProblemKind::max_union_intersecting: return disjointness_colorable(f, problem.bound);
    case ProblemKind::max_bounded_matching: return matching_number(f) <= problem.bound;
  }
  return false;
}

bool disjointness_colorable(const SetFamily& f, int r) {
  if (r < 1) throw std::invalid_argument("r must be positive");
  const auto members = f.members();
  return colorable_masks(members, r);
}

bool union_of_intersecting_bruteforce(const SetFamily& f, int r) {
  if (r < 1) throw std::invalid_argument("r must be positive");
  const auto members = f.members();
  double total = 1;
  for (std::size_t i = 0; i < members.size(); ++i) total *= r;
  if (total > static_cast<double>(1 << 22)) throw std::invalid_argument("too many assignments for brute force");
  std::vector<int> cls(members.size(), 0);
  while (true) {
    std::vector<FamilyBuilder> parts(static_cast<std::size_t>(r), FamilyBuilder(f.ground()));
    for (std::size_t i = 0; i < members.size(); ++i) parts[static_cast<std::size_t>(cls[i])].add(members[i]);
    bool ok = true;
    for (auto& p : parts) {
      if (!ok) break;
      ok = is_intersecting(std::move(p).build());
    }
    if (ok) return true;
    std::size_t i = 0;
    while (i < cls.size() && ++cls[i] == r) cls[i++] = 0;
    if (i == cls.size()) return false;
  }
}

std::vector<CrossoverRow> ff_crossover_scan(int k, int r, int n_lo, int n_hi, int t_lo, int t_hi,
                                            const SearchLimits& limits, bool search) {
  if (k < 1 || r < 1 || t_lo < 0 || n_lo > n_hi || t_lo > t_hi) throw std::invalid_argument("bad scan ranges");
  if (n_lo < 1 || n_hi > kDefaultMaxGround) throw std::invalid_argument("scan needs 1 <= n <= 24");
  std::vector<CrossoverRow> rows;
  for (int n = n_lo; n <= n_hi; ++n) {
    if (k > n) continue;
    std::optional<SearchOutcome> found;
    if (search) {
      const SearchProblem p{ProblemKind::max_union_intersecting, n, k, r, limits};
      bool in_limits = true;
      try {
        p.validate();
      } catch (const std::invalid_argument&) {
        in_limits = false;
      }
      if (in_limits) found = solve(p);
    }
    const GroundSet g(n);
    for (int t = t_lo; t <= t_hi; ++t) {
      if (r + t > n) break;
      CrossoverRow row;
      row.n = n;
      row.t = t;
      row.ff_size = slice(construct(g, construction::FranklFuredi{r, t}), k).size();
      row.or_bound = BigInt(binom(n, k) - binom(n - r, k)).get_ui();
      if (found) {
        row.search_optimum = found->optimum;
        row.complete = found->complete;
        row.beats_or_bound = found->complete && found->optimum > row.or_bound;
      }
      rows.push_back(row);
    }
  }
  return rows;
}

nlohmann::json to_json(const CrossoverRow& row) {
  nlohmann::json j = {{"n", row.n}, {"t", row.t}, {"ff_size", row.ff_size}, {"or_bound", row.or_bound}};
  j["search_optimum"] = row.search_optimum ? nlohmann::json(*row.search_optimum) : nlohmann::json(nullptr);
  j["complete"] = row.complete;
  j["beats_or_bound"] = row.beats_or_bound;
  return j;
}

}  // namespace ekrlab
