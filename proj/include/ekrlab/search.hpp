#pragma once

// Exhaustive extremal search over k-uniform families on [n].
//
// A family is a set of vertices of the Kneser graph K(n, k) (edges join
// disjoint sets). "Union of r intersecting families" is r-colourability of the
// induced subgraph, "matching number <= s" is the absence of an (s+1)-clique.
// Both constraints are hereditary, so the search is include/exclude branching
// over vertices in colex order with a clique-cover bound.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "ekrlab/family.hpp"

namespace ekrlab {

inline constexpr int kSearchMaxGround = 14;
inline constexpr int kCanonicalMaxGround = 12;

// --- canonical forms ---------------------------------------------------------

/// The relabelling of F whose increasing member list is lexicographically
/// least (a longer list wins when one is a prefix of the other, i.e. the
/// missing entry counts as +infinity).
struct CanonicalForm {
  SetFamily family;

  std::vector<Mask> members() const { return family.members(); }
  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
  friend std::strong_ordering operator<=>(const CanonicalForm& a, const CanonicalForm& b);
};

/// Throws std::invalid_argument for n > 12.
CanonicalForm canonicalize(const SetFamily& f);

/// Image of F under i -> perm[i-1] (perm is a permutation of 1..n).
SetFamily relabel(const SetFamily& f, std::span<const int> perm);

// --- problems --------------------------------------------------------------

enum class ProblemKind { max_intersecting, max_union_intersecting, max_bounded_matching };

std::string to_string(ProblemKind k);

struct SearchLimits {
  std::uint64_t node_budget = 0;  ///< 0 = unlimited
  double time_budget_s = 0;       ///< 0 = unlimited
  int workers = 1;
  bool all_witnesses = false;
};

/// EKRLAB_WORKERS when set to a positive integer, else the hardware thread count.
int default_worker_count();

struct SearchProblem {
  ProblemKind kind = ProblemKind::max_intersecting;
  int n = 0;
  int k = 0;
  int bound = 1;  ///< r for unions, s for matchings, 1 for max_intersecting
  SearchLimits limits;

  /// n <= 14, 1 <= k <= n/2 + 2, 1 <= r, s <= 4; max_intersecting also needs 2k < n.
  void validate() const;
  nlohmann::json to_json() const;
};

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t prunes = 0;
  double wall_ms = 0;
};

struct SearchOutcome {
  std::uint64_t optimum = 0;
  /// Canonical forms in increasing order when n <= 12, raw families otherwise.
  std::vector<SetFamily> witnesses;
  bool witnesses_canonical = true;
  bool complete = false;
  SearchStats stats;

  /// Stats are left out unless asked for so that outcomes compare textually.
  nlohmann::json to_json(bool with_stats = true) const;
};

SearchOutcome solve(const SearchProblem& problem);

SearchOutcome max_intersecting(int n, int k, const SearchLimits& limits = {});
SearchOutcome max_union_intersecting(int n, int k, int r, const SearchLimits& limits = {});
SearchOutcome max_bounded_matching(int n, int k, int s, const SearchLimits& limits = {});

/// Whether the witness satisfies the problem's constraint, decided directly
/// (independent of the search engine).
bool satisfies_constraint(const SearchProblem& problem, const SetFamily& f);

// --- disjointness graph ----------------------------------------------------

/// Exact r-colourability of the graph on F's members with edges between
/// disjoint members. The empty set is disjoint from itself, so any F holding
/// it is not colourable.
bool disjointness_colorable(const SetFamily& f, int r);

/// Tries every assignment of members to r classes and tests each class with
/// is_intersecting. Exponential; meant for cross-checking small families.
bool union_of_intersecting_bruteforce(const SetFamily& f, int r);

// --- Frankl-Furedi crossover scan -----------------------------------------

struct CrossoverRow {
  int n = 0;
  int t = 0;
  std::uint64_t ff_size = 0;   ///< |FF(r,t) at level k|
  std::uint64_t or_bound = 0;  ///< C(n,k) - C(n-r,k)
  std::optional<std::uint64_t> search_optimum;
  bool complete = false;
  /// complete and the optimum is above or_bound
  bool beats_or_bound = false;
};

/// Rows for n in [n_lo, n_hi], t in [t_lo, t_hi] with r + t <= n. The search
/// runs once per n (skipped when `search` is false or the problem is out of
/// the search limits).
std::vector<CrossoverRow> ff_crossover_scan(int k, int r, int n_lo, int n_hi, int t_lo, int t_hi,
                                            const SearchLimits& limits, bool search = true);

nlohmann::json to_json(const CrossoverRow& row);

}  // namespace ekrlab
