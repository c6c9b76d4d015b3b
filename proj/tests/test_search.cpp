#include <doctest.h>

#include <algorithm>
#include <functional>

#include "ekrlab/search.hpp"
#include "oracles.hpp"

using namespace ekrlab;

namespace {

struct Lcg {
  std::uint64_t s;
  std::uint64_t next() {
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    return s >> 33;
  }
};

SetFamily random_family(Lcg& g, int n, int k) {
  FamilyBuilder b{GroundSet(n)};
  for (Mask m : oracle::level(n, k)) {
    if (g.next() % 3 == 0) b.add(m);
  }
  return std::move(b).build();
}

/// Largest subfamily of level k accepted by `ok`, by enumerating all of them.
std::uint64_t brute_optimum(int n, int k, const std::function<bool(const SetFamily&)>& ok) {
  const auto lv = oracle::level(n, k);
  std::uint64_t best = 0;
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << lv.size()); ++pick) {
    const auto size = static_cast<std::uint64_t>(std::popcount(pick));
    if (size <= best) continue;
    std::vector<Mask> ms;
    for (std::size_t i = 0; i < lv.size(); ++i) {
      if ((pick >> i) & 1U) ms.push_back(lv[i]);
    }
    if (ok(build_from_masks(GroundSet(n), ms))) best = size;
  }
  return best;
}

}  // namespace

TEST_CASE("canonical form against all relabellings") {
  Lcg lcg{3};
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 5;
    const int k = 1 + trial % (n - 1);
    const auto f = random_family(lcg, n, k);
    CHECK(canonicalize(f).members() == oracle::canonical_members(f));
  }
}

TEST_CASE("canonical form is relabelling invariant") {
  Lcg lcg{17};
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 4 + trial % 5;
    const auto f = random_family(lcg, n, 2 + trial % 2);
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 1);
    for (std::size_t i = perm.size() - 1; i > 0; --i) std::swap(perm[i], perm[lcg.next() % (i + 1)]);
    CHECK(canonicalize(relabel(f, perm)) == canonicalize(f));
  }
  const GroundSet g(5);
  CHECK(canonicalize(construct(g, construction::OrFamily{{2, 5}})) ==
        canonicalize(construct(g, construction::OrFamily{{1, 2}})));
  CHECK(canonicalize(construct(g, construction::Dictatorship{3})).family ==
        construct(g, construction::Dictatorship{1}));
  CHECK_THROWS_AS(canonicalize(SetFamily(GroundSet(13))), std::invalid_argument);
}

TEST_CASE("searches match enumeration on tiny cases") {
  for (auto [n, k] : {std::pair{4, 2}, {5, 2}, {6, 2}, {5, 1}}) {
    INFO("n=" << n << " k=" << k);
    for (int r = 1; r <= 2; ++r) {
      const auto expect = brute_optimum(n, k, [&](const SetFamily& f) {
        return oracle::union_of_intersecting(f.members(), r);
      });
      CHECK(max_union_intersecting(n, k, r).optimum == expect);
    }
    for (int s = 1; s <= 2; ++s) {
      const auto expect = brute_optimum(n, k, [&](const SetFamily& f) { return oracle::matching_number(f) <= s; });
      CHECK(max_bounded_matching(n, k, s).optimum == expect);
    }
  }
  CHECK(max_intersecting(5, 2).optimum == 4);
}

TEST_CASE("EKR optimum and witnesses") {
  for (auto [n, k] : {std::pair{5, 2}, {6, 2}, {7, 2}, {7, 3}}) {
    SearchLimits lim;
    lim.all_witnesses = true;
    const auto out = max_intersecting(n, k, lim);
    CHECK(out.complete);
    CHECK(to_big(out.optimum) == binom(n - 1, k - 1));
    REQUIRE(out.witnesses.size() == 1);
    CHECK(canonicalize(slice(construct(GroundSet(n), construction::Dictatorship{1}), k)).family == out.witnesses[0]);
    CHECK(out.witnesses[0].size() == out.optimum);
    CHECK(is_intersecting(out.witnesses[0]));
  }
}

TEST_CASE("r = 1 union is the intersecting problem") {
  for (auto [n, k] : {std::pair{5, 2}, {7, 2}, {7, 3}, {8, 3}}) {
    CHECK(max_union_intersecting(n, k, 1).optimum == max_intersecting(n, k).optimum);
  }
}

TEST_CASE("monotone in r and n") {
  std::uint64_t prev = 0;
  for (int r = 1; r <= 3; ++r) {
    const auto opt = max_union_intersecting(6, 2, r).optimum;
    CHECK(opt >= prev);
    prev = opt;
  }
  CHECK(max_union_intersecting(7, 2, 2).optimum >= max_union_intersecting(6, 2, 2).optimum);
  CHECK(max_bounded_matching(7, 2, 2).optimum >= max_bounded_matching(6, 2, 2).optimum);
}

TEST_CASE("witnesses satisfy their constraints") {
  SearchLimits lim;
  lim.all_witnesses = true;
  for (int r = 1; r <= 3; ++r) {
    SearchProblem p{ProblemKind::max_union_intersecting, 7, 2, r, lim};
    const auto out = solve(p);
    for (const auto& w : out.witnesses) {
      CHECK(w.size() == out.optimum);
      CHECK(w.is_uniform(2));
      CHECK(satisfies_constraint(p, w));
      if (w.size() <= 12) CHECK(union_of_intersecting_bruteforce(w, r));
      CHECK(oracle::union_of_intersecting(w.members(), r));
    }
  }
  SearchProblem m{ProblemKind::max_bounded_matching, 8, 2, 2, lim};
  const auto out = solve(m);
  CHECK(out.optimum == 13);
  for (const auto& w : out.witnesses) CHECK(oracle::matching_number(w) <= 2);
}

TEST_CASE("disjointness colouring against assignment search") {
  Lcg lcg{41};
  for (int trial = 0; trial < 80; ++trial) {
    const int n = 3 + trial % 4;
    const int k = 1 + trial % 2;
    const int r = 1 + trial % 3;
    const auto f = random_family(lcg, n, k);
    if (f.size() > 12) continue;
    const bool expect = oracle::union_of_intersecting(f.members(), r);
    CHECK(disjointness_colorable(f, r) == expect);
    CHECK(union_of_intersecting_bruteforce(f, r) == expect);
  }
  CHECK_FALSE(disjointness_colorable(build(GroundSet(3), {{}, {1}}), 3));
}

TEST_CASE("budgets cut the search short") {
  SearchLimits lim;
  lim.node_budget = 50;
  const auto out = max_union_intersecting(9, 3, 2, lim);
  CHECK_FALSE(out.complete);
  CHECK(out.stats.nodes < 1000);
}

TEST_CASE("worker count does not change the outcome") {
  SearchLimits one;
  one.all_witnesses = true;
  SearchLimits many = one;
  many.workers = 3;
  for (auto [n, k, r] : {std::tuple{7, 2, 2}, {8, 2, 2}, {7, 2, 3}}) {
    CHECK(max_union_intersecting(n, k, r, one).to_json(false) == max_union_intersecting(n, k, r, many).to_json(false));
  }
  SearchLimits plain_many;
  plain_many.workers = 3;
  CHECK(max_bounded_matching(8, 2, 2).to_json(false) == max_bounded_matching(8, 2, 2, plain_many).to_json(false));
}

TEST_CASE("problem validation") {
  CHECK_THROWS_AS((SearchProblem{ProblemKind::max_intersecting, 15, 2, 1, {}}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((SearchProblem{ProblemKind::max_intersecting, 6, 3, 1, {}}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((SearchProblem{ProblemKind::max_union_intersecting, 6, 2, 5, {}}.validate()), std::invalid_argument);
  CHECK_NOTHROW((SearchProblem{ProblemKind::max_union_intersecting, 6, 3, 2, {}}.validate()));
}

TEST_CASE("crossover scan rows") {
  const auto rows = ff_crossover_scan(3, 2, 10, 10, 2, 2, {}, false);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].ff_size == 49);
  CHECK(rows[0].or_bound == 64);
  CHECK_FALSE(rows[0].search_optimum.has_value());
}
