#include <doctest.h>

#include "ekrlab/measure.hpp"
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

SetFamily random_increasing(Lcg& g, int n) {
  FamilyBuilder b{GroundSet(n)};
  const int seeds = 1 + static_cast<int>(g.next() % 3);
  for (int i = 0; i < seeds; ++i) b.add(static_cast<Mask>(g.next()) & GroundSet(n).full_mask());
  return up_closure(std::move(b).build());
}

const Rational kPs[] = {Rational(0), Rational(1, 5), Rational(1, 3), Rational(1, 2), Rational(3, 4), Rational(1)};

}  // namespace

TEST_CASE("mu of named families") {
  const GroundSet g(6);
  CHECK(mu(construct(g, construction::Dictatorship{2}), Rational(1, 3)) == Rational(1, 3));
  CHECK(mu(construct(g, construction::OrFamily{{1, 2, 3}}), Rational(1, 2)) == Rational(7, 8));
  CHECK(mu(construct(g, construction::Subcube{{1, 2}, {1}}), Rational(1, 4)) == Rational(3, 16));
  CHECK(mu(construct(g, construction::Full{}), Rational(2, 7)) == 1);
  CHECK(mu(SetFamily(g), Rational(2, 7)) == 0);
  CHECK_THROWS_AS(mu(SetFamily(g), Rational(3, 2)), std::invalid_argument);
}

TEST_CASE("measure, influence and derivative against term-by-term sums") {
  Lcg lcg{11};
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 7;
    const auto f = random_increasing(lcg, n);
    for (const auto& p : kPs) {
      CHECK(mu(f, p) == oracle::mu(f, p));
      CHECK(total_influence(f, p) == oracle::total_influence(f, p));
      CHECK(derivative_at(f, p) == oracle::derivative(f, p));
      CHECK(measure_polynomial(f).evaluate(p) == oracle::mu(f, p));
      for (int i = 1; i <= n; ++i) CHECK(influence(f, i, p) == oracle::influence(f, i, p));
    }
    CHECK(integral_of_influence(f, Rational(1, 5), Rational(1, 2)) ==
          oracle::integral_of_total_influence(f, Rational(1, 5), Rational(1, 2)));
  }
}

TEST_CASE("Russo and the integral identity") {
  Lcg lcg{5};
  for (int trial = 0; trial < 40; ++trial) {
    const auto f = random_increasing(lcg, 2 + trial % 6);
    for (const auto& p : kPs) {
      CHECK(check_russo(f, p).holds());
      CHECK(check_integral_identity(f, p).holds());
      CHECK(check_influence_duality(f, p).holds());
    }
  }
  const GroundSet g(3);
  CHECK_THROWS_AS(check_russo(build(g, {{1}}), Rational(1, 2)), std::invalid_argument);
}

TEST_CASE("mu is monotone in p for increasing families") {
  Lcg lcg{21};
  for (int trial = 0; trial < 30; ++trial) {
    const auto f = random_increasing(lcg, 1 + trial % 6);
    for (std::size_t i = 0; i + 1 < std::size(kPs); ++i) CHECK(mu(f, kPs[i]) <= mu(f, kPs[i + 1]));
  }
}

TEST_CASE("measure polynomial expansion") {
  const GroundSet g(4);
  const auto f = construct(g, construction::OrFamily{{1, 2}});
  // 1 - (1-q)^2 = 2q - q^2
  const Polynomial poly = measure_polynomial(f).expand();
  CHECK(poly.evaluate(Rational(1, 3)) == Rational(5, 9));
  CHECK(poly.coefficients().at(1) == 2);
  CHECK(poly.coefficients().at(2) == -1);
  CHECK(poly.derivative().evaluate(Rational(1, 2)) == 1);
  CHECK(poly.integrate(0, 1) == Rational(2, 3));
}

TEST_CASE("biased EKR") {
  const GroundSet g(5);
  const auto d = construct(g, construction::Dictatorship{4});
  auto v = check_biased_ekr(d, Rational(1, 3));
  CHECK(v.holds());
  CHECK(v.equality);
  v = check_biased_ekr(construct(g, construction::SupersetFamily{{1, 2}}), Rational(1, 3));
  CHECK(v.holds());
  CHECK_FALSE(v.equality);
  // at 1/2 a non-dictatorship may reach equality
  CHECK(check_biased_ekr(build(g, {{1, 2}, {1, 3}, {2, 3}}), Rational(1, 2)).holds());
  CHECK_THROWS_AS(check_biased_ekr(build(g, {{1}, {2}}), Rational(1, 3)), std::invalid_argument);
  CHECK_THROWS_AS(check_biased_ekr(d, Rational(2, 3)), std::invalid_argument);
}

TEST_CASE("Harris and FKG union") {
  const GroundSet g(4);
  const auto a = construct(g, construction::Dictatorship{1});
  const auto b = construct(g, construction::Dictatorship{2});
  auto v = check_harris(a, b, Rational(1, 3));
  CHECK(v.holds());
  CHECK(v.equality);  // independent coordinates
  CHECK(check_harris(a, a, Rational(1, 3)).holds());
  const std::vector<SetFamily> dicts{a, b, construct(g, construction::Dictatorship{3})};
  v = check_fkg_union(dicts, Rational(1, 4));
  CHECK(v.holds());
  CHECK(v.equality);
  CHECK(check_harris_many(dicts, Rational(2, 5)).holds());
}

TEST_CASE("biased isoperimetry") {
  for (int n = 2; n <= 6; ++n) {
    const GroundSet g(n);
    for (const auto& p : {Rational(1, 4), Rational(1, 3), Rational(2, 5)}) {
      // subcubes are tight
      const auto sub = construct(g, construction::Subcube{{1, 2}, {1, 2}});
      auto v = check_biased_iso(sub, p);
      CHECK(v.holds());
      CHECK(v.equality);
      CHECK(check_biased_iso(construct(g, construction::OrFamily{{1, 2}}), p).holds());
      CHECK(check_biased_iso(construct(g, construction::Full{}), p).holds());
    }
  }
}

TEST_CASE("log_p monotonicity and Chernoff") {
  const GroundSet g(5);
  const auto f = construct(g, construction::OrFamily{{1, 2}});
  CHECK(check_logp_monotone(f, Rational(1, 5), Rational(1, 2), 128).holds());
  CHECK(check_chernoff(20, Rational(1, 3), Rational(1, 2), 128).holds());
  CHECK(check_chernoff(50, Rational(1, 2), Rational(1, 10), 128).holds());
}

TEST_CASE("binomial tails") {
  CHECK(binomial_tail(3, Rational(1, 2), 2) == Rational(1, 2));
  CHECK(binomial_tail(4, Rational(1, 3), 0) == 1);
  CHECK(binomial_lower_tail(3, Rational(1, 2), 0) == Rational(1, 8));
  for (int k = 0; k <= 6; ++k) {
    CHECK(binomial_tail(6, Rational(2, 7), k) + binomial_lower_tail(6, Rational(2, 7), k - 1) == 1);
  }
}

TEST_CASE("going up") {
  const GroundSet g(6);
  for (int k = 1; k <= 5; ++k) {
    CHECK(check_going_up(slice(construct(g, construction::Dictatorship{1}), k), Rational(1, 3)).holds());
    auto v = check_going_up(construct(g, construction::FullLevel{k}), Rational(1, 3));
    CHECK(v.holds());
    CHECK(v.equality);
  }
}
