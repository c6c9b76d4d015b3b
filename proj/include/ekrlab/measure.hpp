#pragma once

// Exact p-biased measures, influences and the inequality checkers built on
// them. Every quantity is an exact rational; the only approximate step is the
// certified interval evaluation of logarithms/exponentials in
// check_logp_monotone and check_chernoff, which may answer `indeterminate`.

#include <cstdint>
#include <span>
#include <vector>

#include "ekrlab/family.hpp"
#include "ekrlab/rational.hpp"
#include "ekrlab/verdict.hpp"

namespace ekrlab {

/// Level counts (a_0, ..., a_n) with a_l <= C(n, l).
class Profile {
 public:
  Profile(int n, std::vector<std::uint64_t> counts);
  static Profile of(const SetFamily& f);

  int n() const { return n_; }
  const std::vector<std::uint64_t>& counts() const { return counts_; }
  std::uint64_t operator[](int l) const { return counts_[static_cast<std::size_t>(l)]; }

  friend bool operator==(const Profile&, const Profile&) = default;

 private:
  int n_;
  std::vector<std::uint64_t> counts_;
};

/// Dense polynomial with exact rational coefficients, lowest degree first.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coefficients);

  const std::vector<Rational>& coefficients() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  Rational evaluate(const Rational& x) const;
  Polynomial derivative() const;
  /// Antiderivative with zero constant term.
  Polynomial antiderivative() const;
  Rational integrate(const Rational& lo, const Rational& hi) const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::vector<Rational> coeffs_;
};

/// q -> sum_l w_l q^l (1-q)^(n-l), stored in that level basis. For a family,
/// w is its profile and the polynomial is q -> mu_q(F).
class MeasurePolynomial {
 public:
  MeasurePolynomial(int n, std::vector<BigInt> level_weights);
  static MeasurePolynomial of(const Profile& profile);

  int n() const { return n_; }
  const std::vector<BigInt>& level_weights() const { return weights_; }

  /// Evaluation directly in the level basis.
  Rational evaluate(const Rational& q) const;
  /// Expansion into monomial coefficients.
  Polynomial expand() const;

 private:
  int n_;
  std::vector<BigInt> weights_;
};

/// mu_p(F) = sum over members of p^|S| (1-p)^(n-|S|). Throws unless 0 <= p <= 1.
Rational mu(const SetFamily& f, const Rational& p);

/// Inf_i^p[F] = mu_p({S : F(S) != F(S△{i})}).
Rational influence(const SetFamily& f, int i, const Rational& p);
/// I^p[F] = sum_i Inf_i^p[F].
Rational total_influence(const SetFamily& f, const Rational& p);

MeasurePolynomial measure_polynomial(const SetFamily& f);
/// q -> I^q[F] in the level basis (weights are summed boundary profiles).
MeasurePolynomial influence_polynomial(const SetFamily& f);

/// d/dq mu_q(F) at q = p, by differentiating the expanded measure polynomial.
Rational derivative_at(const SetFamily& f, const Rational& p);
/// Oriented integral of q -> I^q[F] from lo to hi (negated when lo > hi);
/// both limits in [0, 1].
Rational integral_of_influence(const SetFamily& f, const Rational& lo, const Rational& hi);

/// Pr[Bin(n, p) >= k].
Rational binomial_tail(int n, const Rational& p, int k);
/// Pr[Bin(n, p) <= k].
Rational binomial_lower_tail(int n, const Rational& p, int k);

// --- checkers ---------------------------------------------------------------
//
// Precondition violations throw std::invalid_argument.

/// d mu_p / dp == I^p for increasing F.
Verdict check_russo(const SetFamily& f, const Rational& p);
/// integral_p^{1/2} I^q dq == mu_{1/2} - mu_p for increasing F.
Verdict check_integral_identity(const SetFamily& f, const Rational& p);
/// mu_p(F) <= p for intersecting F, 0 < p <= 1/2; for p < 1/2 equality must
/// come from a dictatorship.
Verdict check_biased_ekr(const SetFamily& f, const Rational& p);
/// mu_p(A ∩ B) >= mu_p(A) mu_p(B) for A, B both increasing or both decreasing.
Verdict check_harris(const SetFamily& a, const SetFamily& b, const Rational& p);
Verdict check_harris_many(std::span<const SetFamily> families, const Rational& p);
/// p I^p[A] >= mu_p(A) log_p mu_p(A), decided exactly by clearing exponents.
/// mu in {0, 1} holds by convention.
Verdict check_biased_iso(const SetFamily& a, const Rational& p);
/// log_{p1} mu_{p1}(A) >= log_{p2} mu_{p2}(A) for 0 < p1 < p2 < 1.
Verdict check_logp_monotone(const SetFamily& a, const Rational& p1, const Rational& p2, int precision_bits);
/// Pr[Bin(n,p) <= (1-delta) n p] < exp(-delta^2 n p / 2).
Verdict check_chernoff(int n, const Rational& p, const Rational& delta, int precision_bits);
/// mu_p(G^up) >= (|G| / C(n,k)) Pr[Bin(n,p) >= k] for k-uniform G.
Verdict check_going_up(const SetFamily& g, const Rational& p);
/// mu_p(F_1 u ... u F_r) <= 1 - (1-p)^r for intersecting F_i, 0 < p <= 1/2.
Verdict check_fkg_union(std::span<const SetFamily> families, const Rational& p);
/// I^p[F] == I^{1-p}[F*].
Verdict check_influence_duality(const SetFamily& f, const Rational& p);

}  // namespace ekrlab
