#include "ekrlab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "ekrlab/interval.hpp"

namespace ekrlab {

namespace {

void require_probability(const Rational& p, const char* name) {
  if (!in_unit_interval(p)) throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
}

void require_increasing(const SetFamily& f, const char* checker) {
  if (!f.is_increasing()) throw std::invalid_argument(std::string(checker) + " requires an increasing family");
}

// w_l = p^l (1-p)^(n-l) for l = 0..n.
std::vector<Rational> basis_weights(int n, const Rational& p) {
  std::vector<Rational> w(static_cast<std::size_t>(n) + 1);
  const Rational q = 1 - p;
  for (int l = 0; l <= n; ++l) {
    w[static_cast<std::size_t>(l)] = pow(p, static_cast<unsigned long>(l)) * pow(q, static_cast<unsigned long>(n - l));
  }
  return w;
}

Rational weigh(const std::vector<std::uint64_t>& counts, const std::vector<Rational>& w) {
  Rational total = 0;
  for (std::size_t l = 0; l < counts.size(); ++l) {
    if (counts[l] != 0) total += Rational(to_big(counts[l])) * w[l];
  }
  return total;
}

// Per-level counts of sum_i |boundary_i(F)|.
std::vector<std::uint64_t> summed_boundary_counts(const SetFamily& f) {
  std::vector<std::uint64_t> total(static_cast<std::size_t>(f.n()) + 1, 0);
  for (int i = 1; i <= f.n(); ++i) {
    const auto counts = family_symmetric_difference(f, toggle(f, i)).level_counts();
    for (std::size_t l = 0; l < counts.size(); ++l) total[l] += counts[l];
  }
  return total;
}

nlohmann::json sides(const Rational& lhs, const Rational& rhs) {
  return {{"lhs", to_string(lhs)}, {"rhs", to_string(rhs)}};
}

// Exponent e = a/b (b <= 16) with base^e == value exactly, if one exists.
std::optional<Rational> exact_log(const Rational& value, const Rational& base) {
  if (value == 1) return Rational(0);
  const double x = std::log(to_double(value)) / std::log(to_double(base));
  if (!std::isfinite(x) || x < 0) return std::nullopt;
  for (unsigned long b = 1; b <= 16; ++b) {
    const double scaled = x * static_cast<double>(b);
    const double a = std::round(scaled);
    if (std::fabs(a - scaled) > 1e-6 * std::max(1.0, scaled)) continue;
    if (a > 1e6) return std::nullopt;
    if (pow(value, b) == pow(base, static_cast<unsigned long>(a))) {
      return ratio(BigInt(static_cast<long>(a)), BigInt(static_cast<long>(b)));
    }
  }
  return std::nullopt;
}

}  // namespace

// --- Profile / polynomials ----------------------------------------------------

Profile::Profile(int n, std::vector<std::uint64_t> counts) : n_(n), counts_(std::move(counts)) {
  if (counts_.size() != static_cast<std::size_t>(n) + 1) throw std::invalid_argument("profile needs n+1 counts");
  for (int l = 0; l <= n; ++l) {
    if (to_big(counts_[static_cast<std::size_t>(l)]) > binom(n, l)) {
      throw std::invalid_argument("profile count exceeds C(n, l)");
    }
  }
}

Profile Profile::of(const SetFamily& f) { return Profile(f.n(), f.level_counts()); }

Polynomial::Polynomial(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Polynomial::evaluate(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  std::vector<Rational> d;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * static_cast<long>(i));
  return Polynomial(std::move(d));
}

Polynomial Polynomial::antiderivative() const {
  std::vector<Rational> a(coeffs_.size() + 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) a[i + 1] = coeffs_[i] / static_cast<long>(i + 1);
  return Polynomial(std::move(a));
}

Rational Polynomial::integrate(const Rational& lo, const Rational& hi) const {
  const Polynomial a = antiderivative();
  return a.evaluate(hi) - a.evaluate(lo);
}

MeasurePolynomial::MeasurePolynomial(int n, std::vector<BigInt> level_weights) : n_(n), weights_(std::move(level_weights)) {
  if (weights_.size() != static_cast<std::size_t>(n) + 1) throw std::invalid_argument("level basis needs n+1 weights");
}

MeasurePolynomial MeasurePolynomial::of(const Profile& profile) {
  std::vector<BigInt> w;
  for (auto c : profile.counts()) w.push_back(to_big(c));
  return MeasurePolynomial(profile.n(), std::move(w));
}

Rational MeasurePolynomial::evaluate(const Rational& q) const {
  const auto w = basis_weights(n_, q);
  Rational total = 0;
  for (std::size_t l = 0; l < weights_.size(); ++l) total += Rational(weights_[l]) * w[l];
  return total;
}

Polynomial MeasurePolynomial::expand() const {
  std::vector<Rational> c(static_cast<std::size_t>(n_) + 1, Rational(0));
  for (int l = 0; l <= n_; ++l) {
    const BigInt& wl = weights_[static_cast<std::size_t>(l)];
    if (wl == 0) continue;
    for (int j = 0; j <= n_ - l; ++j) {
      BigInt term = wl * binom(n_ - l, j);
      if (j % 2) term = -term;
      c[static_cast<std::size_t>(l + j)] += Rational(term);
    }
  }
  return Polynomial(std::move(c));
}

// --- measures -------------------------------------------------------------------

Rational mu(const SetFamily& f, const Rational& p) {
  require_probability(p, "p");
  return weigh(f.level_counts(), basis_weights(f.n(), p));
}

Rational influence(const SetFamily& f, int i, const Rational& p) {
  require_probability(p, "p");
  return mu(family_symmetric_difference(f, toggle(f, i)), p);
}

Rational total_influence(const SetFamily& f, const Rational& p) {
  require_probability(p, "p");
  return weigh(summed_boundary_counts(f), basis_weights(f.n(), p));
}

MeasurePolynomial measure_polynomial(const SetFamily& f) { return MeasurePolynomial::of(Profile::of(f)); }

MeasurePolynomial influence_polynomial(const SetFamily& f) {
  std::vector<BigInt> w;
  for (auto c : summed_boundary_counts(f)) w.push_back(to_big(c));
  return MeasurePolynomial(f.n(), std::move(w));
}

Rational derivative_at(const SetFamily& f, const Rational& p) {
  require_probability(p, "p");
  return measure_polynomial(f).expand().derivative().evaluate(p);
}

Rational integral_of_influence(const SetFamily& f, const Rational& lo, const Rational& hi) {
  require_probability(lo, "lower bound");
  require_probability(hi, "upper bound");
  return influence_polynomial(f).expand().integrate(lo, hi);
}

Rational binomial_tail(int n, const Rational& p, int k) {
  if (n < 0) throw std::invalid_argument("n must be non-negative");
  require_probability(p, "p");
  const auto w = basis_weights(n, p);
  Rational total = 0;
  for (int j = std::max(k, 0); j <= n; ++j) total += Rational(binom(n, j)) * w[static_cast<std::size_t>(j)];
  return total;
}

Rational binomial_lower_tail(int n, const Rational& p, int k) {
  if (n < 0) throw std::invalid_argument("n must be non-negative");
  require_probability(p, "p");
  const auto w = basis_weights(n, p);
  Rational total = 0;
  for (int j = 0; j <= std::min(k, n); ++j) total += Rational(binom(n, j)) * w[static_cast<std::size_t>(j)];
  return total;
}

// --- checkers -------------------------------------------------------------------

Verdict check_russo(const SetFamily& f, const Rational& p) {
  require_increasing(f, "check_russo");
  const Rational lhs = derivative_at(f, p);
  const Rational rhs = total_influence(f, p);
  Verdict v = Verdict::from(lhs == rhs);
  v.equality = lhs == rhs;
  v.details = sides(lhs, rhs);
  if (v.fails()) v.witness = "derivative " + to_string(lhs) + " != total influence " + to_string(rhs);
  return v;
}

Verdict check_integral_identity(const SetFamily& f, const Rational& p) {
  require_increasing(f, "check_integral_identity");
  require_probability(p, "p");
  const Rational half(1, 2);
  const Rational lhs = p <= half ? integral_of_influence(f, p, half) : -integral_of_influence(f, half, p);
  const Rational rhs = mu(f, half) - mu(f, p);
  Verdict v = Verdict::from(lhs == rhs);
  v.equality = lhs == rhs;
  v.details = sides(lhs, rhs);
  if (v.fails()) v.witness = "integral " + to_string(lhs) + " != measure difference " + to_string(rhs);
  return v;
}

Verdict check_biased_ekr(const SetFamily& f, const Rational& p) {
  if (!(p > 0 && p <= Rational(1, 2))) throw std::invalid_argument("check_biased_ekr requires 0 < p <= 1/2");
  if (!is_intersecting(f)) throw std::invalid_argument("check_biased_ekr requires an intersecting family");
  const Rational m = mu(f, p);
  Verdict v = Verdict::from(m <= p);
  v.equality = m == p;
  v.details = sides(m, p);
  const auto dict = dictatorship_index(f);
  v.details["dictatorship"] = dict ? nlohmann::json(*dict) : nlohmann::json(nullptr);
  if (v.fails()) {
    v.witness = "mu_p(F) = " + to_string(m) + " exceeds p";
  } else if (v.equality && p < Rational(1, 2) && !dict) {
    v.kind = VerdictKind::fails;
    v.witness = "equality at p < 1/2 for a family that is not a dictatorship";
  }
  return v;
}

Verdict check_harris(const SetFamily& a, const SetFamily& b, const Rational& p) {
  const SetFamily pair[] = {a, b};
  return check_harris_many(pair, p);
}

Verdict check_harris_many(std::span<const SetFamily> families, const Rational& p) {
  require_probability(p, "p");
  if (families.empty()) throw std::invalid_argument("check_harris_many needs at least one family");
  const bool all_up = std::all_of(families.begin(), families.end(), [](const SetFamily& f) { return f.is_increasing(); });
  const bool all_down =
      std::all_of(families.begin(), families.end(), [](const SetFamily& f) { return f.is_decreasing(); });
  if (!all_up && !all_down) throw std::invalid_argument("Harris inequality needs all increasing or all decreasing");
  SetFamily meet = families.front();
  Rational product = 1;
  for (const auto& f : families) {
    meet = family_intersection(meet, f);
    product *= mu(f, p);
  }
  const Rational lhs = mu(meet, p);
  Verdict v = Verdict::from(lhs >= product);
  v.equality = lhs == product;
  v.details = sides(lhs, product);
  if (v.fails()) v.witness = "mu(intersection) " + to_string(lhs) + " < product " + to_string(product);
  return v;
}

Verdict check_biased_iso(const SetFamily& a, const Rational& p) {
  if (!(p > 0 && p < 1)) throw std::invalid_argument("check_biased_iso requires 0 < p < 1");
  require_increasing(a, "check_biased_iso");
  const Rational m = mu(a, p);
  const Rational x = p * total_influence(a, p);
  Verdict v;
  v.details = {{"p_times_influence", to_string(x)}, {"mu", to_string(m)}};
  if (m == 0 || m == 1) {
    v.equality = x == 0;
    v.details["convention"] = "mu in {0,1}";
    return v;
  }
  // p I >= mu log_p(mu)  <=>  p^(pI) <= mu^mu, since ln p < 0.
  // A certified interval comparison settles separated cases; ties and near
  // ties fall through to the exact integer-power comparison.
  {
    constexpr int kBits = 256;
    const Interval lhs = Interval::point(x, kBits) * Interval::point(p, kBits).log();
    const Interval rhs = Interval::point(m, kBits) * Interval::point(m, kBits).log();
    if (rhs.certainly_greater(lhs)) return v;
    if (lhs.certainly_greater(rhs)) {
      v.kind = VerdictKind::fails;
      v.witness = "p I^p[A] below mu log_p mu";
      return v;
    }
  }
  const BigInt d = lcm(x.get_den(), m.get_den());
  BigInt ex = x.get_num() * (d / x.get_den());
  BigInt ey = m.get_num() * (d / m.get_den());
  const BigInt g = gcd(ex, ey);
  if (g > 1) {
    ex /= g;
    ey /= g;
  }
  if (!ex.fits_ulong_p() || !ey.fits_ulong_p()) throw std::overflow_error("exponent too large to clear");
  const Rational lhs = pow(p, ex.get_ui());
  const Rational rhs = pow(m, ey.get_ui());
  v.kind = lhs <= rhs ? VerdictKind::holds : VerdictKind::fails;
  v.equality = lhs == rhs;
  v.details["exponents"] = {to_string(ex), to_string(ey)};
  if (v.fails()) v.witness = "p I^p[A] below mu log_p mu";
  return v;
}

Verdict check_logp_monotone(const SetFamily& a, const Rational& p1, const Rational& p2, int precision_bits) {
  if (!(p1 > 0 && p1 < p2 && p2 < 1)) throw std::invalid_argument("check_logp_monotone requires 0 < p1 < p2 < 1");
  require_increasing(a, "check_logp_monotone");
  const Rational m1 = mu(a, p1);
  const Rational m2 = mu(a, p2);
  if (m1 == 0) throw std::invalid_argument("check_logp_monotone requires mu_{p1}(A) > 0");
  Verdict v;
  v.details = {{"mu1", to_string(m1)}, {"mu2", to_string(m2)}};
  const auto e1 = exact_log(m1, p1);
  const auto e2 = exact_log(m2, p2);
  if (e1 && e2) {
    v.kind = *e1 >= *e2 ? VerdictKind::holds : VerdictKind::fails;
    v.equality = *e1 == *e2;
    v.details["log1"] = to_string(*e1);
    v.details["log2"] = to_string(*e2);
    if (v.fails()) v.witness = "log_p mu_p increased between p1 and p2";
    return v;
  }
  // log_{p1} m1 >= log_{p2} m2  <=>  ln m1 ln p2 >= ln m2 ln p1 (ln p1 ln p2 > 0).
  v.precision_bits = precision_bits;
  const Interval lhs = Interval::point(m1, precision_bits).log() * Interval::point(p2, precision_bits).log();
  const Interval rhs = Interval::point(m2, precision_bits).log() * Interval::point(p1, precision_bits).log();
  if (lhs.certainly_at_least(rhs)) {
    v.kind = VerdictKind::holds;
  } else if (rhs.certainly_greater(lhs)) {
    v.kind = VerdictKind::fails;
    v.witness = "log_p mu_p increased between p1 and p2";
  } else {
    v.kind = VerdictKind::indeterminate;
    v.details["report"] = "intervals overlap at " + std::to_string(precision_bits) + " bits";
  }
  v.details["lhs_approx"] = lhs.lo().to_string();
  v.details["rhs_approx"] = rhs.hi().to_string();
  return v;
}

Verdict check_chernoff(int n, const Rational& p, const Rational& delta, int precision_bits) {
  if (n < 1) throw std::invalid_argument("check_chernoff requires n >= 1");
  if (!(p > 0 && p < 1) || !(delta > 0 && delta < 1)) {
    throw std::invalid_argument("check_chernoff requires 0 < p, delta < 1");
  }
  const Rational threshold = (1 - delta) * n * p;
  BigInt fl;
  mpz_fdiv_q(fl.get_mpz_t(), threshold.get_num_mpz_t(), threshold.get_den_mpz_t());
  const Rational tail = binomial_lower_tail(n, p, static_cast<int>(fl.get_si()));
  const Rational exponent = -(delta * delta * n * p) / 2;
  const Interval bound = Interval::point(exponent, precision_bits).exp();
  const Interval tail_iv = Interval::point(tail, precision_bits);
  Verdict v;
  v.precision_bits = precision_bits;
  v.details = {{"lower_tail", to_string(tail)},
               {"threshold", to_string(threshold)},
               {"tail_approx", to_double(tail)},
               {"bound_approx", bound.lo().to_double()}};
  if (bound.certainly_greater(tail_iv)) {
    v.kind = VerdictKind::holds;
  } else if (tail_iv.certainly_at_least(bound)) {
    v.kind = VerdictKind::fails;
    v.witness = "lower tail " + to_string(tail) + " not below exp(-delta^2 n p / 2)";
  } else {
    v.kind = VerdictKind::indeterminate;
    v.details["report"] = "intervals overlap at " + std::to_string(precision_bits) + " bits";
  }
  return v;
}

Verdict check_going_up(const SetFamily& g, const Rational& p) {
  require_probability(p, "p");
  Verdict v;
  if (g.empty()) {
    v.equality = true;
    v.details = sides(0, 0);
    return v;
  }
  const auto level = g.uniform_level();
  if (!level) throw std::invalid_argument("check_going_up requires a uniform family");
  const int n = g.n();
  const int k = *level;
  const Rational alpha = ratio(to_big(g.size()), binom(n, k));
  const Rational lhs = mu(up_closure(g), p);
  const Rational rhs = alpha * binomial_tail(n, p, k);
  v = Verdict::from(lhs >= rhs);
  v.equality = lhs == rhs;
  v.details = sides(lhs, rhs);
  v.details["alpha"] = to_string(alpha);
  if (v.fails()) v.witness = "mu_p(G^up) " + to_string(lhs) + " < " + to_string(rhs);
  return v;
}

Verdict check_fkg_union(std::span<const SetFamily> families, const Rational& p) {
  if (families.empty()) throw std::invalid_argument("check_fkg_union needs at least one family");
  if (!(p > 0 && p <= Rational(1, 2))) throw std::invalid_argument("check_fkg_union requires 0 < p <= 1/2");
  SetFamily all = SetFamily(families.front().ground());
  std::vector<int> dictators;
  for (const auto& f : families) {
    if (!is_intersecting(f)) throw std::invalid_argument("check_fkg_union requires intersecting families");
    all = family_union(all, f);
    if (auto j = dictatorship_index(f)) dictators.push_back(*j);
  }
  const Rational lhs = mu(all, p);
  const Rational rhs = 1 - pow(1 - p, families.size());
  Verdict v = Verdict::from(lhs <= rhs);
  v.equality = lhs == rhs;
  v.details = sides(lhs, rhs);
  std::sort(dictators.begin(), dictators.end());
  const bool distinct_dictators = dictators.size() == families.size() &&
                                  std::adjacent_find(dictators.begin(), dictators.end()) == dictators.end();
  v.details["distinct_dictatorships"] = distinct_dictators;
  if (v.fails()) v.witness = "mu_p(union) " + to_string(lhs) + " exceeds 1-(1-p)^r";
  return v;
}

Verdict check_influence_duality(const SetFamily& f, const Rational& p) {
  require_probability(p, "p");
  const Rational lhs = total_influence(f, p);
  const Rational rhs = total_influence(dual(f), 1 - p);
  Verdict v = Verdict::from(lhs == rhs);
  v.equality = lhs == rhs;
  v.details = sides(lhs, rhs);
  if (v.fails()) v.witness = "I^p[F] " + to_string(lhs) + " != I^{1-p}[F*] " + to_string(rhs);
  return v;
}

}  // namespace ekrlab
