#include "ekrlab/rational.hpp"

#include <cctype>
#include <stdexcept>
#include <vector>

namespace ekrlab {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

BigInt parse_integer(std::string_view s) {
  std::string digits(s);
  if (!digits.empty() && digits[0] == '+') digits.erase(0, 1);
  return BigInt(digits, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-') {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  BigInt d = parse_integer(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational q(parse_integer(num), d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const BigInt& z) { return z.get_str(); }

double to_double(const Rational& q) { return q.get_d(); }

BigInt binom(long a, long b) {
  if (a < 0 || b < 0 || b > a) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
  return r;
}

std::uint64_t binom_u64(int a, int b) {
  if (a < 0 || b < 0 || b > a) return 0;
  if (a > 62) throw std::out_of_range("binom_u64 limited to a <= 62");
  if (b > a - b) b = a - b;
  std::uint64_t r = 1;
  for (int i = 1; i <= b; ++i) {
    r = static_cast<std::uint64_t>(static_cast<unsigned __int128>(r) * static_cast<unsigned>(a - b + i) / static_cast<unsigned>(i));
  }
  return r;
}

Rational pow(const Rational& q, unsigned long e) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), q.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), q.get_den_mpz_t(), e);
  return r;
}

bool in_unit_interval(const Rational& q) { return q >= 0 && q <= 1; }

}  // namespace ekrlab
