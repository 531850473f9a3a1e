#include "galcert/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace galcert {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_decimal(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  auto dot = body.find('.');
  std::string_view whole = body.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : body.substr(dot + 1);
  if (!all_digits(whole) || (dot != std::string_view::npos && !all_digits(frac)))
    throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
  Integer num(std::string(whole) + std::string(frac), 10);
  Integer den = ipow(Integer(10), frac.size());
  Rational r(num, den);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text);
  std::string_view n = text.substr(0, slash);
  std::string_view d = text.substr(slash + 1);
  bool negative = !n.empty() && n.front() == '-';
  if (negative) n.remove_prefix(1);
  if (!all_digits(n) || !all_digits(d))
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  Integer den(std::string(d), 10);
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational r(Integer(std::string(n), 10), den);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

std::string to_decimal_string(const Rational& value) {
  Integer den = value.get_den();
  unsigned twos = 0, fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) { den /= 2; ++twos; }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) { den /= 5; ++fives; }
  if (den != 1) throw std::invalid_argument("not a terminating decimal: " + to_string(value));
  unsigned places = std::max(twos, fives);
  Integer scaled = value.get_num() * ipow(Integer(10), places) / value.get_den();
  bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string digits = scaled.get_str();
  if (places > 0) {
    if (digits.size() <= places) digits.insert(0, places + 1 - digits.size(), '0');
    digits.insert(digits.size() - places, ".");
  }
  return negative ? "-" + digits : digits;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_string(const Integer& value) { return value.get_str(); }

std::strong_ordering cmp(const Rational& a, const Rational& b) {
  int c = ::cmp(a, b);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Integer ipow(const Integer& base, unsigned long exponent) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

Rational ipow(const Rational& base, long exponent) {
  unsigned long e = exponent < 0 ? static_cast<unsigned long>(-exponent) : static_cast<unsigned long>(exponent);
  Rational r(ipow(base.get_num(), e), ipow(base.get_den(), e));
  r.canonicalize();
  if (exponent < 0) {
    if (r == 0) throw std::domain_error("zero to a negative power");
    r = 1 / r;
  }
  return r;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace galcert
