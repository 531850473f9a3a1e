#include "galcert/bounds.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace galcert {

namespace {

std::vector<std::pair<Integer, unsigned long>> factor_integer(Integer n) {
  std::vector<std::pair<Integer, unsigned long>> out;
  for (unsigned long d = 2; Integer(d) * d <= n; ++d) {
    unsigned long k = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
      n /= d;
      ++k;
    }
    if (k) out.emplace_back(Integer(d), k);
    if (d > 10000000UL) throw std::invalid_argument("base too large to factor");
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

Rational floor_part(const Rational& x) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return Rational(q);
}

}  // namespace

ExactBound::ExactBound() : scalar_(1) {}

ExactBound::ExactBound(const Rational& scalar) : scalar_(scalar) {
  if (scalar_ <= 0) throw std::invalid_argument("bound must be positive");
}

ExactBound::ExactBound(Rational scalar, std::vector<Factor> factors)
    : scalar_(std::move(scalar)), factors_(std::move(factors)) {
  if (scalar_ <= 0) throw std::invalid_argument("bound must be positive");
  canonicalize();
}

ExactBound ExactBound::power(const Integer& base, const Rational& exponent) {
  if (base < 2) throw std::invalid_argument("base must be at least 2");
  std::vector<Factor> f;
  for (auto& [q, k] : factor_integer(base)) f.push_back({q, exponent * Rational(k)});
  return ExactBound(Rational(1), std::move(f));
}

void ExactBound::canonicalize() {
  std::map<Integer, Rational> exps;
  for (const Factor& f : factors_)
    for (auto& [q, k] : factor_integer(f.base)) exps[q] += f.exponent * Rational(k);
  factors_.clear();
  for (auto& [q, e] : exps) {
    e.canonicalize();
    Rational whole = floor_part(e);
    Rational frac = e - whole;
    long w = whole.get_num().get_si();
    if (w > 0)
      scalar_ *= Rational(ipow(q, static_cast<unsigned long>(w)));
    else if (w < 0)
      scalar_ /= Rational(ipow(q, static_cast<unsigned long>(-w)));
    scalar_.canonicalize();
    if (frac != 0) factors_.push_back({q, frac});
  }
}

ExactBound ExactBound::operator*(const ExactBound& other) const {
  std::vector<Factor> f = factors_;
  f.insert(f.end(), other.factors_.begin(), other.factors_.end());
  return ExactBound(scalar_ * other.scalar_, std::move(f));
}

unsigned long ExactBound::clearing_exponent() const {
  unsigned long t = 1;
  for (const Factor& f : factors_) t = std::lcm(t, f.exponent.get_den().get_ui());
  return t;
}

Rational ExactBound::raised(unsigned long t) const {
  if (t % clearing_exponent() != 0) throw std::invalid_argument("exponent does not clear the bound");
  Rational v = ipow(scalar_, static_cast<long>(t));
  for (const Factor& f : factors_) {
    Rational e = f.exponent * Rational(t);
    v *= Rational(ipow(f.base, e.get_num().get_ui()));
  }
  v.canonicalize();
  return v;
}

std::string ExactBound::to_string() const {
  // merge the scalar's prime powers back into the irrational factors
  Integer num = scalar_.get_num();
  Integer den = scalar_.get_den();
  std::vector<std::string> parts;
  for (const Factor& f : factors_) {
    long k = 0;
    while (mpz_divisible_p(num.get_mpz_t(), f.base.get_mpz_t())) { num /= f.base; ++k; }
    while (mpz_divisible_p(den.get_mpz_t(), f.base.get_mpz_t())) { den /= f.base; --k; }
    Rational e = f.exponent + Rational(k);
    parts.push_back(f.base.get_str() + "^(" + galcert::to_string(e) + ")");
  }
  std::string head;
  Rational rest(num, den);
  if (rest != 1 || parts.empty()) head = galcert::to_string(rest);
  std::string out = head;
  for (const std::string& p : parts) out += (out.empty() ? "" : "*") + p;
  return out;
}

ExactBound ExactBound::recanonicalized() const { return ExactBound(scalar_, factors_); }

std::strong_ordering compare(const ExactBound& b, const Rational& d) {
  if (d <= 0) return std::strong_ordering::greater;
  unsigned long t = b.clearing_exponent();
  return cmp(b.raised(t), ipow(d, static_cast<long>(t)));
}

std::strong_ordering compare(const ExactBound& a, const ExactBound& b) {
  unsigned long t = std::lcm(a.clearing_exponent(), b.clearing_exponent());
  return cmp(a.raised(t), b.raised(t));
}

ExactBound fontaine_bound(std::int64_t p, std::int64_t r, const std::set<std::int64_t>& S) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (r < 1 || r > p - 1) throw std::invalid_argument("weight r must lie in [1, p-1]");
  if (S.count(p)) throw std::invalid_argument("p must not be in S");
  Integer prod = 1;
  for (std::int64_t q : S) {
    if (!is_prime(q)) throw std::invalid_argument("elements of S must be prime");
    prod *= static_cast<long>(q);
  }
  Rational e = Rational(1) + Rational(static_cast<long>(r), static_cast<long>(p - 1));
  e.canonicalize();
  return ExactBound(Rational(prod)) * ExactBound::power(Integer(static_cast<long>(p)), e);
}

ExactBound tame_prime_bound(std::int64_t q, std::int64_t e) {
  if (!is_prime(q)) throw std::invalid_argument("q must be prime");
  if (e < 1) throw std::invalid_argument("ramification index must be positive");
  if (e == 1) return ExactBound();
  Rational x = Rational(1) - Rational(1, static_cast<long>(e));
  x.canonicalize();
  return ExactBound::power(Integer(static_cast<long>(q)), x);
}

std::string decimal_digits(const ExactBound& b, int k) {
  if (k < 1) throw std::invalid_argument("need at least one digit");
  unsigned long t = b.clearing_exponent();
  Rational x = b.raised(t) * Rational(ipow(Integer(10), static_cast<unsigned long>(k) * t));
  Integer fl = x.get_num() / x.get_den();
  Integer n;
  mpz_root(n.get_mpz_t(), fl.get_mpz_t(), t);
  std::string digits = n.get_str();
  if (digits.size() <= static_cast<size_t>(k)) digits.insert(0, k + 1 - digits.size(), '0');
  digits.insert(digits.size() - k, ".");
  return digits;
}

}  // namespace galcert
