#pragma once

// Symbolic upper bounds for root discriminants: a positive rational times
// rational powers of primes, compared exactly against decimals.

#include "galcert/rational.hpp"

#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace galcert {

// Value = scalar * prod base^exponent. In canonical form every base is a
// prime, bases are strictly increasing, and every exponent lies strictly
// between 0 and 1; integral parts are folded into the scalar. Two bounds are
// equal as reals iff their canonical forms coincide.
class ExactBound {
 public:
  struct Factor {
    Integer base;
    Rational exponent;
    bool operator==(const Factor&) const = default;
  };

  ExactBound();  // the value 1
  explicit ExactBound(const Rational& scalar);
  // base^exponent for an integer base >= 2 (factored into primes).
  static ExactBound power(const Integer& base, const Rational& exponent);

  const Rational& scalar() const { return scalar_; }
  const std::vector<Factor>& factors() const { return factors_; }

  bool is_rational() const { return factors_.empty(); }

  ExactBound operator*(const ExactBound& other) const;
  bool operator==(const ExactBound&) const = default;

  // Smallest t > 0 with value^t rational.
  unsigned long clearing_exponent() const;
  // value^t as an exact rational; t must be a multiple of clearing_exponent().
  Rational raised(unsigned long t) const;

  // Human form with prime powers merged, e.g. "2*3^(3/2)", "5^(5/4)", "9".
  std::string to_string() const;

  // Rebuilds the canonical form from the stored fields; the identity on any
  // constructed value.
  ExactBound recanonicalized() const;

 private:
  ExactBound(Rational scalar, std::vector<Factor> factors);
  void canonicalize();

  Rational scalar_;
  std::vector<Factor> factors_;
};

std::strong_ordering compare(const ExactBound& b, const Rational& d);
std::strong_ordering compare(const ExactBound& a, const ExactBound& b);

// prod_{q in S} q * p^(1 + r/(p-1)). Throws std::invalid_argument when p or an
// element of S is not prime, r is outside [1, p-1], or p is in S.
ExactBound fontaine_bound(std::int64_t p, std::int64_t r, const std::set<std::int64_t>& S);

// q^(1 - 1/e): the root-discriminant contribution of a tamely ramified prime
// with ramification index e.
ExactBound tame_prime_bound(std::int64_t q, std::int64_t e);

// floor(b * 10^k) / 10^k written with exactly k digits after the point.
// Display only.
std::string decimal_digits(const ExactBound& b, int k);

}  // namespace galcert
