#pragma once

// Weil polynomials: monic integer polynomials whose complex roots all have
// absolute value q^(k/2). Also the Hasse interval and the Hermite-Minkowski
// degree threshold.

#include "galcert/rational.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace galcert {

// Coefficients lowest degree first; a monic polynomial of degree n has n + 1
// entries ending in 1.
using IntPoly = std::vector<Integer>;

struct WeilPolynomial {
  Integer q;
  int k = 1;
  int n = 0;
  IntPoly coefficients;  // a_0 .. a_{n-1}, then the leading 1
  bool certified = false;
  bool irreducible = false;
  std::string to_string() const;  // "x^2 + 2*x + 2"
  bool operator==(const WeilPolynomial& o) const { return coefficients == o.coefficients && q == o.q && k == o.k; }
};

struct WeilEnumeration {
  std::vector<WeilPolynomial> certified;  // sorted by coefficients
  std::vector<WeilPolynomial> undecided;  // candidates the root check could not settle
};

// Returns the prime when q = prime^a with a >= 1, and 0 otherwise.
std::int64_t prime_power_base(std::int64_t q);

// All Weil polynomials for (q, k) of degree n. Candidates come from the
// coefficient box cut down by the reciprocity x^n P(q^k/x) = P(0) P(x); each is
// then settled by isolating the roots of its squarefree part in disjoint
// disks and checking that inversion in the circle |z| = q^(k/2) fixes every
// disk. Requires q a prime power, k >= 1, 1 <= n <= 6.
WeilEnumeration enumerate_weil(std::int64_t q, int k, int n);

// Number of certified Weil polynomials of each degree 1..n_max.
std::map<int, std::size_t> count_local_lfactors(std::int64_t q, int k, int n_max);

struct HasseInterval {
  Integer q, min, max;
};

// [q + 1 - floor(2 sqrt q), q + 1 + floor(2 sqrt q)].
HasseInterval hasse_interval(std::int64_t q);

// p^(2 d n^2).
Integer hm_degree_threshold(int n, int d, std::int64_t p);

// Exact polynomial helpers, exposed for tests.
std::string poly_to_string(const IntPoly& poly);
bool poly_divides(const IntPoly& divisor, const IntPoly& poly);
// x^n P(Q/x) == P(0) P(x)
bool is_self_reciprocal(const IntPoly& poly, const Integer& Q);

}  // namespace galcert
