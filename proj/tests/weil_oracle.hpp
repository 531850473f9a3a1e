#pragma once

// Independent Weil-polynomial oracle: the full coefficient box, factors at
// +-sqrt(q^k) stripped, then t = x + Q/x and Sturm sequences decide whether
// every root lies on the circle.

#include "galcert/weil.hpp"

#include <functional>
#include <set>
#include <vector>

namespace weil_oracle {

using namespace galcert;

// Rational polynomials, lowest degree first, no trailing zeros.
using QPoly = std::vector<Rational>;

inline void trim(QPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int deg(const QPoly& a) { return static_cast<int>(a.size()) - 1; }

inline Rational eval(const QPoly& a, const Rational& x) {
  Rational v = 0;
  for (int i = deg(a); i >= 0; --i) v = v * x + a[static_cast<std::size_t>(i)];
  return v;
}

// a = q*b + r
inline void divmod(QPoly a, const QPoly& b, QPoly& q, QPoly& r) {
  trim(a);
  q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
  while (!a.empty() && deg(a) >= deg(b)) {
    Rational c = a.back() / b.back();
    int s = deg(a) - deg(b);
    q[static_cast<std::size_t>(s)] = c;
    for (int i = 0; i <= deg(b); ++i) a[static_cast<std::size_t>(i + s)] -= c * b[static_cast<std::size_t>(i)];
    a.pop_back();
    trim(a);
  }
  r = a;
}

inline QPoly derivative(const QPoly& a) {
  QPoly d;
  for (int i = 1; i <= deg(a); ++i) d.push_back(a[static_cast<std::size_t>(i)] * i);
  trim(d);
  return d;
}

inline QPoly gcd(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    QPoly q, r;
    divmod(a, b, q, r);
    a = b;
    b = r;
  }
  for (auto& c : a) c /= a.back();
  return a;
}

inline QPoly squarefree(const QPoly& a) {
  QPoly g = gcd(a, derivative(a)), q, r;
  divmod(a, g, q, r);
  return q;
}

inline std::vector<QPoly> sturm(const QPoly& a) {
  std::vector<QPoly> s{a, derivative(a)};
  while (!s.back().empty() && deg(s.back()) > 0) {
    QPoly q, r;
    divmod(s[s.size() - 2], s.back(), q, r);
    for (auto& c : r) c = -c;
    if (r.empty()) break;
    s.push_back(r);
  }
  return s;
}

inline int sign_at_infinity(const QPoly& a, bool negative) {
  if (a.empty()) return 0;
  int s = sgn(a.back());
  return negative && deg(a) % 2 ? -s : s;
}

inline int variations(const std::vector<int>& signs) {
  int v = 0, last = 0;
  for (int s : signs) {
    if (!s) continue;
    if (last && s != last) ++v;
    last = s;
  }
  return v;
}

// distinct real roots of the squarefree a in (lo, +inf), lo not a root
inline int roots_above(const QPoly& a, const Rational& lo) {
  auto s = sturm(a);
  std::vector<int> at, inf;
  for (const auto& p : s) {
    at.push_back(sgn(eval(p, lo)));
    inf.push_back(sign_at_infinity(p, false));
  }
  return variations(at) - variations(inf);
}

inline int real_roots(const QPoly& a) {
  auto s = sturm(a);
  std::vector<int> lo, hi;
  for (const auto& p : s) {
    lo.push_back(sign_at_infinity(p, true));
    hi.push_back(sign_at_infinity(p, false));
  }
  return variations(lo) - variations(hi);
}

inline bool strip(QPoly& a, const QPoly& f) {
  QPoly q, r;
  divmod(a, f, q, r);
  if (!r.empty()) return false;
  a = q;
  return true;
}

// All complex roots of pol on |z| = sqrt(Q), decided through t = x + Q/x.
inline bool oracle_is_weil(const IntPoly& coeffs, const Integer& Q) {
  QPoly a(coeffs.begin(), coeffs.end());
  Integer R;
  mpz_sqrt(R.get_mpz_t(), Q.get_mpz_t());
  bool square = R * R == Q;
  if (square) {
    while (strip(a, {Rational(-R), 1})) {
    }
    while (strip(a, {Rational(R), 1})) {
    }
  } else {
    while (strip(a, {Rational(-Q), 0, 1})) {
    }
  }
  int d = deg(a);
  if (d % 2) return false;
  if (d == 0) return true;
  int h = d / 2;
  // a(x) = x^h T(x + Q/x); peel T from the top using a Laurent buffer
  std::vector<Rational> L(static_cast<std::size_t>(d + 1));  // exponent e - h at index e
  for (int i = 0; i <= d; ++i) L[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)];
  QPoly T(static_cast<std::size_t>(h + 1));
  for (int j = h; j >= 0; --j) {
    Rational c = L[static_cast<std::size_t>(j + h)];
    T[static_cast<std::size_t>(j)] = c;
    // (x + Q/x)^j = sum binom(j, i) Q^i x^(j - 2i)
    Integer binom = 1;
    for (int i = 0; i <= j; ++i) {
      L[static_cast<std::size_t>(j - 2 * i + h)] -= c * Rational(binom * ipow(Q, static_cast<unsigned long>(i)));
      binom = binom * (j - i) / (i + 1);
    }
  }
  for (const auto& c : L)
    if (c != 0) return false;  // not self-reciprocal
  trim(T);
  QPoly Ts = squarefree(T);
  if (real_roots(Ts) != deg(Ts)) return false;
  // V(s) = T(sqrt s) T(-sqrt s) has the squares of the roots of T as roots
  QPoly even, odd;
  for (int i = 0; i <= deg(T); ++i) {
    auto& tgt = i % 2 ? odd : even;
    tgt.resize(static_cast<std::size_t>(i / 2 + 1));
    tgt[static_cast<std::size_t>(i / 2)] = T[static_cast<std::size_t>(i)];
  }
  // T(u) = E(u^2) + u O(u^2), so V(s) = E(s)^2 - s O(s)^2
  auto mulp = [](const QPoly& x, const QPoly& y) {
    QPoly z(x.size() + y.size(), Rational(0));
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < y.size(); ++j) z[i + j] += x[i] * y[j];
    trim(z);
    return z;
  };
  QPoly V = mulp(even, even), so = mulp(QPoly{0, 1}, mulp(odd, odd));
  V.resize(std::max(V.size(), so.size()), Rational(0));
  for (std::size_t i = 0; i < so.size(); ++i) V[i] -= so[i];
  trim(V);
  QPoly Vs = squarefree(V);
  Rational four_q(4 * Q);
  while (strip(Vs, {-four_q, 1})) {
  }
  return roots_above(Vs, four_q) == 0;
}

inline std::set<IntPoly> oracle(std::int64_t q, int k, int n) {
  Integer Q = ipow(Integer(static_cast<long>(q)), static_cast<unsigned long>(k));
  std::vector<Integer> box(static_cast<std::size_t>(n + 1));
  Integer binom = 1;
  for (int i = 0; i <= n; ++i) {
    // |a_(n-i)| <= binom(n, i) Q^(i/2)
    Integer qi = binom * binom * ipow(Q, static_cast<unsigned long>(i)), r;
    mpz_sqrt(r.get_mpz_t(), qi.get_mpz_t());
    box[static_cast<std::size_t>(i)] = r;
    binom = binom * (n - i) / (i + 1);
  }
  // |a_0| = Q^(n/2) exactly
  Integer qn = ipow(Q, static_cast<unsigned long>(n)), a0;
  mpz_sqrt(a0.get_mpz_t(), qn.get_mpz_t());
  std::set<IntPoly> out;
  if (a0 * a0 != qn) return out;
  IntPoly cur(static_cast<std::size_t>(n + 1));
  cur[static_cast<std::size_t>(n)] = 1;
  std::function<void(int)> rec = [&](int idx) {  // idx = coefficient index being set
    if (idx == 0) {
      for (int s : {-1, 1}) {
        cur[0] = Integer(s) * a0;
        if (oracle_is_weil(cur, Q)) out.insert(cur);
      }
      return;
    }
    const Integer& b = box[static_cast<std::size_t>(n - idx)];
    for (Integer v = -b; v <= b; ++v) {
      cur[static_cast<std::size_t>(idx)] = v;
      rec(idx - 1);
    }
  };
  rec(n - 1);
  return out;
}

inline bool has_integer_root(const IntPoly& p) {
  if (p[0] == 0) return true;
  Integer a = abs(p[0]);
  for (Integer d = 1; d <= a; ++d) {
    if (a % d != 0) continue;
    for (int s : {-1, 1}) {
      Integer x = s * d, v = 0;
      for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) v = v * x + p[static_cast<std::size_t>(i)];
      if (v == 0) return true;
    }
  }
  return false;
}

}  // namespace weil_oracle
