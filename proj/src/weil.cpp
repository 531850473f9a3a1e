#include "galcert/weil.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <complex>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace galcert {

namespace {

using QPoly = std::vector<Rational>;
using cld = std::complex<long double>;

void trim(QPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

QPoly to_q(const IntPoly& p) {
  QPoly out;
  for (const Integer& c : p) out.emplace_back(c);
  trim(out);
  return out;
}

// remainder of a by b (b nonzero)
QPoly qrem(QPoly a, const QPoly& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    Rational f = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    trim(a);
  }
  return a;
}

QPoly qdiv(QPoly a, const QPoly& b) {
  trim(a);
  if (a.size() < b.size()) return {};
  QPoly quo(a.size() - b.size() + 1);
  while (a.size() >= b.size() && !a.empty()) {
    Rational f = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    quo[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    trim(a);
  }
  return quo;
}

QPoly qgcd(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    QPoly r = qrem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Rational lc = a.back();
    for (Rational& c : a) c /= lc;
  }
  return a;
}

QPoly derivative(const QPoly& a) {
  QPoly d;
  for (std::size_t i = 1; i < a.size(); ++i) d.push_back(a[i] * Rational(static_cast<long>(i)));
  return d;
}

Integer isqrt_floor(const Integer& x) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  return r;
}

Integer binom(int n, int k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

enum class RootCheck { OnCircle, OffCircle, Undecided };

// Settles whether all roots of the monic squarefree s lie on |z| = R, R^2 = Q.
RootCheck check_roots(const QPoly& s, const Integer& Q) {
  const int d = static_cast<int>(s.size()) - 1;
  if (d <= 0) return RootCheck::OnCircle;
  std::vector<long double> c(d + 1), ac(d + 1);
  for (int i = 0; i <= d; ++i) {
    c[i] = static_cast<long double>(s[i].get_d());
    ac[i] = std::fabs(c[i]);
  }
  const long double R = std::sqrt(static_cast<long double>(Q.get_d()));
  const long double u = LDBL_EPSILON;

  auto eval = [&](cld z) {
    cld v = c[d];
    for (int i = d - 1; i >= 0; --i) v = v * z + c[i];
    return v;
  };
  auto evald = [&](cld z) {
    cld v = static_cast<long double>(d) * c[d];
    for (int i = d - 1; i >= 1; --i) v = v * z + static_cast<long double>(i) * c[i];
    return v;
  };
  auto abs_eval = [&](long double x) {
    long double v = ac[d];
    for (int i = d - 1; i >= 0; --i) v = v * x + ac[i];
    return v;
  };

  // Aberth iteration from points spread on the expected circle.
  std::vector<cld> z(d);
  const long double pi = 3.14159265358979323846264338327950288L;
  for (int i = 0; i < d; ++i) z[i] = std::polar(R, 2 * pi * i / d + 0.4L);
  for (int iter = 0; iter < 800; ++iter) {
    long double worst = 0;
    for (int i = 0; i < d; ++i) {
      cld pv = eval(z[i]), dv = evald(z[i]);
      if (pv == cld(0)) continue;
      cld ratio = pv / dv;
      cld sum = 0;
      for (int j = 0; j < d; ++j)
        if (j != i) sum += cld(1) / (z[i] - z[j]);
      cld w = ratio / (cld(1) - ratio * sum);
      z[i] -= w;
      worst = std::max(worst, std::abs(w) / std::max<long double>(1, std::abs(z[i])));
    }
    if (worst < 64 * u && iter > 8) break;
  }

  // Inclusion disks from Weierstrass corrections: if the disks
  // |z - z_i| <= d |W_i| are pairwise disjoint, each holds exactly one root.
  std::vector<long double> rad(d);
  for (int i = 0; i < d; ++i) {
    long double az = std::abs(z[i]);
    long double err = (8 * d + 4) * u * abs_eval(az);
    long double num = std::abs(eval(z[i])) + err;
    long double den = 1;
    for (int j = 0; j < d; ++j)
      if (j != i) den *= std::abs(z[i] - z[j]);
    den *= (1 - 4 * d * u);
    if (!(den > 0)) return RootCheck::Undecided;
    rad[i] = d * num / den * (1 + 1e-12L) + 4 * u * az;
  }
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      if (std::abs(z[i] - z[j]) * (1 - 4 * u) <= rad[i] + rad[j]) return RootCheck::Undecided;

  bool all = true;
  for (int i = 0; i < d; ++i) {
    long double m = std::abs(z[i]);
    if (m - rad[i] > R * (1 + 64 * u) || m + rad[i] < R * (1 - 64 * u)) return RootCheck::OffCircle;
    // image of the disk under z -> Q / conj(z)
    long double den = m * m - rad[i] * rad[i];
    if (!(den > 0)) {
      all = false;
      continue;
    }
    long double Ql = static_cast<long double>(Q.get_d());
    cld ic = z[i] * (Ql / den);
    long double ir = Ql * rad[i] / den * (1 + 64 * u) + 64 * u * std::abs(ic);
    for (int j = 0; j < d; ++j) {
      if (j == i) continue;
      if (std::abs(ic - z[j]) <= ir + rad[j]) {
        all = false;
        break;
      }
    }
    if (std::abs(ic - z[i]) > ir + rad[i]) all = false;
  }
  return all ? RootCheck::OnCircle : RootCheck::Undecided;
}

// Divides out x - R, x + R (R integral) or x^2 - Q, whose roots sit on the
// circle exactly.
QPoly strip_real_roots(QPoly s, const Integer& Q) {
  Integer R = isqrt_floor(Q);
  bool square = R * R == Q;
  std::vector<QPoly> known;
  if (square) {
    known.push_back({Rational(-R), Rational(1)});
    known.push_back({Rational(R), Rational(1)});
  } else {
    known.push_back({Rational(-Q), Rational(0), Rational(1)});
  }
  for (const QPoly& f : known) {
    if (s.size() >= f.size() && qrem(s, f).empty()) s = qdiv(s, f);
  }
  return s;
}

}  // namespace

std::string poly_to_string(const IntPoly& poly) {
  std::string out;
  for (int i = static_cast<int>(poly.size()) - 1; i >= 0; --i) {
    Integer c = poly[i];
    if (c == 0) continue;
    bool neg = c < 0;
    Integer a = neg ? Integer(-c) : c;
    if (out.empty()) out += neg ? "-" : "";
    else out += neg ? " - " : " + ";
    std::string mono = i == 0 ? "" : (i == 1 ? "x" : "x^" + std::to_string(i));
    if (i == 0) out += a.get_str();
    else if (a == 1) out += mono;
    else out += a.get_str() + "*" + mono;
  }
  return out.empty() ? "0" : out;
}

std::string WeilPolynomial::to_string() const { return poly_to_string(coefficients); }

bool poly_divides(const IntPoly& divisor, const IntPoly& poly) {
  QPoly d = to_q(divisor);
  if (d.empty()) return false;
  return qrem(to_q(poly), d).empty();
}

bool is_self_reciprocal(const IntPoly& poly, const Integer& Q) {
  const int n = static_cast<int>(poly.size()) - 1;
  // x^n P(Q/x) = sum a_i Q^i x^(n-i)
  for (int i = 0; i <= n; ++i) {
    Integer lhs = poly[i] * ipow(Q, static_cast<unsigned long>(i));
    Integer rhs = poly[0] * poly[n - i];
    if (lhs != rhs) return false;
  }
  return true;
}

std::int64_t prime_power_base(std::int64_t q) {
  if (q < 2) return 0;
  for (std::int64_t d = 2; d * d <= q; ++d) {
    if (q % d) continue;
    while (q % d == 0) q /= d;
    return q == 1 ? d : 0;
  }
  return q;
}

WeilEnumeration enumerate_weil(std::int64_t q, int k, int n) {
  if (prime_power_base(q) == 0) throw std::invalid_argument("q must be a prime power");
  if (k < 1) throw std::invalid_argument("weight must be at least 1");
  if (n < 1 || n > 6) throw std::invalid_argument("degree must lie in [1, 6]");
  static std::mutex mu;
  static std::map<std::tuple<std::int64_t, int, int>, WeilEnumeration> memo;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find({q, k, n});
    if (it != memo.end()) return it->second;
  }
  const Integer Q = ipow(Integer(static_cast<long>(q)), static_cast<unsigned long>(k));
  WeilEnumeration out;
  // |a_0| = Q^(n/2) must be an integer
  Integer top;
  bool exact = false;
  if (n % 2 == 0) {
    top = ipow(Q, static_cast<unsigned long>(n / 2));
    exact = true;
  } else {
    Integer R = isqrt_floor(Q);
    if (R * R == Q) {
      top = ipow(R, static_cast<unsigned long>(n));
      exact = true;
    }
  }
  if (!exact) return out;
  // R^(n - 2i) = Q^(n/2 - i), integral in both cases above
  auto half_power = [&](int e) {
    if (n % 2 == 0) return ipow(Q, static_cast<unsigned long>(e / 2));
    return ipow(isqrt_floor(Q), static_cast<unsigned long>(e));
  };
  const int h = n / 2;
  std::vector<Integer> bound(h + 1);
  for (int i = 1; i <= h; ++i) {
    Integer b = binom(n, i);
    bound[i] = isqrt_floor(b * b * ipow(Q, static_cast<unsigned long>(i)));
  }
  std::vector<WeilPolynomial> lower;  // certified polynomials of smaller degree
  for (int d = 1; d <= n / 2; ++d) {
    auto sub = enumerate_weil(q, k, d);
    lower.insert(lower.end(), sub.certified.begin(), sub.certified.end());
  }
  for (int sign : {-1, 1}) {
    Integer a0 = sign * top;
    // e_i denotes the coefficient of x^{n-i}; e_0 = 1, e_n = a0
    std::vector<Integer> e(n + 1);
    e[0] = 1;
    e[n] = a0;
    const int free_count = (sign < 0 && n % 2 == 0) ? h - 1 : h;
    std::vector<Integer> cur(free_count + 1);
    for (int i = 1; i <= free_count; ++i) cur[i] = -bound[i];
    while (true) {
      for (int i = 1; i <= h; ++i) e[i] = i <= free_count ? cur[i] : Integer(0);
      // reciprocity: e_{n-i} = sign * e_i * Q^(n/2 - i)
      for (int i = 1; i <= h; ++i)
        if (n - i != i) e[n - i] = sign * e[i] * half_power(n - 2 * i);
      if (n % 2 == 0 && sign < 0) e[h] = 0;
      IntPoly poly(n + 1);
      for (int i = 0; i <= n; ++i) poly[n - i] = e[i];
      bool ok = abs(poly[0]) == top && is_self_reciprocal(poly, Q);
      for (int i = 1; ok && i < n; ++i) {
        Integer b = binom(n, i);
        if (poly[n - i] * poly[n - i] > b * b * ipow(Q, static_cast<unsigned long>(i))) ok = false;
      }
      if (ok) {
        QPoly p = to_q(poly);
        QPoly g = qgcd(p, derivative(p));
        QPoly s = qdiv(p, g);
        s = strip_real_roots(s, Q);
        RootCheck rc = check_roots(s, Q);
        if (rc != RootCheck::OffCircle) {
          WeilPolynomial w{Integer(static_cast<long>(q)), k, n, poly, rc == RootCheck::OnCircle, true};
          if (w.certified) {
            for (const WeilPolynomial& f : lower)
              if (poly_divides(f.coefficients, poly)) {
                w.irreducible = false;
                break;
              }
            out.certified.push_back(w);
          } else {
            out.undecided.push_back(w);
          }
        }
      }
      int i = free_count;
      while (i >= 1 && cur[i] == bound[i]) {
        cur[i] = -bound[i];
        --i;
      }
      if (i < 1) break;
      ++cur[i];
    }
  }
  auto key = [](const WeilPolynomial& a, const WeilPolynomial& b) { return a.coefficients < b.coefficients; };
  std::sort(out.certified.begin(), out.certified.end(), key);
  std::sort(out.undecided.begin(), out.undecided.end(), key);
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(std::make_tuple(q, k, n), out);
  return out;
}

std::map<int, std::size_t> count_local_lfactors(std::int64_t q, int k, int n_max) {
  std::map<int, std::size_t> out;
  for (int n = 1; n <= n_max; ++n) out[n] = enumerate_weil(q, k, n).certified.size();
  return out;
}

HasseInterval hasse_interval(std::int64_t q) {
  if (prime_power_base(q) == 0) throw std::invalid_argument("q must be a prime power");
  Integer Q(static_cast<long>(q));
  Integer w = isqrt_floor(4 * Q);
  return {Q, Q + 1 - w, Q + 1 + w};
}

Integer hm_degree_threshold(int n, int d, std::int64_t p) {
  if (n < 1 || d < 1) throw std::invalid_argument("n and d must be positive");
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  return ipow(Integer(static_cast<long>(p)), static_cast<unsigned long>(2 * d * n * n));
}

}  // namespace galcert
