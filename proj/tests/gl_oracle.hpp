#pragma once

// Independent 2x2 arithmetic over F_p for the group oracles.

#include <array>
#include <set>
#include <vector>

namespace gl_oracle {

using M2 = std::array<int, 4>;

inline M2 mul(const M2& a, const M2& b, int p) {
  return {(a[0] * b[0] + a[1] * b[2]) % p, (a[0] * b[1] + a[1] * b[3]) % p, (a[2] * b[0] + a[3] * b[2]) % p,
          (a[2] * b[1] + a[3] * b[3]) % p};
}

inline int det(const M2& a, int p) { return ((a[0] * a[3] - a[1] * a[2]) % p + p) % p; }

inline std::vector<M2> brute_gl2(int p) {
  std::vector<M2> out;
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b)
      for (int c = 0; c < p; ++c)
        for (int d = 0; d < p; ++d)
          if (det({a, b, c, d}, p)) out.push_back({a, b, c, d});
  return out;
}

inline int brute_order(const M2& g, int p) {
  M2 x = g;
  int k = 1;
  while (x != M2{1, 0, 0, 1}) {
    x = mul(x, g, p);
    ++k;
  }
  return k;
}

inline M2 inverse(const M2& g, int p) {
  M2 x = g;
  M2 prev{1, 0, 0, 1};
  while (x != M2{1, 0, 0, 1}) {
    prev = x;
    x = mul(x, g, p);
  }
  return prev;
}

inline std::set<M2> brute_closure(const std::vector<M2>& gens, int p) {
  std::set<M2> seen{{1, 0, 0, 1}};
  std::vector<M2> todo{{1, 0, 0, 1}};
  while (!todo.empty()) {
    M2 x = todo.back();
    todo.pop_back();
    for (const M2& g : gens) {
      M2 y = mul(x, g, p);
      if (seen.insert(y).second) todo.push_back(y);
    }
  }
  return seen;
}

}  // namespace gl_oracle
