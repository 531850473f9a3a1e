#include "galcert/glgroup.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <tuple>
#include <unordered_map>

namespace galcert {

namespace {

int modp(long v, int p) {
  long r = v % p;
  return static_cast<int>(r < 0 ? r + p : r);
}

int inv_mod(int a, int p) {
  long r = 1, b = a, e = p - 2;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<int>(r);
}

int det_of(const int* a, int m, int p) {
  if (m == 1) return modp(a[0], p);
  if (m == 2) return modp(static_cast<long>(a[0]) * a[3] - static_cast<long>(a[1]) * a[2], p);
  long d = static_cast<long>(a[0]) * (a[4] * a[8] - a[5] * a[7]) -
           static_cast<long>(a[1]) * (a[3] * a[8] - a[5] * a[6]) +
           static_cast<long>(a[2]) * (a[3] * a[7] - a[4] * a[6]);
  return modp(d, p);
}

std::uint64_t unit_order(int u, int p) {
  std::uint64_t k = 1;
  long x = u;
  while (x != 1) {
    x = x * u % p;
    ++k;
  }
  return k;
}

// Row reduction over F_p; returns the rank and leaves rows in echelon form.
int row_reduce(std::vector<std::vector<int>>& rows, int p) {
  if (rows.empty()) return 0;
  int cols = static_cast<int>(rows[0].size());
  int rank = 0;
  for (int c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    int piv = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (rows[r][c] != 0) { piv = r; break; }
    if (piv < 0) continue;
    std::swap(rows[piv], rows[rank]);
    int iv = inv_mod(rows[rank][c], p);
    for (int& x : rows[rank]) x = static_cast<int>(static_cast<long>(x) * iv % p);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      long f = rows[r][c];
      for (int k = 0; k < cols; ++k) rows[r][k] = modp(rows[r][k] - f * rows[rank][k], p);
    }
    ++rank;
  }
  rows.resize(rank);
  return rank;
}

// Membership stamps over ambient indices; reused per thread.
struct Marks {
  std::vector<std::uint32_t> stamp;
  std::uint32_t gen = 0;
  void fresh(std::size_t n) {
    if (stamp.size() != n) {
      stamp.assign(n, 0);
      gen = 0;
    }
    if (++gen == 0) {
      std::fill(stamp.begin(), stamp.end(), 0);
      gen = 1;
    }
  }
};

Marks& marks_for(const Ambient* amb) {
  thread_local std::unordered_map<const Ambient*, Marks> table;
  return table[amb];
}

}  // namespace

std::string AmbientSpec::to_string() const {
  std::string s = "GL(" + std::to_string(m) + "," + std::to_string(p) + ")";
  if (block) s += "xGL(1," + std::to_string(p) + ")";
  return s;
}

std::uint64_t gl_order(int m, int p) {
  std::uint64_t pm = 1;
  for (int i = 0; i < m; ++i) pm *= static_cast<std::uint64_t>(p);
  std::uint64_t out = 1, pi = 1;
  for (int i = 0; i < m; ++i) {
    out *= pm - pi;
    pi *= static_cast<std::uint64_t>(p);
  }
  return out;
}

std::uint64_t ambient_order(const AmbientSpec& spec) {
  return gl_order(spec.m, spec.p) * (spec.block ? static_cast<std::uint64_t>(spec.p - 1) : 1);
}

Ambient::Ambient(const AmbientSpec& spec) : spec_(spec) {
  if (!(spec.p >= 2 && spec.p <= 13) || spec.m < 1 || spec.m > 3)
    throw std::invalid_argument("ambient must have p <= 13 and m <= 3");
  for (int d = 2; d * d <= spec.p; ++d)
    if (spec.p % d == 0) throw std::invalid_argument("p must be prime");
  if (gl_order(spec.m, spec.p) > 4000000) throw std::invalid_argument("ambient too large to enumerate");
  const int p = spec.p, m = spec.m, mm = m * m;
  len_ = mm + (spec.block ? 1 : 0);
  Matrix id{p, m, std::vector<int>(mm, 0), 1};
  for (int i = 0; i < m; ++i) id.entries[i * m + i] = 1;
  identity_ = encode(id);

  std::vector<Elem> blocks;
  std::vector<int> e(mm, 0);
  std::uint64_t total = 1;
  for (int i = 0; i < mm; ++i) total *= static_cast<std::uint64_t>(p);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (int i = mm - 1; i >= 0; --i) {
      e[i] = static_cast<int>(c % p);
      c /= p;
    }
    if (det_of(e.data(), m, p) == 0) continue;
    Elem k = 0;
    for (int i = 0; i < mm; ++i) k = (k << 4) | static_cast<Elem>(e[i]);
    blocks.push_back(k);
  }
  std::sort(blocks.begin(), blocks.end());
  // block orders, computed once
  std::vector<std::uint32_t> bord(blocks.size());
  {
    // multiply blocks alone by temporarily dropping the unit nibble
    const int full_len = len_;
    const Elem full_id = identity_;
    len_ = mm;
    identity_ = full_id >> (spec.block ? 4 : 0);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      Elem x = blocks[i];
      std::uint32_t k = 1;
      while (x != identity_) {
        x = mul(x, blocks[i]);
        ++k;
      }
      bord[i] = k;
    }
    len_ = full_len;
    identity_ = full_id;
  }
  if (spec.block) {
    for (std::size_t i = 0; i < blocks.size(); ++i)
      for (int u = 1; u < p; ++u) {
        elements_.push_back((blocks[i] << 4) | static_cast<Elem>(u));
        orders_.push_back(static_cast<std::uint32_t>(std::lcm<std::uint64_t>(bord[i], unit_order(u, p))));
      }
  } else {
    elements_ = blocks;
    orders_ = bord;
  }
  if (len_ <= 5) {
    dense_.assign(std::size_t(1) << (4 * len_), -1);
    for (std::size_t i = 0; i < elements_.size(); ++i) dense_[elements_[i]] = static_cast<std::int32_t>(i);
  }
}

std::size_t Ambient::index(Elem a) const {
  if (!dense_.empty()) {
    if (a >= dense_.size() || dense_[a] < 0) throw std::invalid_argument("not an ambient element");
    return static_cast<std::size_t>(dense_[a]);
  }
  auto it = std::lower_bound(elements_.begin(), elements_.end(), a);
  if (it == elements_.end() || *it != a) throw std::invalid_argument("not an ambient element");
  return static_cast<std::size_t>(it - elements_.begin());
}

bool Ambient::contains(Elem a) const {
  if (!dense_.empty()) return a < dense_.size() && dense_[a] >= 0;
  return std::binary_search(elements_.begin(), elements_.end(), a);
}

Elem Ambient::mul(Elem a, Elem b) const {
  const int p = spec_.p, m = spec_.m;
  int A[9], B[9];
  int shift = 4 * (len_ - 1);
  for (int i = 0; i < m * m; ++i, shift -= 4) {
    A[i] = static_cast<int>((a >> shift) & 15);
    B[i] = static_cast<int>((b >> shift) & 15);
  }
  Elem out = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int s = 0;
      for (int k = 0; k < m; ++k) s += A[i * m + k] * B[k * m + j];
      out = (out << 4) | static_cast<Elem>(s % p);
    }
  if (len_ > m * m) {
    int u = static_cast<int>((a & 15) * (b & 15) % static_cast<Elem>(p));
    out = (out << 4) | static_cast<Elem>(u);
  }
  return out;
}

Elem Ambient::inv(Elem a) const {
  const int p = spec_.p, m = spec_.m;
  Matrix x = decode(a);
  int d = det_of(x.entries.data(), m, p);
  int di = inv_mod(d, p);
  Matrix y = x;
  const auto& e = x.entries;
  if (m == 1) {
    y.entries[0] = di;
  } else if (m == 2) {
    y.entries = {e[3], modp(-e[1], p), modp(-e[2], p), e[0]};
    for (int& v : y.entries) v = static_cast<int>(static_cast<long>(v) * di % p);
  } else {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        // cofactor of (j, i)
        int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
        long c = static_cast<long>(e[r0 * 3 + c0]) * e[r1 * 3 + c1] -
                 static_cast<long>(e[r0 * 3 + c1]) * e[r1 * 3 + c0];
        y.entries[i * 3 + j] = modp(c % p * di, p);
      }
  }
  y.unit = inv_mod(x.unit, p);
  return encode(y);
}

Elem Ambient::pow(Elem a, std::uint64_t k) const {
  Elem r = identity_, b = a;
  while (k > 0) {
    if (k & 1) r = mul(r, b);
    b = mul(b, b);
    k >>= 1;
  }
  return r;
}

int Ambient::entry(Elem a, int i, int j) const {
  int pos = i * spec_.m + j;
  return static_cast<int>((a >> (4 * (len_ - 1 - pos))) & 15);
}

int Ambient::det(Elem a) const {
  Matrix x = decode(a);
  return det_of(x.entries.data(), spec_.m, spec_.p);
}

int Ambient::unit(Elem a) const { return spec_.block ? static_cast<int>(a & 15) : 1; }

int Ambient::trace(Elem a) const {
  int s = 0;
  for (int i = 0; i < spec_.m; ++i) s += entry(a, i, i);
  return s % spec_.p;
}

std::vector<int> Ambient::charpoly(Elem a) const {
  const int p = spec_.p, m = spec_.m;
  Matrix x = decode(a);
  const auto& e = x.entries;
  int t = trace(a), d = det(a);
  if (m == 1) return {modp(-d, p)};
  if (m == 2) return {d, modp(-t, p)};
  long c2 = static_cast<long>(e[0]) * e[4] - static_cast<long>(e[1]) * e[3] +
            static_cast<long>(e[0]) * e[8] - static_cast<long>(e[2]) * e[6] +
            static_cast<long>(e[4]) * e[8] - static_cast<long>(e[5]) * e[7];
  return {modp(-d, p), modp(c2, p), modp(-t, p)};
}

bool Ambient::is_unipotent_block(Elem a) const {
  // (g - 1)^m = 0
  const int p = spec_.p, m = spec_.m;
  std::vector<long> n(m * m), acc(m * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) n[i * m + j] = modp(entry(a, i, j) - (i == j ? 1 : 0), p);
  acc = n;
  for (int step = 1; step < m; ++step) {
    std::vector<long> next(m * m, 0);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        long s = 0;
        for (int k = 0; k < m; ++k) s += acc[i * m + k] * n[k * m + j];
        next[i * m + j] = s % p;
      }
    acc = next;
  }
  return std::all_of(acc.begin(), acc.end(), [](long v) { return v == 0; });
}

Elem Ambient::encode(const Matrix& x) const {
  if (x.m != spec_.m || static_cast<int>(x.entries.size()) != spec_.m * spec_.m)
    throw std::invalid_argument("matrix shape does not match ambient");
  Elem k = 0;
  for (int v : x.entries) k = (k << 4) | static_cast<Elem>(modp(v, spec_.p));
  if (spec_.block) k = (k << 4) | static_cast<Elem>(modp(x.unit, spec_.p));
  return k;
}

Matrix Ambient::decode(Elem a) const {
  Matrix x{spec_.p, spec_.m, std::vector<int>(spec_.m * spec_.m), 1};
  for (int i = 0; i < spec_.m * spec_.m; ++i) x.entries[i] = static_cast<int>((a >> (4 * (len_ - 1 - i))) & 15);
  if (spec_.block) x.unit = static_cast<int>(a & 15);
  return x;
}

std::string Ambient::format(Elem a) const {
  std::ostringstream os;
  const int m = spec_.m;
  os << "[";
  for (int i = 0; i < m; ++i) {
    os << (i ? ",[" : "[");
    for (int j = 0; j < m; ++j) os << (j ? "," : "") << entry(a, i, j);
    os << "]";
  }
  os << "]";
  if (spec_.block) os << "|" << unit(a);
  return os.str();
}

Elem Ambient::parse(const std::string& text) const {
  Matrix x{spec_.p, spec_.m, {}, 1};
  std::string body = text;
  auto bar = body.find('|');
  if (bar != std::string::npos) {
    if (!spec_.block) throw std::invalid_argument("unit given for a plain ambient: " + text);
    x.unit = std::stoi(body.substr(bar + 1));
    body = body.substr(0, bar);
  } else if (spec_.block) {
    throw std::invalid_argument("missing unit in '" + text + "'");
  }
  std::string num;
  for (char c : body) {
    if (c >= '0' && c <= '9') {
      num += c;
    } else if (c == ',' || c == ']') {
      if (!num.empty()) x.entries.push_back(std::stoi(num));
      num.clear();
    } else if (c != '[' && c != ' ') {
      throw std::invalid_argument("malformed matrix '" + text + "'");
    }
  }
  if (static_cast<int>(x.entries.size()) != spec_.m * spec_.m) throw std::invalid_argument("malformed matrix '" + text + "'");
  for (int v : x.entries)
    if (v < 0 || v >= spec_.p) throw std::invalid_argument("entry out of range in '" + text + "'");
  if (x.unit <= 0 || x.unit >= spec_.p) throw std::invalid_argument("unit out of range in '" + text + "'");
  Elem k = encode(x);
  if (!contains(k)) throw std::invalid_argument("singular matrix '" + text + "'");
  return k;
}

std::uint64_t Ambient::element_order(Elem a) const { return orders_[index(a)]; }

std::vector<Elem> Ambient::elements_of_order(std::uint64_t k) const {
  std::vector<Elem> out;
  for (std::size_t i = 0; i < elements_.size(); ++i)
    if (orders_[i] == k) out.push_back(elements_[i]);
  return out;
}

std::shared_ptr<const Ambient> ambient(const AmbientSpec& spec) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, bool>, std::shared_ptr<const Ambient>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(spec.p, spec.m, spec.block);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto amb = std::make_shared<const Ambient>(spec);
  cache.emplace(key, amb);
  return amb;
}

Subgroup::Subgroup(std::shared_ptr<const Ambient> amb, std::vector<Elem> sorted_elements,
                   std::vector<Elem> generators)
    : amb_(std::move(amb)), elements_(std::move(sorted_elements)), generators_(std::move(generators)) {}

bool Subgroup::contains(Elem a) const { return std::binary_search(elements_.begin(), elements_.end(), a); }

namespace {

std::optional<Subgroup> closure_impl(const std::shared_ptr<const Ambient>& amb, const std::vector<Elem>& gens,
                                     std::uint64_t limit) {
  const Ambient& A = *amb;
  Marks& mk = marks_for(&A);
  mk.fresh(A.order());
  std::vector<Elem> elems{A.identity()};
  auto mark = [&](Elem e) -> bool {
    std::size_t i = A.index(e);
    if (mk.stamp[i] == mk.gen) return false;
    mk.stamp[i] = mk.gen;
    return true;
  };
  mark(A.identity());
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (Elem g : gens) {
      Elem y = A.mul(elems[head], g);
      if (mark(y)) {
        elems.push_back(y);
        if (elems.size() > limit) return std::nullopt;
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  return Subgroup(amb, std::move(elems), gens);
}

}  // namespace

Subgroup closure(std::shared_ptr<const Ambient> amb, const std::vector<Elem>& generators, std::uint64_t cap) {
  auto r = closure_impl(amb, generators, cap);
  if (!r) throw CapExceeded("closure exceeds the order cap of " + std::to_string(cap));
  return *r;
}

std::optional<Subgroup> closure_bounded(std::shared_ptr<const Ambient> amb, const std::vector<Elem>& generators,
                                        std::uint64_t limit) {
  return closure_impl(amb, generators, limit);
}

std::optional<Elem> has_element_of_order(const AmbientSpec& spec, std::uint64_t k) {
  auto amb = ambient(spec);
  for (Elem e : amb->elements())
    if (amb->element_order(e) == k) return e;
  return std::nullopt;
}

Subgroup conjugate(const Subgroup& h, Elem x) {
  const Ambient& A = h.ambient();
  Elem xi = A.inv(x);
  std::vector<Elem> out;
  out.reserve(h.order());
  for (Elem e : h.elements()) out.push_back(A.mul(A.mul(x, e), xi));
  std::sort(out.begin(), out.end());
  std::vector<Elem> gens;
  for (Elem g : h.generators()) gens.push_back(A.mul(A.mul(x, g), xi));
  return Subgroup(h.ambient_ptr(), std::move(out), std::move(gens));
}

namespace {

bool conjugates_into(const Ambient& A, Elem x, const std::vector<Elem>& gens, const Subgroup& target) {
  Elem xi = A.inv(x);
  for (Elem g : gens)
    if (!target.contains(A.mul(A.mul(x, g), xi))) return false;
  return true;
}

std::vector<Elem> gens_or_all(const Subgroup& h) {
  if (!h.generators().empty() || h.order() == 1) return h.generators();
  return h.elements();
}

}  // namespace

Subgroup normalizer(const Subgroup& h) {
  const Ambient& A = h.ambient();
  std::vector<Elem> gens = gens_or_all(h);
  std::vector<Elem> out;
  for (Elem x : A.elements())
    if (conjugates_into(A, x, gens, h)) out.push_back(x);
  return Subgroup(h.ambient_ptr(), std::move(out), {});
}

std::uint64_t class_size(const Subgroup& h) { return h.ambient().order() / normalizer(h).order(); }

bool are_conjugate(const Subgroup& a, const Subgroup& b) {
  if (a.order() != b.order()) return false;
  if (a.elements() == b.elements()) return true;
  const Ambient& A = a.ambient();
  std::vector<Elem> gens = gens_or_all(a);
  for (Elem x : A.elements())
    if (conjugates_into(A, x, gens, b)) return true;
  return false;
}

std::string class_signature(const Subgroup& h) {
  const Ambient& A = h.ambient();
  std::map<std::vector<int>, int> counts;
  for (Elem e : h.elements()) {
    std::vector<int> key{static_cast<int>(A.element_order(e)), A.unit(e)};
    for (int c : A.charpoly(e)) key.push_back(c);
    ++counts[key];
  }
  std::ostringstream os;
  os << h.order();
  for (auto& [k, c] : counts) {
    os << ";";
    for (int v : k) os << v << ",";
    os << "x" << c;
  }
  return os.str();
}

std::vector<Elem> canonical_generators(const Subgroup& h) {
  std::vector<Elem> gens;
  Subgroup cur = closure(h.ambient_ptr(), {}, h.order());
  for (Elem e : h.elements()) {
    if (cur.order() == h.order()) break;
    if (cur.contains(e)) continue;
    gens.push_back(e);
    cur = closure(h.ambient_ptr(), gens, h.order());
  }
  return gens;
}

namespace {

// Lexicographically least conjugate of h, iterating over cosets of N(h).
Subgroup least_conjugate(const Subgroup& h) {
  const Ambient& A = h.ambient();
  Subgroup n = normalizer(h);
  std::vector<char> seen(A.order(), 0);
  std::vector<Elem> best = h.elements();
  for (std::size_t i = 0; i < A.elements().size(); ++i) {
    if (seen[i]) continue;
    Elem x = A.elements()[i];
    for (Elem y : n.elements()) {
      seen[A.index(A.mul(x, y))] = 1;
    }
    Subgroup c = conjugate(h, x);
    if (c.elements() < best) best = c.elements();
  }
  Subgroup rep(h.ambient_ptr(), best, {});
  return Subgroup(h.ambient_ptr(), best, canonical_generators(rep));
}

struct SearchKey {
  int p, m;
  bool block;
  std::uint64_t n;
  bool operator<(const SearchKey& o) const {
    return std::tie(p, m, block, n) < std::tie(o.p, o.m, o.block, o.n);
  }
};

}  // namespace

std::vector<Subgroup> subgroups_of_order(const AmbientSpec& spec, std::uint64_t n, std::uint64_t cap) {
  if (n > cap) throw CapExceeded("subgroup order " + std::to_string(n) + " exceeds the search cap of " + std::to_string(cap));
  if (n == 0 || ambient_order(spec) % n != 0) return {};
  static std::mutex mu;
  static std::map<SearchKey, std::vector<Subgroup>> memo;
  SearchKey key{spec.p, spec.m, spec.block, n};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  auto amb = ambient(spec);
  const Ambient& A = *amb;
  std::vector<Elem> cands;
  for (Elem e : A.elements())
    if (n % A.element_order(e) == 0) cands.push_back(e);

  // Worklist over conjugacy classes of subgroups whose order divides n. Any
  // subgroup of order n is reached from some class representative H by
  // adjoining one of its elements; conjugating by N(H) permutes those
  // choices, so one candidate per N(H)-orbit suffices.
  std::map<std::string, std::vector<Subgroup>> known;
  std::deque<Subgroup> work;
  std::vector<Subgroup> found;
  Subgroup trivial = closure(amb, {}, 1);
  known[class_signature(trivial)].push_back(trivial);
  if (n == 1) found.push_back(trivial);
  else work.push_back(trivial);

  while (!work.empty()) {
    Subgroup h = work.front();
    work.pop_front();
    std::vector<Elem> ngens;
    if (h.order() == 1) {
      // N(1) is the whole ambient
      Subgroup cur = closure(amb, {}, 1);
      for (Elem e : A.elements()) {
        if (cur.order() == A.order()) break;
        if (cur.contains(e)) continue;
        ngens.push_back(e);
        cur = closure(amb, ngens, A.order());
      }
    } else {
      ngens = canonical_generators(normalizer(h));
    }
    std::vector<Elem> ngens_inv;
    for (Elem x : ngens) ngens_inv.push_back(A.inv(x));
    std::vector<char> done(cands.size(), 0);
    for (std::size_t i = 0; i < cands.size(); ++i) {
      if (done[i] || h.contains(cands[i])) continue;
      // orbit of cands[i] under conjugation by N(h)
      std::vector<std::size_t> orbit{i};
      done[i] = 1;
      for (std::size_t k = 0; k < orbit.size(); ++k) {
        Elem g = cands[orbit[k]];
        for (std::size_t t = 0; t < ngens.size(); ++t) {
          Elem c = A.mul(A.mul(ngens[t], g), ngens_inv[t]);
          auto it = std::lower_bound(cands.begin(), cands.end(), c);
          std::size_t j = static_cast<std::size_t>(it - cands.begin());
          if (!done[j]) {
            done[j] = 1;
            orbit.push_back(j);
          }
        }
      }
      std::vector<Elem> gens = h.generators();
      gens.push_back(cands[i]);
      auto k = closure_bounded(amb, gens, n);
      if (!k || n % k->order() != 0) continue;
      std::string sig = class_signature(*k);
      auto& bucket = known[sig];
      bool seen = false;
      for (const Subgroup& other : bucket)
        if (are_conjugate(*k, other)) { seen = true; break; }
      if (seen) continue;
      bucket.push_back(*k);
      if (k->order() == n) found.push_back(*k);
      else work.push_back(*k);
    }
  }
  std::vector<Subgroup> out;
  for (const Subgroup& k : found) out.push_back(least_conjugate(k));
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) { return a.elements() < b.elements(); });
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(key, out);
  return out;
}

std::vector<std::pair<int, int>> invariant_lines(const Subgroup& h) {
  const Ambient& A = h.ambient();
  if (A.m() != 2) throw std::invalid_argument("invariant_lines needs m = 2");
  const int p = A.p();
  std::vector<std::pair<int, int>> lines;
  for (int a = 0; a < p; ++a) lines.emplace_back(1, a);
  lines.emplace_back(0, 1);
  std::vector<Elem> gens = gens_or_all(h);
  std::vector<std::pair<int, int>> out;
  for (auto [x, y] : lines) {
    bool ok = true;
    for (Elem g : gens) {
      long gx = A.entry(g, 0, 0) * x + A.entry(g, 0, 1) * y;
      long gy = A.entry(g, 1, 0) * x + A.entry(g, 1, 1) * y;
      if (modp(gx * y - gy * x, p) != 0) { ok = false; break; }
    }
    if (ok) out.emplace_back(x, y);
  }
  return out;
}

int span_rank(const Subgroup& h) {
  const Ambient& A = h.ambient();
  const int m = A.m();
  std::vector<std::vector<int>> rows;
  int rank = 0;
  for (Elem e : h.elements()) {
    std::vector<int> v(m * m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) v[i * m + j] = A.entry(e, i, j);
    rows.push_back(v);
    rank = row_reduce(rows, A.p());
    if (rank == m * m) break;
  }
  return rank;
}

bool is_absolutely_irreducible(const Subgroup& h) { return span_rank(h) == h.ambient().m() * h.ambient().m(); }

bool is_subgroup_of(const Subgroup& k, const Subgroup& h) {
  return std::includes(h.elements().begin(), h.elements().end(), k.elements().begin(), k.elements().end());
}

bool is_normal(const Subgroup& h, const Subgroup& k) {
  if (!is_subgroup_of(k, h)) throw std::invalid_argument("is_normal: k is not contained in h");
  const Ambient& A = h.ambient();
  std::vector<Elem> kg = gens_or_all(k);
  std::vector<Elem> hg = gens_or_all(h);
  for (Elem x : hg)
    if (!conjugates_into(A, x, kg, k)) return false;
  return true;
}

bool is_abelian(const Subgroup& h) {
  const Ambient& A = h.ambient();
  std::vector<Elem> g = gens_or_all(h);
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j)
      if (A.mul(g[i], g[j]) != A.mul(g[j], g[i])) return false;
  return true;
}

bool is_cyclic(const Subgroup& h) {
  for (Elem e : h.elements())
    if (h.ambient().element_order(e) == h.order()) return true;
  return false;
}

namespace {

bool is_power_of(std::uint64_t x, std::uint64_t ell) {
  while (x > 1 && x % ell == 0) x /= ell;
  return x == 1;
}

}  // namespace

Subgroup sylow(const Subgroup& h, int ell) {
  if (ell < 2 || h.order() % static_cast<std::uint64_t>(ell) != 0)
    throw std::invalid_argument("sylow: " + std::to_string(ell) + " does not divide the group order");
  std::uint64_t target = 1, rest = h.order();
  while (rest % static_cast<std::uint64_t>(ell) == 0) {
    rest /= static_cast<std::uint64_t>(ell);
    target *= static_cast<std::uint64_t>(ell);
  }
  const Ambient& A = h.ambient();
  Subgroup P = closure(h.ambient_ptr(), {}, 1);
  // an ell-subgroup that is not Sylow has a strictly larger ell-subgroup
  // containing it as a normal subgroup, so greedy extension terminates
  while (P.order() < target) {
    bool grown = false;
    for (Elem e : h.elements()) {
      if (P.contains(e) || !is_power_of(A.element_order(e), static_cast<std::uint64_t>(ell))) continue;
      std::vector<Elem> gens = P.generators();
      gens.push_back(e);
      auto Q = closure_bounded(h.ambient_ptr(), gens, target);
      if (Q && is_power_of(Q->order(), static_cast<std::uint64_t>(ell))) {
        P = *Q;
        grown = true;
        break;
      }
    }
    if (!grown) throw std::logic_error("sylow: extension failed");
  }
  return P;
}

Subgroup normal_core(const Subgroup& h, int ell) {
  if (h.order() % static_cast<std::uint64_t>(ell) != 0) return closure(h.ambient_ptr(), {}, 1);
  Subgroup P = sylow(h, ell);
  std::vector<Elem> core = P.elements();
  for (Elem x : h.elements()) {
    Subgroup c = conjugate(P, x);
    std::vector<Elem> next;
    std::set_intersection(core.begin(), core.end(), c.elements().begin(), c.elements().end(), std::back_inserter(next));
    core.swap(next);
    if (core.size() == 1) break;
  }
  Subgroup K(h.ambient_ptr(), core, {});
  return Subgroup(h.ambient_ptr(), core, canonical_generators(K));
}

std::vector<std::vector<int>> fixed_space(const Ambient& A, const std::vector<Elem>& gens) {
  const int p = A.p(), m = A.m();
  std::vector<std::vector<int>> rows;
  for (Elem g : gens)
    for (int i = 0; i < m; ++i) {
      std::vector<int> r(m);
      for (int j = 0; j < m; ++j) r[j] = modp(A.entry(g, i, j) - (i == j ? 1 : 0), p);
      rows.push_back(r);
    }
  int rank = rows.empty() ? 0 : row_reduce(rows, p);
  // nullspace from reduced echelon form
  std::vector<int> pivot_col;
  for (const auto& r : rows) {
    int c = 0;
    while (c < m && r[c] == 0) ++c;
    pivot_col.push_back(c);
  }
  std::vector<std::vector<int>> basis;
  for (int free = 0; free < m; ++free) {
    if (std::find(pivot_col.begin(), pivot_col.end(), free) != pivot_col.end()) continue;
    std::vector<int> v(m, 0);
    v[free] = 1;
    for (int r = 0; r < rank; ++r) v[pivot_col[r]] = modp(-rows[r][free], p);
    basis.push_back(v);
  }
  return basis;
}

FixedVectorReport check_fixed_vector_lemma(const Subgroup& h) {
  const Ambient& A = h.ambient();
  const int p = A.p(), m = A.m();
  FixedVectorReport rep;
  Subgroup core = normal_core(h, p);
  rep.core_order = core.order();
  if (core.order() == 1) return rep;
  auto basis = fixed_space(A, gens_or_all(core));
  rep.fixed_dimension = static_cast<int>(basis.size());
  rep.stable = true;
  for (Elem g : gens_or_all(h)) {
    for (const auto& v : basis) {
      std::vector<int> gv(m, 0);
      for (int i = 0; i < m; ++i) {
        long s = 0;
        for (int j = 0; j < m; ++j) s += static_cast<long>(A.entry(g, i, j)) * v[j];
        gv[i] = modp(s, p);
      }
      std::vector<std::vector<int>> rows = basis;
      rows.push_back(gv);
      if (row_reduce(rows, p) != static_cast<int>(basis.size())) rep.stable = false;
    }
  }
  return rep;
}

Elem singer_element(const Ambient& A) {
  if (A.m() != 2) throw std::invalid_argument("singer_element needs m = 2");
  const std::uint64_t k = static_cast<std::uint64_t>(A.p()) * A.p() - 1;
  for (Elem e : A.elements())
    if (A.unit(e) == 1 && A.element_order(e) == k) return e;
  throw std::logic_error("no element of order p^2 - 1");
}

}  // namespace galcert
