#pragma once

// Explicit finite matrix groups over F_p, inside GL(m, p) or the block group
// GL(m, p) x GL(1, p). Elements are packed into 64-bit keys, one nibble per
// entry in row-major order followed by the GL(1) unit, most significant
// nibble first; integer order on keys is lexicographic order on entries.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace galcert {

using Elem = std::uint64_t;

struct AmbientSpec {
  int p = 2;
  int m = 2;
  bool block = false;  // adjoin a GL(1, p) factor
  bool operator==(const AmbientSpec&) const = default;
  std::string to_string() const;  // "GL(2,5)" or "GL(2,5)xGL(1,5)"
};

std::uint64_t ambient_order(const AmbientSpec& spec);
// Order of GL(m, p) alone.
std::uint64_t gl_order(int m, int p);

struct Matrix {
  int p = 2;
  int m = 2;
  std::vector<int> entries;  // row-major, in [0, p)
  int unit = 1;              // GL(1) part; 1 when the ambient has no block
};

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The ambient group with arithmetic on keys. Construction enumerates the
// elements and their orders, so building one is not free; use ambient().
class Ambient {
 public:
  explicit Ambient(const AmbientSpec& spec);

  const AmbientSpec& spec() const { return spec_; }
  int p() const { return spec_.p; }
  int m() const { return spec_.m; }
  std::uint64_t order() const { return elements_.size(); }

  Elem identity() const { return identity_; }
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem pow(Elem a, std::uint64_t k) const;
  Elem conj(Elem x, Elem g) const { return mul(mul(x, g), inv(x)); }  // x g x^-1
  int det(Elem a) const;  // of the GL(m) block
  int unit(Elem a) const;
  int trace(Elem a) const;
  int entry(Elem a, int i, int j) const;
  // Characteristic polynomial coefficients of the GL(m) block (lowest first,
  // monic term omitted).
  std::vector<int> charpoly(Elem a) const;
  bool is_unipotent_block(Elem a) const;

  Elem encode(const Matrix& x) const;
  Matrix decode(Elem a) const;
  std::string format(Elem a) const;  // "[[1,2],[0,1]]" plus "|u" in block form
  Elem parse(const std::string& text) const;

  // All elements, sorted by key.
  const std::vector<Elem>& elements() const { return elements_; }
  std::uint64_t element_order(Elem a) const;
  // Elements of the given order, sorted.
  std::vector<Elem> elements_of_order(std::uint64_t k) const;
  bool contains(Elem a) const;
  // Position of a in elements(); throws for non-members.
  std::size_t index(Elem a) const;

 private:
  AmbientSpec spec_;
  int len_;
  Elem identity_;
  std::vector<Elem> elements_;
  std::vector<std::uint32_t> orders_;
  std::vector<std::int32_t> dense_;  // key -> index, when the key space is small
};

// Shared, lazily built ambient groups.
std::shared_ptr<const Ambient> ambient(const AmbientSpec& spec);

class Subgroup {
 public:
  Subgroup(std::shared_ptr<const Ambient> amb, std::vector<Elem> sorted_elements,
           std::vector<Elem> generators);

  const Ambient& ambient() const { return *amb_; }
  std::shared_ptr<const Ambient> ambient_ptr() const { return amb_; }
  const std::vector<Elem>& elements() const { return elements_; }
  const std::vector<Elem>& generators() const { return generators_; }
  std::uint64_t order() const { return elements_.size(); }
  bool contains(Elem a) const;
  bool operator==(const Subgroup& o) const { return elements_ == o.elements_; }

 private:
  std::shared_ptr<const Ambient> amb_;
  std::vector<Elem> elements_;
  std::vector<Elem> generators_;
};

constexpr std::uint64_t kDefaultCap = 10000;

Subgroup closure(std::shared_ptr<const Ambient> amb, const std::vector<Elem>& generators,
                 std::uint64_t cap = kDefaultCap);
// Closure that gives up (returns nullopt) once the group exceeds `limit`.
std::optional<Subgroup> closure_bounded(std::shared_ptr<const Ambient> amb,
                                        const std::vector<Elem>& generators,
                                        std::uint64_t limit);

std::optional<Elem> has_element_of_order(const AmbientSpec& spec, std::uint64_t k);

// Conjugacy-class representatives of subgroups of exact order n. Each
// representative is the lexicographically least element set in its class
// and results are sorted by that set. Empty when n does not divide the
// ambient order. Throws CapExceeded when n > cap.
std::vector<Subgroup> subgroups_of_order(const AmbientSpec& spec, std::uint64_t n,
                                         std::uint64_t cap = 64);

bool are_conjugate(const Subgroup& a, const Subgroup& b);
Subgroup conjugate(const Subgroup& h, Elem x);
// All x in the ambient with x h x^-1 = h.
Subgroup normalizer(const Subgroup& h);
// Size of the conjugacy class of h in the ambient.
std::uint64_t class_size(const Subgroup& h);

// Lines of F_p^2 stable under h, as normalized vectors (1, a) or (0, 1).
// Requires m = 2.
std::vector<std::pair<int, int>> invariant_lines(const Subgroup& h);
// Burnside criterion: the GL(m) blocks span all m x m matrices.
bool is_absolutely_irreducible(const Subgroup& h);
// Rank of the span of the GL(m) blocks.
int span_rank(const Subgroup& h);

bool is_subgroup_of(const Subgroup& k, const Subgroup& h);
bool is_normal(const Subgroup& h, const Subgroup& k);  // k normal in h
Subgroup sylow(const Subgroup& h, int ell);
Subgroup normal_core(const Subgroup& h, int ell);  // largest normal ell-subgroup of h
bool is_abelian(const Subgroup& h);
bool is_cyclic(const Subgroup& h);

struct FixedVectorReport {
  std::uint64_t core_order = 1;
  int fixed_dimension = 0;  // of the common fixed space of the core on F_p^m
  bool stable = false;      // fixed space stable under all of h
  bool vacuous() const { return core_order == 1; }
  // A nonzero proper h-stable subspace exists.
  bool reducible(int m) const { return !vacuous() && stable && fixed_dimension > 0 && fixed_dimension < m; }
};

FixedVectorReport check_fixed_vector_lemma(const Subgroup& h);

// Basis of the common fixed space of the GL(m) blocks of the given elements.
std::vector<std::vector<int>> fixed_space(const Ambient& amb, const std::vector<Elem>& gens);

// The least element of order p^2 - 1 in the GL(2, p) part (unit 1): a
// generator of F_{p^2}^* acting on F_{p^2} = F_p^2. Requires m = 2.
Elem singer_element(const Ambient& amb);

// Conjugation-invariant summary used to separate classes cheaply.
std::string class_signature(const Subgroup& h);

// Greedy canonical generators: the smallest elements, in key order, that
// enlarge the group generated so far.
std::vector<Elem> canonical_generators(const Subgroup& h);

}  // namespace galcert
