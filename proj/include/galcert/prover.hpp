#pragma once

// Rule-based non-existence proofs for mod-p Galois representations, their
// line-oriented certificates, and an independent checker.

#include "galcert/bounds.hpp"
#include "galcert/glgroup.hpp"
#include "galcert/minorations.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace galcert {

enum class Target { Irreducible, AbsolutelyIrreducible };

struct Scenario {
  int p = 5;
  int m = 2;
  int r = 1;  // Hodge-Tate weight at p; r = 1 is finite flat
  std::set<std::int64_t> S;
  bool odd = false;
  Target target = Target::Irreducible;
  bool semistable = true;  // at the primes of S

  std::string to_string() const;  // "p=5 m=2 r=1 S=- odd=1 target=irreducible semistable=1"
  static Scenario parse(const std::string& text);
  // Throws std::invalid_argument unless p is prime, 1 <= r <= p - 1, m >= 2
  // and S is a set of primes other than p.
  void validate() const;
  bool operator==(const Scenario&) const = default;
};

// The named scenarios: unramified outside p and finite flat with odd
// two-dimensional target; weight two with absolutely irreducible target;
// semistable at 2.
Scenario weight_one_scenario(int p);
Scenario weight_two_scenario(int p);
Scenario semistable_at_two_scenario(int p);

struct Step {
  int id = 0;
  std::string rule;
  std::string branch;
  std::vector<int> inputs;
  std::string claim;
  std::vector<std::pair<std::string, std::string>> witness;
  std::string cite;

  const std::string* find(const std::string& key) const;
  const std::string& at(const std::string& key) const;  // throws when absent
  bool operator==(const Step&) const = default;
};

struct Verdict {
  bool nonexistence = false;
  std::vector<std::string> open;  // surviving cases when inconclusive
  std::string to_string() const { return nonexistence ? "NonExistence" : "Inconclusive"; }
  bool operator==(const Verdict&) const = default;
};

struct Certificate {
  std::string kind = "representation";  // or "elliptic-curve"
  Scenario scenario;
  std::vector<Step> steps;
  Verdict verdict;

  std::string serialize() const;
  // Strict parser; throws std::invalid_argument with a line number.
  static Certificate parse(const std::string& text);
  bool operator==(const Certificate&) const = default;
};

// Class number one for Q(zeta_p), recorded with its source.
struct ArithmeticFacts {
  static bool class_number_one(int p);
  static std::string source();
};

struct ProverOptions {
  std::uint64_t subgroup_cap = 128;
};

struct ProofResult {
  Verdict verdict;
  Certificate certificate;
};

ProofResult prove(const Scenario& s, const MinorationTable& t, const ProverOptions& opt = {});

// No elliptic curve over Q has good reduction everywhere, via the 5-torsion:
// the weight-one pipeline at p = 5 pins the torsion field to Q(zeta_5), and
// reduction at a prime of small residue field contradicts the Hasse bound.
ProofResult prove_elliptic_curve(int p, const MinorationTable& t, const ProverOptions& opt = {});

struct CheckResult {
  bool ok = false;
  int failing_step = 0;  // 0 when the failure is global
  std::string reason;
};

CheckResult check_certificate(const Certificate& c, const MinorationTable& t, const ProverOptions& opt = {});

// Surviving degrees after the tame re-derivation, per branch label.
std::vector<std::pair<std::string, std::vector<int>>> tame_survivors(const Certificate& c);

}  // namespace galcert
