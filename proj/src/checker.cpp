// Certificate checker. Every step is re-derived from the scenario, the table
// and the group routines; nothing in a step's witness is trusted except the
// fields that name what the step is about (branch, degree, class, prime).

#include "galcert/prover.hpp"

#include "rules.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace galcert {

namespace {

using rules::join;

struct Reject {
  int step;
  std::string reason;
};

[[noreturn]] void reject(int step, const std::string& why) { throw Reject{step, why}; }

std::string bit(bool b) { return b ? "1" : "0"; }

std::string target_name(Target t) { return t == Target::Irreducible ? "irreducible" : "absolutely-irreducible"; }

int mult_order(int a, int p) {
  int x = ((a % p) + p) % p, k = 1;
  if (x == 0) return 0;
  for (int y = x; y != 1; y = y * x % p) ++k;
  return k;
}

int parse_int(int step, const std::string& s) {
  try {
    size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size() || std::to_string(v) != s || v < 0 || v > 1000000000) throw std::invalid_argument(s);
    return static_cast<int>(v);
  } catch (const std::exception&) {
    reject(step, "bad integer '" + s + "'");
  }
}

struct DegreeState {
  int source = 0;
  int search = 0;
  std::vector<Subgroup> admissible;
  std::set<int> closed_classes;
  bool closed = false;
};

struct BranchState {
  std::set<std::int64_t> ramified;
  int bound_step = 0, degree_step = 0, div_step = 0, split_step = 0, tame_step = 0, r5 = 0, close_step = 0;
  bool beyond = false;
  std::vector<int> degrees, tame, wild, survivors;
  std::set<std::int64_t> tame_done;
  std::map<int, DegreeState> per_degree;
  std::vector<int> closers;
  std::vector<std::string> open;  // from the close step
};

class Checker {
 public:
  Checker(const Certificate& c, const MinorationTable& t, const ProverOptions& opt) : c_(c), s_(c.scenario), t_(t), opt_(opt) {}

  void run() {
    try {
      s_.validate();
    } catch (const std::invalid_argument& e) {
      reject(0, std::string("invalid scenario: ") + e.what());
    }
    elliptic_ = c_.kind == "elliptic-curve";
    if (!elliptic_ && c_.kind != "representation") reject(0, "unknown kind");
    if (elliptic_ && !(s_ == weight_one_scenario(s_.p))) reject(0, "elliptic-curve certificates use the weight-one scenario");
    for (std::size_t i = 0; i < c_.steps.size(); ++i) {
      const Step& st = c_.steps[i];
      if (st.id != static_cast<int>(i) + 1) reject(st.id, "step ids must be 1, 2, 3, ...");
      for (int in : st.inputs)
        if (in < 1 || in >= st.id) reject(st.id, "input " + std::to_string(in) + " does not precede the step");
      std::string cite;
      try {
        cite = rules::citation(st.rule);
      } catch (const std::invalid_argument&) {
        reject(st.id, "unknown rule '" + st.rule + "'");
      }
      if (st.cite != cite) reject(st.id, "citation does not match the rule");
      if (st.claim != rules::render_claim(st.rule, st.witness)) reject(st.id, "claim does not match the witness");
      step(st);
    }
    coverage();
  }

 private:
  const Certificate& c_;
  Scenario s_;
  const MinorationTable& t_;
  ProverOptions opt_;
  bool elliptic_ = false;
  int r0_ = 0, rcyc_ = 0;
  bool det_ = false;
  AmbientSpec amb_;
  std::map<std::string, BranchState> br_;
  int field_step_ = 0;
  std::int64_t last_ell_ = 0;
  bool contradiction_ = false;

  const std::string& wit(const Step& st, const std::string& key) {
    const std::string* v = st.find(key);
    if (!v) reject(st.id, "missing witness '" + key + "'");
    return *v;
  }

  void expect(const Step& st, const std::vector<int>& inputs, const rules::Witness& w, const std::string& branch) {
    if (st.branch != branch) reject(st.id, "expected branch '" + branch + "'");
    if (st.inputs != inputs) reject(st.id, "inputs should be " + join(inputs));
    if (st.witness.size() != w.size()) reject(st.id, "witness has the wrong fields");
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (st.witness[i].first != w[i].first) reject(st.id, "witness field '" + w[i].first + "' out of place");
      if (st.witness[i].second != w[i].second)
        reject(st.id, "witness " + w[i].first + " should be " + w[i].second + ", found " + st.witness[i].second);
    }
  }

  BranchState& branch_of(const Step& st) {
    auto it = br_.find(st.branch);
    if (it == br_.end()) reject(st.id, "branch '" + st.branch + "' has no bound step");
    if (it->second.close_step) reject(st.id, "branch already closed");
    return it->second;
  }

  bool r5_applies(const BranchState& b) const { return b.ramified.empty() && ArithmeticFacts::class_number_one(s_.p); }

  bool fails_target(const Subgroup& h) const {
    if (s_.target == Target::Irreducible) return s_.m == 2 && !invariant_lines(h).empty();
    return span_rank(h) < s_.m * s_.m;
  }

  bool admissible(const Subgroup& h, bool inertia_needed) const {
    const Ambient& A = h.ambient();
    std::vector<bool> hit(static_cast<std::size_t>(s_.p), false);
    int distinct = 0;
    bool inertia = !inertia_needed, involution = !s_.odd;
    for (Elem e : h.elements()) {
      int x = det_ ? A.det(e) : A.unit(e);
      if (!hit[static_cast<std::size_t>(x)]) {
        hit[static_cast<std::size_t>(x)] = true;
        ++distinct;
      }
      auto o = A.element_order(e);
      if (o == static_cast<std::uint64_t>(s_.p) && A.unit(e) == 1 && A.is_unipotent_block(e)) inertia = true;
      if (o == 2 && A.det(e) == s_.p - 1 && (det_ || A.unit(e) == s_.p - 1)) involution = true;
    }
    return distinct == s_.p - 1 && inertia && involution;
  }

  void step(const Step& st) {
    const std::string& r = st.rule;
    if (r == "R0.scenario") {
      if (st.id != 1) reject(st.id, "the scenario step comes first");
      r0_ = st.id;
      expect(st, {},
             {{"p", std::to_string(s_.p)},
              {"m", std::to_string(s_.m)},
              {"r", std::to_string(s_.r)},
              {"S", join(s_.S)},
              {"odd", bit(s_.odd)},
              {"target", target_name(s_.target)},
              {"semistable", bit(s_.semistable)}},
             "root");
      return;
    }
    if (!r0_) reject(st.id, "scenario step missing");
    if (r == "R2.cyclotomic") {
      if (rcyc_) reject(st.id, "repeated cyclotomic step");
      if (s_.p == 2) reject(st.id, "Q(zeta_2) is not totally imaginary");
      det_ = s_.m == 2 && s_.r == 1 && s_.S.empty();
      amb_ = AmbientSpec{s_.p, s_.m, !det_};
      rcyc_ = st.id;
      expect(st, {r0_},
             {{"p", std::to_string(s_.p)},
              {"mode", det_ ? "det" : "block"},
              {"ambient", amb_.to_string()},
              {"ambient_order", std::to_string(ambient_order(amb_))},
              {"gl_order", std::to_string(gl_order(s_.m, s_.p))}},
             "root");
      return;
    }
    if (!rcyc_) reject(st.id, "cyclotomic step missing");
    if (r == "R1.bound") return bound(st);
    BranchState& b = branch_of(st);
    if (r == "R2.degree") return degree(st, b);
    if (!b.degree_step) reject(st.id, "degree step missing");
    if (r == "R9.close") return close(st, b);
    if (b.beyond) reject(st.id, "no degrees to treat in an unbounded branch");
    if (r == "R3.divisibility") return divisibility(st, b);
    if (!b.div_step) reject(st.id, "divisibility step missing");
    if (r == "R3b.tame") return tame(st, b);
    if (r == "R4.split") return split(st, b);
    if (!b.split_step) reject(st.id, "split step missing");
    if (r == "R4.tame_bound") return tame_bound(st, b);
    if (elliptic_) {
      if (r == "RW.field") return field(st, b);
      if (r == "RW.reduction") return reduction(st, b);
      reject(st.id, "rule " + r + " is not used for elliptic curves");
    }
    if (r == "R5.total_ramification") return total_ramification(st, b);
    if (r == "R6.cyclic") return cyclic(st, b);
    if (r == "R7.kernel" || r == "R7.search") return group_start(st, b);
    if (r == "R7.auxfield" || r == "R8.fixed_vector" || r == "R7.reducible") return group_class(st, b);
    reject(st.id, "rule " + r + " is not allowed here");
  }

  void bound(const Step& st) {
    std::vector<int> ram;
    try {
      ram = rules::split_ints(wit(st, "ramified"));
    } catch (const std::invalid_argument&) {
      reject(st.id, "bad ramified set");
    }
    std::set<std::int64_t> rs(ram.begin(), ram.end());
    if (join(rs) != wit(st, "ramified")) reject(st.id, "ramified set must be sorted");
    for (auto q : rs)
      if (!s_.S.count(q)) reject(st.id, "ramified prime outside S");
    if (elliptic_ && !rs.empty()) reject(st.id, "good reduction everywhere means no ramified primes");
    std::string label = rules::branch_label(rs);
    if (br_.count(label)) reject(st.id, "repeated branch");
    ExactBound B = fontaine_bound(s_.p, s_.r, rs);
    expect(st, {r0_}, {{"ramified", join(rs)}, {"bound", B.to_string()}, {"digits", decimal_digits(B, 2)}}, label);
    BranchState& b = br_[label];
    b.ramified = rs;
    b.bound_step = st.id;
  }

  void degree(const Step& st, BranchState& b) {
    if (b.degree_step) reject(st.id, "repeated degree step");
    ExactBound B = fontaine_bound(s_.p, s_.r, b.ramified);
    DegreeBound d = max_admissible_degree(t_, B);
    expect(st, {b.bound_step, rcyc_}, {{"bound", B.to_string()}, {"max_degree", d.to_string()}}, st.branch);
    b.degree_step = st.id;
    b.beyond = d.beyond_table;
    if (!d.beyond_table) b.degrees.push_back(d.degree);  // stash until divisibility
  }

  void divisibility(const Step& st, BranchState& b) {
    if (b.div_step) reject(st.id, "repeated divisibility step");
    int nmax = b.degrees.back();
    b.degrees.clear();
    std::int64_t d = s_.p - 1;
    if (!b.ramified.empty()) d = d / std::gcd<std::int64_t>(d, s_.p) * s_.p;
    std::uint64_t ord = ambient_order(amb_);
    std::vector<int> excluded;
    for (int n = static_cast<int>(d); n <= nmax; n += static_cast<int>(d))
      (ord % static_cast<std::uint64_t>(n) == 0 ? b.degrees : excluded).push_back(n);
    expect(st, {b.degree_step},
           {{"max_degree", std::to_string(nmax)},
            {"divisor", std::to_string(d)},
            {"gl_order", std::to_string(gl_order(s_.m, s_.p))},
            {"ambient_order", std::to_string(ord)},
            {"excluded", join(excluded)},
            {"degrees", join(b.degrees)}},
           st.branch);
    b.div_step = st.id;
  }

  void tame(const Step& st, BranchState& b) {
    int q = parse_int(st.id, wit(st, "q"));
    if (!b.ramified.count(q)) reject(st.id, "q is not ramified in this branch");
    if (!b.tame_done.insert(q).second) reject(st.id, "repeated tameness step");
    std::uint64_t ord = ambient_order(amb_);
    bool divides = ord % static_cast<std::uint64_t>(q) == 0;
    if (divides && !s_.semistable) reject(st.id, "q divides the ambient order and no semistability is assumed");
    expect(st, {r0_, rcyc_},
           {{"q", std::to_string(q)},
            {"ambient_order", std::to_string(ord)},
            {"divides", bit(divides)},
            {"reason", divides ? "semistable, inertia unipotent of order prime to q" : "q does not divide the ambient order"}},
           st.branch);
  }

  void split(const Step& st, BranchState& b) {
    if (b.split_step) reject(st.id, "repeated split step");
    if (b.tame_done.size() != b.ramified.size()) reject(st.id, "tameness at the primes of S not established");
    for (int n : b.degrees) (n % s_.p == 0 ? b.wild : b.tame).push_back(n);
    expect(st, {b.div_step}, {{"p", std::to_string(s_.p)}, {"tame", join(b.tame)}, {"wild", join(b.wild)}}, st.branch);
    b.split_step = st.id;
  }

  void tame_bound(const Step& st, BranchState& b) {
    if (b.tame_step) reject(st.id, "repeated tame bound");
    if (b.tame.empty()) reject(st.id, "no tame degrees");
    Integer crude = s_.p;
    for (auto q : b.ramified) crude *= static_cast<long>(q);
    ExactBound B{Rational(crude)};
    DegreeBound d = max_admissible_degree(t_, B);
    for (int n : b.tame)
      if (d.beyond_table || n <= d.degree) b.survivors.push_back(n);
    expect(st, {b.split_step, rcyc_},
           {{"bound", B.to_string()}, {"max_degree", d.to_string()}, {"survivors", join(b.survivors)}}, st.branch);
    b.tame_step = st.id;
  }

  void total_ramification(const Step& st, BranchState& b) {
    if (b.r5) reject(st.id, "repeated step");
    if (!b.tame_step || b.survivors.empty()) reject(st.id, "no surviving tame degrees");
    if (!r5_applies(b)) reject(st.id, "needs an unramified branch and class number one");
    expect(st, {b.tame_step}, {{"p", std::to_string(s_.p)}, {"class_number", "1"}, {"degrees", join(b.survivors)}},
           st.branch);
    b.r5 = st.id;
  }

  DegreeState& open_degree(const Step& st, BranchState& b, int n) {
    DegreeState& d = b.per_degree[n];
    if (d.closed) reject(st.id, "degree " + std::to_string(n) + " already closed");
    return d;
  }

  void cyclic(const Step& st, BranchState& b) {
    if (!b.r5) reject(st.id, "total ramification step missing");
    int n = parse_int(st.id, wit(st, "degree"));
    if (std::find(b.survivors.begin(), b.survivors.end(), n) == b.survivors.end()) reject(st.id, "not a surviving degree");
    DegreeState& d = open_degree(st, b, n);
    if (d.search) reject(st.id, "degree already under group search");
    auto A = ambient(amb_);
    std::size_t count = 0;
    for (Elem g : A->elements_of_order(static_cast<std::uint64_t>(n))) {
      if (mult_order(det_ ? A->det(g) : A->unit(g), s_.p) != s_.p - 1) continue;
      if (s_.odd) {
        if (n % 2) continue;
        Elem c = A->pow(g, static_cast<std::uint64_t>(n / 2));
        if (A->det(c) != s_.p - 1) continue;
        if (!det_ && A->unit(c) != s_.p - 1) continue;
      }
      ++count;
      if (!fails_target(closure(A, {g}, static_cast<std::uint64_t>(n))))
        reject(st.id, "cyclic image generated by " + A->format(g) + " satisfies the target");
    }
    expect(st, {b.r5, rcyc_},
           {{"degree", std::to_string(n)},
            {"property", target_name(s_.target)},
            {"odd", bit(s_.odd)},
            {"candidates", std::to_string(count)},
            {"closes", std::to_string(n)}},
           st.branch);
    d.closed = true;
    b.closers.push_back(st.id);
  }

  void group_start(const Step& st, BranchState& b) {
    int n = parse_int(st.id, wit(st, "degree"));
    bool is_wild = std::find(b.wild.begin(), b.wild.end(), n) != b.wild.end();
    bool is_surv = std::find(b.survivors.begin(), b.survivors.end(), n) != b.survivors.end();
    if (!is_wild && !(is_surv && !r5_applies(b))) reject(st.id, "degree " + std::to_string(n) + " is not open to a group search");
    DegreeState& d = open_degree(st, b, n);
    if (d.search) reject(st.id, "repeated search");
    int source = is_wild ? b.split_step : b.tame_step;
    std::string deg = std::to_string(n);
    try {
      if (st.rule == "R7.kernel") {
        std::uint64_t k = static_cast<std::uint64_t>(n) / static_cast<std::uint64_t>(s_.p - 1);
        AmbientSpec ks{s_.p, s_.m, false};
        if (k > opt_.subgroup_cap) reject(st.id, "kernel order beyond the search cap");
        if (!subgroups_of_order(ks, k, opt_.subgroup_cap).empty()) reject(st.id, "a kernel subgroup exists");
        auto e = has_element_of_order(ks, k);
        expect(st, {source},
               {{"degree", deg},
                {"kernel_order", std::to_string(k)},
                {"kernel_ambient", ks.to_string()},
                {"kernel_classes", "0"},
                {"element_of_kernel_order", e ? ambient(ks)->format(*e) : "none"},
                {"closes", deg}},
               st.branch);
        d.closed = true;
        b.closers.push_back(st.id);
        return;
      }
      auto all = subgroups_of_order(amb_, static_cast<std::uint64_t>(n), opt_.subgroup_cap);
      for (const Subgroup& h : all)
        if (admissible(h, !b.ramified.empty())) d.admissible.push_back(h);
    } catch (const CapExceeded&) {
      reject(st.id, "subgroup order beyond the search cap");
    }
    rules::Witness w{{"degree", deg},
                     {"ambient", amb_.to_string()},
                     {"classes", std::to_string(subgroups_of_order(amb_, static_cast<std::uint64_t>(n), opt_.subgroup_cap).size())},
                     {"admissible", std::to_string(d.admissible.size())}};
    const Ambient& A = *ambient(amb_);
    for (std::size_t i = 0; i < d.admissible.size(); ++i) {
      std::string gens;
      for (Elem g : d.admissible[i].generators()) gens += (gens.empty() ? "" : ";") + A.format(g);
      w.emplace_back("class." + std::to_string(i + 1), gens.empty() ? "-" : gens);
    }
    if (d.admissible.empty()) w.emplace_back("closes", deg);
    expect(st, {source}, w, st.branch);
    d.search = st.id;
    if (d.admissible.empty()) {
      d.closed = true;
      b.closers.push_back(st.id);
    }
  }

  void group_class(const Step& st, BranchState& b) {
    int n = parse_int(st.id, wit(st, "degree"));
    auto it = b.per_degree.find(n);
    if (it == b.per_degree.end() || !it->second.search) reject(st.id, "no search for this degree");
    DegreeState& d = it->second;
    int i = parse_int(st.id, wit(st, "class"));
    if (i < 1 || i > static_cast<int>(d.admissible.size())) reject(st.id, "no such class");
    if (d.closed_classes.count(i)) reject(st.id, "class already closed");
    const Subgroup& h = d.admissible[static_cast<std::size_t>(i - 1)];
    std::string deg = std::to_string(n), cls = std::to_string(i), tag = deg + ":" + cls;
    if (st.rule == "R7.auxfield") {
      if (n % s_.p) reject(st.id, "order prime to p");
      Subgroup P = sylow(h, s_.p);
      if (!is_normal(h, P)) reject(st.id, "Sylow subgroup not normal");
      DegreeBound mx = max_admissible_degree(t_, ExactBound(Rational(s_.p)));
      std::uint64_t aux = h.order() / P.order();
      if (mx.beyond_table || aux <= static_cast<std::uint64_t>(mx.degree)) reject(st.id, "auxiliary degree is admissible");
      expect(st, {d.search, rcyc_},
             {{"degree", deg},
              {"class", cls},
              {"p", std::to_string(s_.p)},
              {"sylow_order", std::to_string(P.order())},
              {"normal", "1"},
              {"aux_bound", std::to_string(s_.p)},
              {"aux_max_degree", mx.to_string()},
              {"aux_degree", std::to_string(aux)},
              {"closes", tag}},
             st.branch);
    } else if (st.rule == "R8.fixed_vector") {
      FixedVectorReport rep = check_fixed_vector_lemma(h);
      if (!rep.reducible(s_.m)) reject(st.id, "no stable proper fixed space");
      expect(st, {d.search},
             {{"degree", deg},
              {"class", cls},
              {"p", std::to_string(s_.p)},
              {"core_order", std::to_string(rep.core_order)},
              {"fixed_dimension", std::to_string(rep.fixed_dimension)},
              {"stable", "1"},
              {"closes", tag}},
             st.branch);
    } else {
      if (!fails_target(h)) reject(st.id, "class satisfies the target");
      expect(st, {d.search},
             {{"degree", deg},
              {"class", cls},
              {"property", target_name(s_.target)},
              {"invariant_lines", s_.m == 2 ? std::to_string(invariant_lines(h).size()) : "-"},
              {"span_rank", std::to_string(span_rank(h))},
              {"closes", tag}},
             st.branch);
    }
    d.closed_classes.insert(i);
    if (d.closed_classes.size() == d.admissible.size()) d.closed = true;
    b.closers.push_back(st.id);
  }

  std::vector<int> closed_degrees(const BranchState& b) const {
    std::vector<int> out;
    for (int n : b.degrees) {
      bool tame_gone = std::find(b.tame.begin(), b.tame.end(), n) != b.tame.end() &&
                       std::find(b.survivors.begin(), b.survivors.end(), n) == b.survivors.end();
      auto it = b.per_degree.find(n);
      if (tame_gone || (it != b.per_degree.end() && it->second.closed)) out.push_back(n);
    }
    return out;
  }

  void close(const Step& st, BranchState& b) {
    if (elliptic_) reject(st.id, "elliptic-curve certificates close through the reduction steps");
    if (!b.beyond) {
      if (!b.split_step) reject(st.id, "split step missing");
      if (!b.tame.empty() && !b.tame_step) reject(st.id, "tame bound missing");
    }
    std::vector<int> inputs{b.degree_step};
    inputs.insert(inputs.end(), b.closers.begin(), b.closers.end());
    std::vector<int> closed = closed_degrees(b);
    bool all = !b.beyond && closed.size() == b.degrees.size();
    const std::string& open = wit(st, "open");
    if (all != (open == "-")) reject(st.id, all ? "every case is closed" : "open cases are not listed");
    expect(st, inputs, {{"branch", st.branch}, {"closed", join(closed)}, {"open", open}}, st.branch);
    if (!all) {
      std::size_t pos = 0;
      while (true) {
        auto nx = open.find("; ", pos);
        b.open.push_back(open.substr(pos, nx - pos));
        if (nx == std::string::npos) break;
        pos = nx + 2;
      }
    }
    b.close_step = st.id;
  }

  void field(const Step& st, BranchState& b) {
    if (field_step_) reject(st.id, "repeated field step");
    if (!b.tame_step || !b.wild.empty() || b.survivors != std::vector<int>{s_.p - 1})
      reject(st.id, "the torsion field is not pinned down to Q(zeta_p)");
    expect(st, {b.tame_step, b.split_step, rcyc_},
           {{"p", std::to_string(s_.p)}, {"degree", std::to_string(s_.p - 1)}, {"torsion", std::to_string(s_.p * s_.p)}},
           st.branch);
    field_step_ = st.id;
  }

  void reduction(const Step& st, BranchState&) {
    if (!field_step_) reject(st.id, "field step missing");
    if (contradiction_) reject(st.id, "steps after the contradiction");
    std::int64_t ell = last_ell_ + 1;
    while (!is_prime(ell) || ell == s_.p) ++ell;
    if (wit(st, "ell") != std::to_string(ell)) reject(st.id, "reduction primes are taken in order; expected " + std::to_string(ell));
    int f = mult_order(static_cast<int>(ell % s_.p), s_.p);
    Integer q = ipow(Integer(static_cast<long>(ell)), static_cast<unsigned>(f));
    // Hasse: |#E(F_q) - q - 1| <= 2 sqrt q, and E[p] injects into E(F_q)
    Integer lo = q + 1, hi = q + 1;
    Integer w = 0;
    while ((w + 1) * (w + 1) <= 4 * q) w += 1;
    lo -= w;
    hi += w;
    bool contra = Integer(s_.p * s_.p) > hi;
    expect(st, {field_step_},
           {{"ell", std::to_string(ell)},
            {"residue_degree", std::to_string(f)},
            {"residue_field", q.get_str()},
            {"torsion", std::to_string(s_.p * s_.p)},
            {"hasse_min", lo.get_str()},
            {"hasse_max", hi.get_str()},
            {"contradiction", bit(contra)}},
           st.branch);
    last_ell_ = ell;
    contradiction_ = contra;
  }

  void coverage() {
    std::vector<std::string> open;
    if (!r0_) reject(0, "empty certificate");
    if (s_.p == 2) {
      if (c_.steps.size() != 1) reject(0, "p = 2 admits no further steps");
      open.push_back("root: Q(zeta_2) = Q gives no totally imaginary subfield");
    } else if (elliptic_) {
      if (!contradiction_) open.push_back(field_step_ ? "no reduction prime gave a contradiction" : "torsion field not pinned down");
      if (!rcyc_) reject(0, "cyclotomic step missing");
    } else {
      if (!rcyc_) reject(0, "cyclotomic step missing");
      std::vector<std::int64_t> qs(s_.S.begin(), s_.S.end());
      for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << qs.size()); ++mask) {
        std::set<std::int64_t> ram;
        for (std::size_t i = 0; i < qs.size(); ++i)
          if (mask >> i & 1) ram.insert(qs[i]);
        std::string label = rules::branch_label(ram);
        auto it = br_.find(label);
        if (it == br_.end() || !it->second.close_step) reject(0, "branch " + label + " is not closed");
        for (const std::string& o : it->second.open) open.push_back(label + " " + o);
      }
    }
    Verdict v{open.empty(), open};
    if (!(c_.verdict == v)) reject(0, "verdict should be " + v.to_string());
  }
};

}  // namespace

CheckResult check_certificate(const Certificate& c, const MinorationTable& t, const ProverOptions& opt) {
  try {
    Checker(c, t, opt).run();
  } catch (const Reject& r) {
    return {false, r.step, r.reason};
  } catch (const std::exception& e) {
    return {false, 0, e.what()};
  }
  return {true, 0, ""};
}

}  // namespace galcert
