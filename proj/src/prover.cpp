#include "galcert/prover.hpp"

#include "rules.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace galcert {

using rules::join;

// ---------------------------------------------------------------- scenario

std::string Scenario::to_string() const {
  std::ostringstream os;
  os << "p=" << p << " m=" << m << " r=" << r << " S=" << join(S) << " odd=" << (odd ? 1 : 0)
     << " target=" << (target == Target::Irreducible ? "irreducible" : "absolutely-irreducible")
     << " semistable=" << (semistable ? 1 : 0);
  return os.str();
}

Scenario Scenario::parse(const std::string& text) {
  Scenario s;
  std::istringstream is(text);
  std::string tok;
  std::set<std::string> seen;
  while (is >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("malformed scenario field '" + tok + "'");
    std::string k = tok.substr(0, eq), v = tok.substr(eq + 1);
    if (!seen.insert(k).second) throw std::invalid_argument("repeated scenario field '" + k + "'");
    auto as_int = [&](const std::string& x) {
      size_t used = 0;
      int out = std::stoi(x, &used);
      if (used != x.size() || std::to_string(out) != x) throw std::invalid_argument("bad integer '" + x + "'");
      return out;
    };
    auto as_bool = [&](const std::string& x) {
      if (x != "0" && x != "1") throw std::invalid_argument("bad flag '" + x + "'");
      return x == "1";
    };
    if (k == "p") s.p = as_int(v);
    else if (k == "m") s.m = as_int(v);
    else if (k == "r") s.r = as_int(v);
    else if (k == "S") {
      s.S.clear();
      for (int q : rules::split_ints(v)) s.S.insert(q);
      if (join(s.S) != v) throw std::invalid_argument("S must be sorted without repeats");
    } else if (k == "odd") s.odd = as_bool(v);
    else if (k == "semistable") s.semistable = as_bool(v);
    else if (k == "target") {
      if (v == "irreducible") s.target = Target::Irreducible;
      else if (v == "absolutely-irreducible") s.target = Target::AbsolutelyIrreducible;
      else throw std::invalid_argument("bad target '" + v + "'");
    } else {
      throw std::invalid_argument("unknown scenario field '" + k + "'");
    }
  }
  for (const char* k : {"p", "m", "r", "S", "odd", "target", "semistable"})
    if (!seen.count(k)) throw std::invalid_argument(std::string("scenario lacks field '") + k + "'");
  return s;
}

void Scenario::validate() const {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (m < 2) throw std::invalid_argument("dimension must be at least 2");
  if (r < 1 || r > p - 1) throw std::invalid_argument("weight must lie in [1, p-1]");
  for (auto q : S) {
    if (!is_prime(q)) throw std::invalid_argument("S must contain primes");
    if (q == p) throw std::invalid_argument("p must not lie in S");
  }
  if (!S.empty() && !semistable) throw std::invalid_argument("ramification at S must be semistable");
}

Scenario weight_one_scenario(int p) {
  Scenario s;
  s.p = p;
  s.odd = true;
  return s;
}

Scenario weight_two_scenario(int p) {
  Scenario s;
  s.p = p;
  s.r = 2;
  s.target = Target::AbsolutelyIrreducible;
  return s;
}

Scenario semistable_at_two_scenario(int p) {
  Scenario s;
  s.p = p;
  s.S = {2};
  return s;
}

// ---------------------------------------------------------------- certificate

const std::string* Step::find(const std::string& key) const {
  for (const auto& [k, v] : witness)
    if (k == key) return &v;
  return nullptr;
}

const std::string& Step::at(const std::string& key) const {
  const std::string* v = find(key);
  if (!v) throw std::invalid_argument("step " + std::to_string(id) + " lacks witness '" + key + "'");
  return *v;
}

std::string Certificate::serialize() const {
  std::ostringstream os;
  os << "galcert-certificate 1\n";
  os << "kind " << kind << "\n";
  os << "scenario " << scenario.to_string() << "\n";
  for (const Step& st : steps) {
    os << "step " << st.id << "\n";
    os << "rule " << st.rule << "\n";
    os << "branch " << st.branch << "\n";
    os << "inputs " << join(st.inputs) << "\n";
    os << "claim " << st.claim << "\n";
    for (const auto& [k, v] : st.witness) os << "witness " << k << "=" << v << "\n";
    os << "cite " << st.cite << "\n";
    os << "end\n";
  }
  os << "verdict " << verdict.to_string() << "\n";
  for (const std::string& o : verdict.open) os << "open " << o << "\n";
  return os.str();
}

Certificate Certificate::parse(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  auto next = [&](std::string& out) {
    if (!std::getline(is, out)) return false;
    ++lineno;
    return true;
  };
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("certificate line " + std::to_string(lineno) + ": " + what);
  };
  auto field = [&](const std::string& key) {
    std::string l;
    if (!next(l)) fail("unexpected end, expected '" + key + "'");
    if (l.rfind(key + " ", 0) != 0) fail("expected '" + key + "'");
    return l.substr(key.size() + 1);
  };
  Certificate c;
  if (!next(line) || line != "galcert-certificate 1") fail("missing header");
  c.kind = field("kind");
  if (c.kind != "representation" && c.kind != "elliptic-curve") fail("unknown kind");
  try {
    c.scenario = Scenario::parse(field("scenario"));
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  bool have_verdict = false;
  while (next(line)) {
    if (line.rfind("step ", 0) == 0) {
      if (have_verdict) fail("step after verdict");
      Step st;
      try {
        st.id = std::stoi(line.substr(5));
        if (std::to_string(st.id) != line.substr(5)) fail("bad step id");
        st.rule = field("rule");
        st.branch = field("branch");
        st.inputs = rules::split_ints(field("inputs"));
      } catch (const std::invalid_argument& e) {
        fail(e.what());
      }
      st.claim = field("claim");
      while (true) {
        std::string l;
        if (!next(l)) fail("unterminated step");
        if (l.rfind("witness ", 0) == 0) {
          std::string kv = l.substr(8);
          auto eq = kv.find('=');
          if (eq == std::string::npos || eq == 0) fail("malformed witness");
          st.witness.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
        } else if (l.rfind("cite ", 0) == 0) {
          st.cite = l.substr(5);
          std::string e;
          if (!next(e) || e != "end") fail("expected 'end'");
          break;
        } else {
          fail("unexpected line in step");
        }
      }
      c.steps.push_back(std::move(st));
    } else if (line.rfind("verdict ", 0) == 0) {
      if (have_verdict) fail("repeated verdict");
      std::string v = line.substr(8);
      if (v == "NonExistence") c.verdict.nonexistence = true;
      else if (v == "Inconclusive") c.verdict.nonexistence = false;
      else fail("unknown verdict");
      have_verdict = true;
    } else if (line.rfind("open ", 0) == 0) {
      if (!have_verdict) fail("open case before verdict");
      c.verdict.open.push_back(line.substr(5));
    } else {
      fail("unexpected line");
    }
  }
  if (!have_verdict) fail("missing verdict");
  return c;
}

bool ArithmeticFacts::class_number_one(int p) {
  static const std::set<int> h1 = {2, 3, 5, 7, 11, 13, 17, 19};
  return h1.count(p) > 0;
}

std::string ArithmeticFacts::source() {
  return "Washington, Introduction to Cyclotomic Fields, class number tables";
}

// ---------------------------------------------------------------- planner

namespace {

std::string flag(bool b) { return b ? "1" : "0"; }

std::string property_name(Target t) {
  return t == Target::Irreducible ? "irreducible" : "absolutely-irreducible";
}

std::int64_t order_mod(std::int64_t a, std::int64_t p) {
  std::int64_t x = a % p, k = 1;
  while (x != 1) {
    x = x * (a % p) % p;
    ++k;
  }
  return k;
}

class Planner {
 public:
  Planner(const Scenario& s, const MinorationTable& t, const ProverOptions& opt) : s_(s), t_(t), opt_(opt) {
    cert_.scenario = s;
  }

  int add(const std::string& rule, const std::string& branch, std::vector<int> inputs, rules::Witness w) {
    Step st;
    st.id = static_cast<int>(cert_.steps.size()) + 1;
    st.rule = rule;
    st.branch = branch;
    st.inputs = std::move(inputs);
    st.claim = rules::render_claim(rule, w);
    st.witness = std::move(w);
    st.cite = rules::citation(rule);
    cert_.steps.push_back(std::move(st));
    return cert_.steps.back().id;
  }

  // Root steps. Returns false when no totally imaginary subfield is available.
  bool root() {
    r0_ = add("R0.scenario", "root", {},
              {{"p", std::to_string(s_.p)},
               {"m", std::to_string(s_.m)},
               {"r", std::to_string(s_.r)},
               {"S", join(s_.S)},
               {"odd", flag(s_.odd)},
               {"target", property_name(s_.target)},
               {"semistable", flag(s_.semistable)}});
    if (s_.p == 2) {
      open_.push_back("root: Q(zeta_2) = Q gives no totally imaginary subfield");
      return false;
    }
    det_mode_ = s_.m == 2 && s_.r == 1 && s_.S.empty();
    amb_ = AmbientSpec{s_.p, s_.m, !det_mode_};
    rcyc_ = add("R2.cyclotomic", "root", {r0_},
                {{"p", std::to_string(s_.p)},
                 {"mode", det_mode_ ? "det" : "block"},
                 {"ambient", amb_.to_string()},
                 {"ambient_order", std::to_string(ambient_order(amb_))},
                 {"gl_order", std::to_string(gl_order(s_.m, s_.p))}});
    return true;
  }

  struct Branch {
    std::string label;
    std::set<std::int64_t> ramified;
    int degree_step = 0;
    int split_step = 0;
    int tame_step = 0;
    std::vector<int> degrees, tame, wild, survivors;
    std::vector<int> closers;
    std::vector<std::string> open;
    bool unbounded = false;
  };

  Branch run_front(const std::set<std::int64_t>& ramified) {
    Branch b;
    b.ramified = ramified;
    b.label = rules::branch_label(ramified);
    ExactBound bound = fontaine_bound(s_.p, s_.r, ramified);
    int r1 = add("R1.bound", b.label, {r0_},
                 {{"ramified", join(ramified)}, {"bound", bound.to_string()}, {"digits", decimal_digits(bound, 2)}});
    DegreeBound db = max_admissible_degree(t_, bound);
    b.degree_step = add("R2.degree", b.label, {r1, rcyc_}, {{"bound", bound.to_string()}, {"max_degree", db.to_string()}});
    if (db.beyond_table) {
      b.unbounded = true;
      b.open.push_back("degree not bounded by the table");
      return b;
    }
    // divisibility
    std::int64_t divisor = s_.p - 1;
    if (!ramified.empty()) divisor = std::lcm<std::int64_t>(divisor, s_.p);
    std::uint64_t ord = ambient_order(amb_);
    std::vector<int> excluded;
    for (int n = 1; n <= db.degree; ++n) {
      if (n % divisor) continue;
      if (ord % static_cast<std::uint64_t>(n)) excluded.push_back(n);
      else b.degrees.push_back(n);
    }
    int r3 = add("R3.divisibility", b.label, {b.degree_step},
                 {{"max_degree", std::to_string(db.degree)},
                  {"divisor", std::to_string(divisor)},
                  {"gl_order", std::to_string(gl_order(s_.m, s_.p))},
                  {"ambient_order", std::to_string(ord)},
                  {"excluded", join(excluded)},
                  {"degrees", join(b.degrees)}});
    for (auto q : ramified) {
      bool divides = ord % static_cast<std::uint64_t>(q) == 0;
      add("R3b.tame", b.label, {r0_, rcyc_},
          {{"q", std::to_string(q)},
           {"ambient_order", std::to_string(ord)},
           {"divides", flag(divides)},
           {"reason", divides ? "semistable, inertia unipotent of order prime to q" : "q does not divide the ambient order"}});
    }
    for (int n : b.degrees) (n % s_.p ? b.tame : b.wild).push_back(n);
    b.split_step = add("R4.split", b.label, {r3},
                       {{"p", std::to_string(s_.p)}, {"tame", join(b.tame)}, {"wild", join(b.wild)}});
    if (!b.tame.empty()) {
      Integer crude = s_.p;
      for (auto q : ramified) crude *= static_cast<long>(q);
      ExactBound tb{Rational(crude)};
      DegreeBound tdb = max_admissible_degree(t_, tb);
      for (int n : b.tame)
        if (tdb.beyond_table || n <= tdb.degree) b.survivors.push_back(n);
      b.tame_step = add("R4.tame_bound", b.label, {b.split_step, rcyc_},
                        {{"bound", tb.to_string()}, {"max_degree", tdb.to_string()}, {"survivors", join(b.survivors)}});
    }
    return b;
  }

  bool group_fails_target(const Subgroup& h) const {
    if (s_.target == Target::Irreducible) {
      if (s_.m != 2) return false;
      return !invariant_lines(h).empty();
    }
    return span_rank(h) < s_.m * s_.m;
  }

  bool admissible_class(const Subgroup& h, bool need_inertia) const {
    const Ambient& A = h.ambient();
    std::set<int> image;
    bool inertia = false, conj = false;
    for (Elem e : h.elements()) {
      image.insert(det_mode_ ? A.det(e) : A.unit(e));
      if (A.element_order(e) == static_cast<std::uint64_t>(s_.p) && A.unit(e) == 1 && A.is_unipotent_block(e)) inertia = true;
      if (A.element_order(e) == 2 && A.det(e) == s_.p - 1 && (det_mode_ || A.unit(e) == s_.p - 1)) conj = true;
    }
    if (static_cast<int>(image.size()) != s_.p - 1) return false;
    if (need_inertia && !inertia) return false;
    if (s_.odd && !conj) return false;
    return true;
  }

  void run_cyclic(Branch& b) {
    if (b.survivors.empty()) return;
    int r5 = add("R5.total_ramification", b.label, {b.tame_step},
                 {{"p", std::to_string(s_.p)}, {"class_number", "1"}, {"degrees", join(b.survivors)}});
    auto A = ambient(amb_);
    for (int n : b.survivors) {
      std::size_t count = 0;
      bool all_fail = true;
      for (Elem g : A->elements_of_order(static_cast<std::uint64_t>(n))) {
        int chi = det_mode_ ? A->det(g) : A->unit(g);
        if (order_mod(chi, s_.p) != s_.p - 1) continue;
        if (s_.odd) {
          if (n % 2) continue;
          Elem c = A->pow(g, static_cast<std::uint64_t>(n / 2));
          if (A->det(c) != s_.p - 1 || (!det_mode_ && A->unit(c) != s_.p - 1)) continue;
        }
        ++count;
        if (!group_fails_target(closure(A, {g}, static_cast<std::uint64_t>(n)))) all_fail = false;
      }
      if (!all_fail) {
        b.open.push_back("n=" + std::to_string(n) + " cyclic image satisfies the target");
        continue;
      }
      b.closers.push_back(add("R6.cyclic", b.label, {r5, rcyc_},
                              {{"degree", std::to_string(n)},
                               {"property", property_name(s_.target)},
                               {"odd", flag(s_.odd)},
                               {"candidates", std::to_string(count)},
                               {"closes", std::to_string(n)}}));
    }
  }

  void run_groups(Branch& b, int n, int source) {
    const std::string deg = std::to_string(n);
    try {
      // the kernel of the projection onto F_p^* is a subgroup of GL(m, p)
      std::uint64_t kord = static_cast<std::uint64_t>(n / (s_.p - 1));
      AmbientSpec kspec{s_.p, s_.m, false};
      if (kord <= opt_.subgroup_cap && subgroups_of_order(kspec, kord, opt_.subgroup_cap).empty()) {
        auto e = has_element_of_order(kspec, kord);
        std::string ew = e ? ambient(kspec)->format(*e) : "none";
        b.closers.push_back(add("R7.kernel", b.label, {source},
                                {{"degree", deg},
                                 {"kernel_order", std::to_string(kord)},
                                 {"kernel_ambient", kspec.to_string()},
                                 {"kernel_classes", "0"},
                                 {"element_of_kernel_order", ew},
                                 {"closes", deg}}));
        return;
      }
      std::vector<Subgroup> classes = subgroups_of_order(amb_, static_cast<std::uint64_t>(n), opt_.subgroup_cap);
      std::vector<const Subgroup*> adm;
      for (const Subgroup& h : classes)
        if (admissible_class(h, !b.ramified.empty())) adm.push_back(&h);
      rules::Witness w{{"degree", deg},
                       {"ambient", amb_.to_string()},
                       {"classes", std::to_string(classes.size())},
                       {"admissible", std::to_string(adm.size())}};
      const Ambient& A = *ambient(amb_);
      for (std::size_t i = 0; i < adm.size(); ++i) {
        std::string gens;
        for (Elem g : adm[i]->generators()) gens += (gens.empty() ? "" : ";") + A.format(g);
        w.emplace_back("class." + std::to_string(i + 1), gens.empty() ? "-" : gens);
      }
      if (adm.empty()) w.emplace_back("closes", deg);
      int search = add("R7.search", b.label, {source}, w);
      if (adm.empty()) {
        b.closers.push_back(search);
        return;
      }
      DegreeBound aux_max = max_admissible_degree(t_, ExactBound(Rational(s_.p)));
      for (std::size_t i = 0; i < adm.size(); ++i) {
        const Subgroup& h = *adm[i];
        const std::string cls = std::to_string(i + 1);
        const std::string tag = deg + ":" + cls;
        if (n % s_.p == 0) {
          Subgroup P = sylow(h, s_.p);
          std::uint64_t aux = h.order() / P.order();
          if (is_normal(h, P) && !aux_max.beyond_table && aux > static_cast<std::uint64_t>(aux_max.degree)) {
            b.closers.push_back(add("R7.auxfield", b.label, {search, rcyc_},
                                    {{"degree", deg},
                                     {"class", cls},
                                     {"p", std::to_string(s_.p)},
                                     {"sylow_order", std::to_string(P.order())},
                                     {"normal", "1"},
                                     {"aux_bound", std::to_string(s_.p)},
                                     {"aux_max_degree", aux_max.to_string()},
                                     {"aux_degree", std::to_string(aux)},
                                     {"closes", tag}}));
            continue;
          }
        }
        FixedVectorReport rep = check_fixed_vector_lemma(h);
        if (rep.reducible(s_.m)) {
          b.closers.push_back(add("R8.fixed_vector", b.label, {search},
                                  {{"degree", deg},
                                   {"class", cls},
                                   {"p", std::to_string(s_.p)},
                                   {"core_order", std::to_string(rep.core_order)},
                                   {"fixed_dimension", std::to_string(rep.fixed_dimension)},
                                   {"stable", "1"},
                                   {"closes", tag}}));
          continue;
        }
        if (group_fails_target(h)) {
          std::string lines = s_.m == 2 ? std::to_string(invariant_lines(h).size()) : "-";
          b.closers.push_back(add("R7.reducible", b.label, {search},
                                  {{"degree", deg},
                                   {"class", cls},
                                   {"property", property_name(s_.target)},
                                   {"invariant_lines", lines},
                                   {"span_rank", std::to_string(span_rank(h))},
                                   {"closes", tag}}));
          continue;
        }
        b.open.push_back("n=" + deg + " class " + cls + " generated by " + w.back().second);
      }
    } catch (const std::exception& e) {
      b.open.push_back("n=" + deg + " undecided: " + e.what());
    }
  }

  void close(Branch& b) {
    std::vector<int> inputs{b.degree_step};
    inputs.insert(inputs.end(), b.closers.begin(), b.closers.end());
    std::string open;
    for (const std::string& o : b.open) open += (open.empty() ? "" : "; ") + o;
    std::vector<int> closed;
    if (!b.unbounded)
      for (int n : b.degrees) {
        bool is_open = false;
        for (const std::string& o : b.open)
          if (o.rfind("n=" + std::to_string(n) + " ", 0) == 0) is_open = true;
        if (!is_open) closed.push_back(n);
      }
    add("R9.close", b.label, inputs, {{"branch", b.label}, {"closed", join(closed)}, {"open", open.empty() ? "-" : open}});
    for (const std::string& o : b.open) open_.push_back(b.label + " " + o);
  }

  ProofResult finish() {
    cert_.verdict.nonexistence = open_.empty();
    cert_.verdict.open = open_;
    return {cert_.verdict, cert_};
  }

  ProofResult representation() {
    if (root()) {
      std::vector<std::int64_t> qs(s_.S.begin(), s_.S.end());
      for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << qs.size()); ++mask) {
        std::set<std::int64_t> ram;
        for (std::size_t i = 0; i < qs.size(); ++i)
          if (mask >> i & 1) ram.insert(qs[i]);
        Branch b = run_front(ram);
        if (!b.unbounded) {
          if (!b.survivors.empty()) {
            if (ram.empty() && ArithmeticFacts::class_number_one(s_.p)) run_cyclic(b);
            else
              for (int n : b.survivors) run_groups(b, n, b.tame_step);
          }
          for (int n : b.wild) run_groups(b, n, b.split_step);
        }
        close(b);
      }
    }
    return finish();
  }

  ProofResult elliptic() {
    cert_.kind = "elliptic-curve";
    if (!root()) return finish();
    Branch b = run_front({});
    if (b.unbounded || !b.wild.empty() || b.survivors != std::vector<int>{s_.p - 1}) {
      open_.push_back("torsion field not pinned down");
      return finish();
    }
    int field = add("RW.field", b.label, {b.tame_step, b.split_step, rcyc_},
                    {{"p", std::to_string(s_.p)},
                     {"degree", std::to_string(s_.p - 1)},
                     {"torsion", std::to_string(s_.p * s_.p)}});
    for (std::int64_t ell = 2; ell < 1000; ++ell) {
      if (!is_prime(ell) || ell == s_.p) continue;
      std::int64_t f = order_mod(ell, s_.p);
      std::int64_t qf = 1;
      for (std::int64_t i = 0; i < f; ++i) qf *= ell;
      Integer Q(static_cast<long>(qf)), w;
      Integer four_q = 4 * Q;
      mpz_sqrt(w.get_mpz_t(), four_q.get_mpz_t());
      Integer lo = Q + 1 - w, hi = Q + 1 + w;
      bool contra = Integer(s_.p * s_.p) > hi;
      add("RW.reduction", b.label, {field},
          {{"ell", std::to_string(ell)},
           {"residue_degree", std::to_string(f)},
           {"residue_field", std::to_string(qf)},
           {"torsion", std::to_string(s_.p * s_.p)},
           {"hasse_min", lo.get_str()},
           {"hasse_max", hi.get_str()},
           {"contradiction", flag(contra)}});
      if (contra) return finish();
    }
    open_.push_back("no reduction prime gave a contradiction");
    return finish();
  }

 private:
  Scenario s_;
  const MinorationTable& t_;
  ProverOptions opt_;
  Certificate cert_;
  bool det_mode_ = false;
  AmbientSpec amb_;
  int r0_ = 0, rcyc_ = 0;
  std::vector<std::string> open_;
};

}  // namespace

ProofResult prove(const Scenario& s, const MinorationTable& t, const ProverOptions& opt) {
  s.validate();
  Planner pl(s, t, opt);
  return pl.representation();
}

ProofResult prove_elliptic_curve(int p, const MinorationTable& t, const ProverOptions& opt) {
  Scenario s = weight_one_scenario(p);
  s.validate();
  Planner pl(s, t, opt);
  return pl.elliptic();
}

std::vector<std::pair<std::string, std::vector<int>>> tame_survivors(const Certificate& c) {
  std::vector<std::pair<std::string, std::vector<int>>> out;
  for (const Step& st : c.steps)
    if (st.rule == "R4.tame_bound") out.emplace_back(st.branch, rules::split_ints(st.at("survivors")));
  return out;
}

}  // namespace galcert
