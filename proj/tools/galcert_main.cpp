// galcert: command-line driver.
//
// Exit codes: 0 proved / ok, 2 inconclusive, 1 usage or data error.

#include "galcert/bounds.hpp"
#include "galcert/glgroup.hpp"
#include "galcert/minorations.hpp"
#include "galcert/prover.hpp"
#include "galcert/weil.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#ifndef GALCERT_DEFAULT_TABLE
#define GALCERT_DEFAULT_TABLE "tables/dyd.tsv"
#endif

using namespace galcert;
using json = nlohmann::ordered_json;

namespace {

struct Config {
  std::string table;
  std::string format = "text";
  std::uint64_t cap = 128;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

MinorationTable open_table(const Config& cfg) {
  std::string path = cfg.table;
  if (path.empty()) {
    const char* env = std::getenv("GALCERT_TABLE");
    path = env && *env ? env : GALCERT_DEFAULT_TABLE;
  }
  return load_table_file(path);
}

std::set<std::int64_t> to_set(const std::vector<std::int64_t>& v) { return {v.begin(), v.end()}; }

void emit(const Config& cfg, const json& j, const std::string& text) {
  if (cfg.format == "structured") std::cout << j.dump(2) << "\n";
  else std::cout << text;
}

// ---------------------------------------------------------------- bound

struct BoundArgs {
  std::int64_t p = 0, r = 1;
  std::vector<std::int64_t> S;
  int digits = 4;
};

int run_bound(const Config& cfg, const BoundArgs& a) {
  ExactBound b = fontaine_bound(a.p, a.r, to_set(a.S));
  std::string dec = decimal_digits(b, a.digits);
  unsigned long t = b.clearing_exponent();
  Rational pw = b.raised(t);
  json j{{"p", a.p}, {"r", a.r}, {"S", a.S}, {"exact", b.to_string()}, {"decimal_truncated", dec},
         {"power", t}, {"power_value", to_string(pw)}};
  std::ostringstream os;
  os << dec << "  (truncated; exact value " << b.to_string();
  if (t > 1) os << ", whose " << t << "-th power is " << to_string(pw);
  os << ")\n";
  emit(cfg, j, os.str());
  return 0;
}

// ---------------------------------------------------------------- degrees

struct DegreesArgs {
  std::int64_t p = 0, r = 1;
  std::vector<std::int64_t> S;
  std::string value;
  bool crude = false;
};

int run_degrees(const Config& cfg, const DegreesArgs& a) {
  MinorationTable t = open_table(cfg);
  ExactBound b;
  if (!a.value.empty()) {
    b = ExactBound(parse_rational(a.value));
  } else if (a.p) {
    if (a.crude) {
      Integer c = static_cast<long>(a.p);
      for (auto q : a.S) c *= static_cast<long>(q);
      b = ExactBound(Rational(c));
    } else {
      b = fontaine_bound(a.p, a.r, to_set(a.S));
    }
  } else {
    throw UsageError("degrees needs --value or --p");
  }
  DegreeBound d = max_admissible_degree(t, b);
  json j{{"bound", b.to_string()}, {"max_degree", d.beyond_table ? json("beyond-table") : json(d.degree)},
         {"field_class", t.field_class()}};
  emit(cfg, j, "root discriminant < " + b.to_string() + ": n <= " + d.to_string() + "\n");
  return 0;
}

// ---------------------------------------------------------------- prove / check

struct ProveArgs {
  std::string preset;
  std::int64_t p = 0;
  int m = 2, r = 1;
  std::vector<std::int64_t> S;
  bool odd = false, absolute = false;
  std::string out;
};

int run_prove(const Config& cfg, const ProveArgs& a) {
  MinorationTable t = open_table(cfg);
  ProverOptions opt;
  opt.subgroup_cap = cfg.cap;
  ProofResult res;
  int p = static_cast<int>(a.p);
  if (a.preset == "remark2.5") {
    res = prove_elliptic_curve(p ? p : 5, t, opt);
  } else {
    Scenario s;
    if (a.preset == "thm2.4") s = weight_one_scenario(p);
    else if (a.preset == "thm3.1") s = weight_two_scenario(p);
    else if (a.preset == "thm4.1") s = semistable_at_two_scenario(p);
    else if (a.preset.empty()) {
      s.p = p;
      s.m = a.m;
      s.r = a.r;
      s.S = to_set(a.S);
      s.odd = a.odd;
      s.target = a.absolute ? Target::AbsolutelyIrreducible : Target::Irreducible;
    } else {
      throw UsageError("unknown preset '" + a.preset + "' (thm2.4, thm3.1, thm4.1, remark2.5)");
    }
    if (!p) throw UsageError("--p is required");
    res = prove(s, t, opt);
  }
  const Certificate& c = res.certificate;
  std::string text = c.serialize();
  if (!a.out.empty()) {
    std::ofstream f(a.out);
    if (!f) throw std::runtime_error("cannot write " + a.out);
    f << text;
  }
  if (cfg.format == "structured") {
    json steps = json::array();
    for (const Step& st : c.steps) {
      json w = json::object();
      for (const auto& [k, v] : st.witness) w[k] = v;
      steps.push_back({{"id", st.id}, {"rule", st.rule}, {"branch", st.branch}, {"inputs", st.inputs},
                       {"claim", st.claim}, {"witness", w}, {"cite", st.cite}});
    }
    json surv = json::object();
    for (const auto& [br, ds] : tame_survivors(c)) surv[br] = ds;
    json j{{"kind", c.kind}, {"scenario", c.scenario.to_string()}, {"verdict", c.verdict.to_string()},
           {"open", c.verdict.open}, {"tame_survivors", surv}, {"steps", steps}};
    std::cout << j.dump(2) << "\n";
  } else if (a.out.empty()) {
    std::cout << text;
  } else {
    std::cout << c.verdict.to_string() << "\n";
  }
  return res.verdict.nonexistence ? 0 : 2;
}

int run_check(const Config& cfg, const std::string& path) {
  MinorationTable t = open_table(cfg);
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  Certificate c;
  try {
    c = Certificate::parse(buf.str());
  } catch (const std::invalid_argument& e) {
    emit(cfg, json{{"ok", false}, {"step", 0}, {"reason", e.what()}}, std::string("rejected: malformed: ") + e.what() + "\n");
    return 1;
  }
  ProverOptions opt;
  opt.subgroup_cap = cfg.cap;
  CheckResult r = check_certificate(c, t, opt);
  std::string text = r.ok ? "accepted: " + c.verdict.to_string() + "\n"
                          : "rejected at step " + std::to_string(r.failing_step) + ": " + r.reason + "\n";
  emit(cfg, json{{"ok", r.ok}, {"step", r.failing_step}, {"reason", r.reason}, {"verdict", c.verdict.to_string()}}, text);
  return r.ok ? 0 : 1;
}

// ---------------------------------------------------------------- groups

struct GroupArgs {
  int p = 0, m = 2;
  bool block = false;
  std::uint64_t order = 0;
};

int run_subgroups(const Config& cfg, const GroupArgs& a) {
  AmbientSpec spec{a.p, a.m, a.block};
  auto amb = ambient(spec);
  std::vector<Subgroup> hs = subgroups_of_order(spec, a.order, cfg.cap);
  json arr = json::array();
  std::ostringstream os;
  os << spec.to_string() << ": " << hs.size() << " classes of subgroups of order " << a.order << "\n";
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const Subgroup& h = hs[i];
    std::vector<std::string> gens;
    for (Elem g : h.generators()) gens.push_back(amb->format(g));
    bool cyc = is_cyclic(h), ab = is_abelian(h), absirr = is_absolutely_irreducible(h);
    std::size_t lines = a.m == 2 ? invariant_lines(h).size() : 0;
    arr.push_back({{"class", i + 1}, {"generators", gens}, {"class_size", class_size(h)}, {"cyclic", cyc},
                   {"abelian", ab}, {"absolutely_irreducible", absirr}, {"invariant_lines", lines}});
    os << "  class " << i + 1 << ": <";
    for (std::size_t k = 0; k < gens.size(); ++k) os << (k ? ", " : "") << gens[k];
    os << ">  conjugates " << class_size(h) << (cyc ? "  cyclic" : ab ? "  abelian" : "")
       << (absirr ? "  absolutely irreducible" : "");
    if (a.m == 2) os << "  invariant lines " << lines;
    os << "\n";
  }
  emit(cfg, json{{"ambient", spec.to_string()}, {"order", a.order}, {"classes", arr}}, os.str());
  return 0;
}

int run_element_orders(const Config& cfg, const GroupArgs& a) {
  AmbientSpec spec{a.p, a.m, a.block};
  std::ostringstream os;
  if (a.order) {
    auto e = has_element_of_order(spec, a.order);
    os << spec.to_string() << ": " << (e ? "element of order " + std::to_string(a.order) + ": " + ambient(spec)->format(*e)
                                         : "no element of order " + std::to_string(a.order))
       << "\n";
    emit(cfg, json{{"ambient", spec.to_string()}, {"order", a.order}, {"element", e ? json(ambient(spec)->format(*e)) : json(nullptr)}},
         os.str());
    return 0;
  }
  auto amb = ambient(spec);
  std::map<std::uint64_t, std::uint64_t> counts;
  for (Elem e : amb->elements()) ++counts[amb->element_order(e)];
  json j = json::object();
  os << spec.to_string() << " of order " << ambient_order(spec) << "\n";
  for (auto [o, c] : counts) {
    j[std::to_string(o)] = c;
    os << "  order " << o << ": " << c << "\n";
  }
  emit(cfg, json{{"ambient", spec.to_string()}, {"counts", j}}, os.str());
  return 0;
}

// ---------------------------------------------------------------- weil

struct WeilArgs {
  std::int64_t q = 0;
  int k = 1, n = 1, d = 1;
  std::int64_t p = 0;
};

int run_weil(const Config& cfg, const std::string& what, const WeilArgs& a) {
  std::ostringstream os;
  if (what == "enumerate") {
    WeilEnumeration e = enumerate_weil(a.q, a.k, a.n);
    json cert = json::array(), und = json::array();
    os << "Weil polynomials for q = " << a.q << ", k = " << a.k << ", degree " << a.n << ": " << e.certified.size() << "\n";
    for (const auto& w : e.certified) {
      cert.push_back({{"polynomial", w.to_string()}, {"irreducible", w.irreducible}});
      os << "  " << w.to_string() << (w.irreducible ? "  irreducible" : "") << "\n";
    }
    for (const auto& w : e.undecided) {
      und.push_back(w.to_string());
      os << "  undecided: " << w.to_string() << "\n";
    }
    emit(cfg, json{{"q", a.q}, {"k", a.k}, {"n", a.n}, {"certified", cert}, {"undecided", und}}, os.str());
    return e.undecided.empty() ? 0 : 2;
  }
  if (what == "count") {
    json j = json::object();
    for (auto [deg, c] : count_local_lfactors(a.q, a.k, a.n)) {
      j[std::to_string(deg)] = c;
      os << "degree " << deg << ": " << c << "\n";
    }
    emit(cfg, json{{"q", a.q}, {"k", a.k}, {"counts", j}}, os.str());
    return 0;
  }
  if (what == "hasse") {
    HasseInterval h = hasse_interval(a.q);
    os << "[" << h.min.get_str() << ", " << h.max.get_str() << "]\n";
    emit(cfg, json{{"q", a.q}, {"min", h.min.get_str()}, {"max", h.max.get_str()}}, os.str());
    return 0;
  }
  Integer t = hm_degree_threshold(a.n, a.d, a.p);
  emit(cfg, json{{"n", a.n}, {"d", a.d}, {"p", a.p}, {"threshold", t.get_str()}}, t.get_str() + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"galcert: certified non-existence proofs for mod-p Galois representations"};
  app.require_subcommand(1);
  Config cfg;
  app.add_option("--table", cfg.table, "minoration table (default $GALCERT_TABLE, then the shipped table)");
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"text", "structured"}));
  app.add_option("--cap", cfg.cap, "largest subgroup order searched")->check(CLI::PositiveNumber);

  BoundArgs ba;
  auto* bound = app.add_subcommand("bound", "root discriminant bound for a scenario");
  bound->add_option("--p", ba.p, "prime")->required();
  bound->add_option("--r", ba.r, "Hodge-Tate weight at p");
  bound->add_option("--S", ba.S, "ramified primes")->delimiter(',');
  bound->add_option("--digits", ba.digits, "decimal digits")->check(CLI::PositiveNumber);

  DegreesArgs da;
  auto* degrees = app.add_subcommand("degrees", "largest degree allowed by the table under a bound");
  degrees->add_option("--value", da.value, "explicit rational bound, e.g. 5 or 7/2 or 11.18");
  degrees->add_option("--p", da.p, "prime for the scenario bound");
  degrees->add_option("--r", da.r, "Hodge-Tate weight");
  degrees->add_option("--S", da.S, "ramified primes")->delimiter(',');
  degrees->add_flag("--crude", da.crude, "use the tame bound p * prod S");

  ProveArgs pa;
  auto* prove_cmd = app.add_subcommand("prove", "run the prover and print a certificate");
  prove_cmd->add_option("preset", pa.preset, "thm2.4 | thm3.1 | thm4.1 | remark2.5, or none for explicit flags");
  prove_cmd->add_option("--p", pa.p, "prime");
  prove_cmd->add_option("--m", pa.m, "dimension");
  prove_cmd->add_option("--r", pa.r, "Hodge-Tate weight");
  prove_cmd->add_option("--S", pa.S, "ramified primes (semistable)")->delimiter(',');
  prove_cmd->add_flag("--odd", pa.odd, "odd representation");
  prove_cmd->add_flag("--absolute", pa.absolute, "target absolutely irreducible");
  prove_cmd->add_option("-o,--output", pa.out, "write the certificate to a file");

  std::string cert_path;
  auto* check = app.add_subcommand("check", "check a certificate");
  check->add_option("certificate", cert_path, "certificate file")->required();

  GroupArgs ga;
  auto* subgroups = app.add_subcommand("subgroups", "conjugacy classes of subgroups of a given order");
  auto* orders = app.add_subcommand("element-orders", "element order statistics");
  for (auto* sc : {subgroups, orders}) {
    sc->add_option("--p", ga.p, "prime")->required();
    sc->add_option("--m", ga.m, "dimension");
    sc->add_flag("--block", ga.block, "adjoin the GL(1,p) cyclotomic block");
  }
  subgroups->add_option("--order", ga.order, "subgroup order")->required();
  orders->add_option("--order", ga.order, "only ask whether an element of this order exists");

  WeilArgs wa;
  std::string weil_what;
  auto* weil = app.add_subcommand("weil", "Weil polynomials, Hasse intervals, degree thresholds");
  weil->add_option("what", weil_what, "enumerate | count | hasse | threshold")
      ->required()
      ->check(CLI::IsMember({"enumerate", "count", "hasse", "threshold"}));
  weil->add_option("--q", wa.q, "prime power");
  weil->add_option("--k", wa.k, "weight");
  weil->add_option("--n", wa.n, "degree (largest degree for count)");
  weil->add_option("--d", wa.d, "dimension, for threshold");
  weil->add_option("--p", wa.p, "prime, for threshold");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }
  try {
    if (*bound) return run_bound(cfg, ba);
    if (*degrees) return run_degrees(cfg, da);
    if (*prove_cmd) return run_prove(cfg, pa);
    if (*check) return run_check(cfg, cert_path);
    if (*subgroups) return run_subgroups(cfg, ga);
    if (*orders) return run_element_orders(cfg, ga);
    if (*weil) return run_weil(cfg, weil_what, wa);
  } catch (const std::exception& e) {
    std::cerr << "galcert: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
