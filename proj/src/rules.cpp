#include "rules.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

namespace galcert::rules {

namespace {

std::string get(const Witness& w, const std::string& key) {
  for (const auto& [k, v] : w)
    if (k == key) return v;
  return "?";
}

std::string set_text(const std::string& list) { return "{" + (list == "-" ? std::string() : list) + "}"; }

}  // namespace

std::string join(const std::vector<int>& xs) {
  if (xs.empty()) return "-";
  std::string out;
  for (int x : xs) out += (out.empty() ? "" : ",") + std::to_string(x);
  return out;
}

std::string join(const std::set<std::int64_t>& xs) {
  if (xs.empty()) return "-";
  std::string out;
  for (auto x : xs) out += (out.empty() ? "" : ",") + std::to_string(x);
  return out;
}

std::vector<int> split_ints(const std::string& text) {
  std::vector<int> out;
  if (text == "-") return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t used = 0;
    int v = std::stoi(item, &used);
    if (used != item.size() || std::to_string(v) != item) throw std::invalid_argument("bad integer list '" + text + "'");
    out.push_back(v);
  }
  if (join(out) != text) throw std::invalid_argument("bad integer list '" + text + "'");
  return out;
}

std::string branch_label(const std::set<std::int64_t>& ramified) { return "ramified:" + join(ramified); }

std::string render_claim(const std::string& rule, const Witness& w) {
  auto g = [&](const char* k) { return get(w, k); };
  if (rule == "R0.scenario")
    return "representation into GL(" + g("m") + ",F_" + g("p") + "), weight " + g("r") + " at " + g("p") +
           ", unramified outside " + set_text(g("S")) + " and " + g("p");
  if (rule == "R2.cyclotomic")
    return "K contains Q(zeta_" + g("p") + "), so K is totally imaginary; image lies in " + g("ambient") +
           " of order " + g("ambient_order");
  if (rule == "R1.bound")
    return "root discriminant of K < " + g("bound") + " = " + g("digits") + "...";
  if (rule == "R2.degree") {
    if (g("max_degree") == "beyond-table") return "the table does not bound n for root discriminant < " + g("bound");
    return "n <= " + g("max_degree");
  }
  if (rule == "R3.divisibility")
    return g("divisor") + " | n and n | " + g("ambient_order") + ", so n in " + set_text(g("degrees"));
  if (rule == "R3b.tame") return "ramification at " + g("q") + " is tame (" + g("reason") + ")";
  if (rule == "R4.split")
    return "tame at " + g("p") + " for n in " + set_text(g("tame")) + "; possibly wild for n in " + set_text(g("wild"));
  if (rule == "R4.tame_bound") {
    std::string head = "tamely ramified: root discriminant < " + g("bound") + ", so ";
    if (g("max_degree") == "beyond-table") head += "no new degree bound";
    else head += "n <= " + g("max_degree");
    return head + "; surviving n in " + set_text(g("survivors"));
  }
  if (rule == "R5.total_ramification")
    return "h(Q(zeta_" + g("p") + ")) = 1, so K/Q is totally and tamely ramified at " + g("p") +
           " for n in " + set_text(g("degrees"));
  if (rule == "R6.cyclic") {
    std::string what = g("property") == "absolutely-irreducible" ? "absolutely irreducible" : "irreducible";
    return "Gal(K/Q) is cyclic of order " + g("degree") + "; none of the " + g("candidates") +
           " admissible cyclic images is " + what;
  }
  if (rule == "R7.kernel")
    return "the kernel of the cyclotomic projection would be a subgroup of " + g("kernel_ambient") + " of order " +
           g("kernel_order") + "; there is none, so n != " + g("degree");
  if (rule == "R7.search")
    return g("ambient") + " has " + g("classes") + " classes of subgroups of order " + g("degree") + ", " +
           g("admissible") + " admissible";
  if (rule == "R7.auxfield")
    return "class " + g("class") + " of order " + g("degree") + ": fixed field of the normal Sylow " + g("p") +
           "-subgroup has degree " + g("aux_degree") + " > " + g("aux_max_degree");
  if (rule == "R8.fixed_vector")
    return "class " + g("class") + " of order " + g("degree") + ": normal " + g("p") + "-core of order " +
           g("core_order") + " fixes a stable subspace of dimension " + g("fixed_dimension") + ", so it is reducible";
  if (rule == "R7.reducible")
    return "class " + g("class") + " of order " + g("degree") + " is not " +
           (g("property") == "absolutely-irreducible" ? std::string("absolutely irreducible") : std::string("irreducible"));
  if (rule == "R9.close") {
    if (g("open") == "-") return "every case of branch " + g("branch") + " is closed";
    return "branch " + g("branch") + " leaves open: " + g("open");
  }
  if (rule == "RW.field")
    return "[K:Q] = " + g("degree") + " and Q(zeta_" + g("p") + ") in K, so K = Q(zeta_" + g("p") + ") and all " +
           g("torsion") + " points of E[" + g("p") + "] are rational over it";
  if (rule == "RW.reduction") {
    std::string head = "at " + g("ell") + ": residue field F_" + g("residue_field") + ", " + g("torsion") +
                       " injected points vs Hasse interval [" + g("hasse_min") + "," + g("hasse_max") + "]";
    return head + (g("contradiction") == "1" ? ": " + g("torsion") + " > " + g("hasse_max") : ": no contradiction");
  }
  throw std::invalid_argument("unknown rule '" + rule + "'");
}

std::string citation(const std::string& rule) {
  static const std::map<std::string, std::string> cites = {
      {"R0.scenario", "hypotheses of the scenario"},
      {"R2.cyclotomic",
       "det = cyclotomic character for finite flat representations (Serre, Duke 1987, 2.8), or the adjoined "
       "cyclotomic block; Q(zeta_p) is totally imaginary for p > 2"},
      {"R1.bound",
       "Fontaine, Invent. Math. 81 (1985); Fontaine, Schemas propres et lisses sur Z (1993); tame primes: Serre, "
       "Local Fields III.6 Prop. 13"},
      {"R2.degree", "unconditional Odlyzko minorations via the explicit formula (Poitou, Sem. Bourbaki 479), values as tabulated"},
      {"R3.divisibility", "Lagrange; [Q(zeta_p):Q] = p-1; semistable inertia is unipotent of order p"},
      {"R3b.tame", "inertia of order prime to q is tame (Serre, Local Fields IV.2)"},
      {"R4.split", "inertia at p has order prime to p when p does not divide n"},
      {"R4.tame_bound", "Serre, Local Fields III.6 Prop. 13; unconditional Odlyzko minorations"},
      {"R5.total_ramification",
       "class numbers of cyclotomic fields (Washington, Introduction to Cyclotomic Fields, tables); accepted as "
       "an arithmetic inference"},
      {"R6.cyclic", "tame inertia is cyclic (Serre, Local Fields IV.2 Cor. 1); exhaustive scan of cyclic images"},
      {"R7.kernel", "exhaustive subgroup search; element-order scan"},
      {"R7.search", "exhaustive subgroup search up to conjugacy"},
      {"R7.auxfield", "fixed field of a normal Sylow subgroup; Serre, Local Fields III.6 Prop. 13; unconditional "
                      "Odlyzko minorations"},
      {"R8.fixed_vector", "a p-group acting on an F_p-space fixes a nonzero vector; exhaustive check"},
      {"R7.reducible", "invariant lines and the Burnside criterion; exhaustive check"},
      {"R9.close", "case analysis"},
      {"RW.field", "degree count"},
      {"RW.reduction",
       "prime-to-ell torsion injects under good reduction (Silverman, AEC VII.3.1); Hasse bound"},
  };
  auto it = cites.find(rule);
  if (it == cites.end()) throw std::invalid_argument("unknown rule '" + rule + "'");
  return it->second;
}

}  // namespace galcert::rules
