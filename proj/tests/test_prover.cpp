#include "galcert/prover.hpp"

#include <gtest/gtest.h>

#include <random>

#include "fuzz.hpp"

using namespace galcert;

namespace {

const MinorationTable& table() {
  static MinorationTable t = load_table_file(GALCERT_TABLE_PATH);
  return t;
}

const Step* find_step(const Certificate& c, const std::string& rule, const std::string& branch,
                      const std::string& key = "", const std::string& value = "") {
  for (const Step& s : c.steps)
    if (s.rule == rule && s.branch == branch && (key.empty() || s.at(key) == value)) return &s;
  return nullptr;
}

std::vector<int> survivors(const Certificate& c, const std::string& branch) {
  for (const auto& [b, ds] : tame_survivors(c))
    if (b == branch) return ds;
  return {};
}

}  // namespace

TEST(Prover, WeightOnePresets) {
  std::map<int, std::pair<std::string, std::vector<int>>> want = {
      {5, {"12", {4}}}, {7, {"18", {6}}}, {11, {"50", {10, 20}}}, {13, {"88", {12, 24, 36}}}};
  for (const auto& [p, w] : want) {
    ProofResult r = prove(weight_one_scenario(p), table());
    EXPECT_TRUE(r.verdict.nonexistence) << p;
    EXPECT_EQ(find_step(r.certificate, "R2.degree", "ramified:-")->at("max_degree"), w.first);
    EXPECT_EQ(survivors(r.certificate, "ramified:-"), w.second) << p;
    EXPECT_EQ(find_step(r.certificate, "R2.cyclotomic", "root")->at("mode"), "det");
  }
}

TEST(Prover, WeightTwoPresets) {
  std::map<int, std::string> wild = {{5, "20"}, {7, "42"}, {11, "110"}};
  for (const auto& [p, n] : wild) {
    ProofResult r = prove(weight_two_scenario(p), table());
    EXPECT_TRUE(r.verdict.nonexistence) << p;
    EXPECT_EQ(find_step(r.certificate, "R4.split", "ramified:-")->at("wild"), n);
    const Step* search = find_step(r.certificate, "R7.search", "ramified:-", "degree", n);
    ASSERT_NE(search, nullptr);
    EXPECT_NE(search->at("admissible"), "0");
    for (const Step& s : r.certificate.steps)
      if (s.find("degree") && s.at("degree") == n && s.find("closes")) EXPECT_EQ(s.rule, "R8.fixed_vector") << p;
  }
}

TEST(Prover, SemistableAtTwo) {
  ProofResult r3 = prove(semistable_at_two_scenario(3), table());
  EXPECT_TRUE(r3.verdict.nonexistence);
  const Step* d3 = find_step(r3.certificate, "R3.divisibility", "ramified:2");
  ASSERT_NE(d3, nullptr);
  EXPECT_EQ(d3->at("divisor"), "6");
  EXPECT_EQ(d3->at("degrees"), "6,12");
  EXPECT_EQ(d3->at("excluded"), "18");
  EXPECT_EQ(d3->at("gl_order"), "48");
  EXPECT_EQ(find_step(r3.certificate, "R1.bound", "ramified:2")->at("digits"), "10.39");
  EXPECT_EQ(find_step(r3.certificate, "R2.degree", "ramified:2")->at("max_degree"), "22");

  ProofResult r5 = prove(semistable_at_two_scenario(5), table());
  EXPECT_TRUE(r5.verdict.nonexistence);
  const Step* d5 = find_step(r5.certificate, "R3.divisibility", "ramified:2");
  ASSERT_NE(d5, nullptr);
  EXPECT_EQ(d5->at("divisor"), "20");
  EXPECT_EQ(d5->at("degrees"), "20,40,60");
  EXPECT_EQ(find_step(r5.certificate, "R2.degree", "ramified:2")->at("max_degree"), "64");
  const Step* k = find_step(r5.certificate, "R7.kernel", "ramified:2", "degree", "60");
  ASSERT_NE(k, nullptr);
  EXPECT_EQ(k->at("kernel_order"), "15");
  EXPECT_EQ(k->at("element_of_kernel_order"), "none");
}

TEST(Prover, EllipticCurveChain) {
  ProofResult r = prove_elliptic_curve(5, table());
  EXPECT_TRUE(r.verdict.nonexistence);
  const Step* at2 = find_step(r.certificate, "RW.reduction", "ramified:-", "ell", "2");
  ASSERT_NE(at2, nullptr);
  EXPECT_EQ(at2->at("residue_field"), "16");
  EXPECT_EQ(at2->at("hasse_max"), "25");
  EXPECT_EQ(at2->at("contradiction"), "0");
  const Step& last = r.certificate.steps.back();
  EXPECT_EQ(last.rule, "RW.reduction");
  EXPECT_EQ(last.at("ell"), "11");
  EXPECT_EQ(last.at("hasse_max"), "18");
  EXPECT_EQ(last.at("contradiction"), "1");
  EXPECT_TRUE(check_certificate(r.certificate, table()).ok);
}

TEST(Prover, HonestInconclusive) {
  Scenario s = weight_one_scenario(17);
  ProofResult r = prove(s, table());
  EXPECT_FALSE(r.verdict.nonexistence);
  EXPECT_FALSE(r.verdict.open.empty());
  EXPECT_TRUE(check_certificate(r.certificate, table()).ok);

  Scenario two;
  two.p = 2;
  ProofResult r2 = prove(two, table());
  EXPECT_FALSE(r2.verdict.nonexistence);
  EXPECT_TRUE(check_certificate(r2.certificate, table()).ok) << check_certificate(r2.certificate, table()).reason;
}

// A table missing the rows that matter yields Inconclusive, never a false proof.
TEST(ProverProperty, DegradedTable) {
  MinorationTable cut = table().filtered([](const MinorationRow& r) { return r.degree <= 10; });
  for (int p : {5, 7}) {
    ProofResult r = prove(weight_one_scenario(p), cut);
    EXPECT_FALSE(r.verdict.nonexistence) << p;
    EXPECT_TRUE(check_certificate(r.certificate, cut).ok);
    // and the full-table certificate does not pass against the cut table
    EXPECT_FALSE(check_certificate(prove(weight_one_scenario(p), table()).certificate, cut).ok);
  }
}

TEST(Prover, ScenarioText) {
  Scenario s = semistable_at_two_scenario(5);
  EXPECT_EQ(s.to_string(), "p=5 m=2 r=1 S=2 odd=0 target=irreducible semistable=1");
  EXPECT_EQ(Scenario::parse(s.to_string()), s);
  EXPECT_THROW(Scenario::parse("p=5 m=2"), std::invalid_argument);
  EXPECT_THROW(Scenario::parse(s.to_string() + " p=7"), std::invalid_argument);
  EXPECT_THROW(Scenario::parse("p=5 m=2 r=1 S=3,2 odd=0 target=irreducible semistable=1"), std::invalid_argument);
  Scenario bad = s;
  bad.p = 9;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = s;
  bad.S = {5};
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  EXPECT_THROW(prove(bad, table()), std::invalid_argument);
}

TEST(Prover, CertificateRoundTripAndDeterminism) {
  for (const Scenario& s : {weight_one_scenario(11), weight_two_scenario(5), semistable_at_two_scenario(3)}) {
    Certificate c = prove(s, table()).certificate;
    std::string text = c.serialize();
    EXPECT_EQ(Certificate::parse(text), c);
    EXPECT_EQ(prove(s, table()).certificate.serialize(), text);
    EXPECT_TRUE(check_certificate(c, table()).ok) << check_certificate(c, table()).reason;
  }
  EXPECT_THROW(Certificate::parse("galcert-certificate 2\n"), std::invalid_argument);
  EXPECT_THROW(Certificate::parse(""), std::invalid_argument);
}

TEST(Checker, RejectsTargetedCorruptions) {
  Certificate c = prove(weight_one_scenario(5), table()).certificate;
  {
    Certificate d = c;
    d.verdict.nonexistence = false;
    d.verdict.open.push_back("x");
    EXPECT_FALSE(check_certificate(d, table()).ok);
  }
  {
    Certificate d = c;
    d.steps.erase(d.steps.begin() + 8);
    for (std::size_t i = 0; i < d.steps.size(); ++i) d.steps[i].id = static_cast<int>(i) + 1;
    EXPECT_FALSE(check_certificate(d, table()).ok);
  }
  {
    // a claim that no longer follows from the witness
    Certificate d = c;
    for (Step& s : d.steps)
      if (s.rule == "R2.degree") s.claim = "n <= 10";
    CheckResult r = check_certificate(d, table());
    EXPECT_FALSE(r.ok);
    EXPECT_GT(r.failing_step, 0);
  }
  {
    // consistent claim and witness, but the degree bound is wrong
    Certificate d = c;
    for (Step& s : d.steps)
      if (s.rule == "R2.degree") {
        s.witness[1].second = "10";
        s.claim = "n <= 10";
      }
    EXPECT_FALSE(check_certificate(d, table()).ok);
  }
}

TEST(CheckerProperty, FuzzedCertificatesAreRejected) {
  std::mt19937 rng(20261014);
  for (const Scenario& s : {weight_one_scenario(7), weight_two_scenario(5), semistable_at_two_scenario(3)}) {
    Certificate c = prove(s, table()).certificate;
    for (int i = 0; i < 30; ++i) {
      std::string text = mutate(c, rng);
      ASSERT_NE(text, c.serialize());
      bool accepted = false;
      try {
        accepted = check_certificate(Certificate::parse(text), table()).ok;
      } catch (const std::invalid_argument&) {
      }
      EXPECT_FALSE(accepted) << text;
    }
  }
}
