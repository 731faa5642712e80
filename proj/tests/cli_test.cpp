#include <gtest/gtest.h>

#include <sstream>

#include "pgl3/cli.hpp"

using pgl3::json;
namespace cli = pgl3::cli;

namespace {

struct Run {
  int code = -1;
  json body;
  std::string text;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "pgl3");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.text = err.str();
  try {
    r.body = json::parse(out.str());
  } catch (const json::parse_error&) {
    r.body = out.str();
  }
  return r;
}

std::string sample(const std::string& name) { return std::string(PGL3_SAMPLES_DIR) + "/data/" + name + ".json"; }

std::string error_kind(const Run& r) { return r.body["error"]["kind"].get<std::string>(); }

} // namespace

TEST(Cli, Classify) {
  const auto no = run({"classify", "--n", "7", "--a", "1", "--b", "3"});
  EXPECT_EQ(no.code, cli::kExitOk);
  EXPECT_EQ(no.body["definable"], false);
  EXPECT_EQ(no.body["pseudo_real"], true);
  EXPECT_EQ(no.body["normal_form"]["n"], 7);

  const auto yes = run({"classify", "--n", "5", "--a", "1", "--b", "4"});
  EXPECT_EQ(yes.code, cli::kExitOk);
  EXPECT_EQ(yes.body["definable"], true);
  // the triple is taken as given, not canonicalized
  EXPECT_EQ(yes.body["normal_form"]["b"], 4);
}

TEST(Cli, InvalidInput) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"classify", "--n", "7", "--a", "0", "--b", "0"},
           {"classify", "--n", "7"},
           {"classify", "--n", "7", "--a", "1", "--b", "3", "--bogus"},
           {},
           {"verify", "m24"},
           {"curve", "quintic", "--a", "1/0"},
           {"curve", "quintic", "--check", "genus"},
           {"curve", "sextic"},
           {"classify-element", "--matrix", "/nonexistent.json"},
           {"selftest", "--fault", "everything"},
           {"real-model", "cyclic", "--n", "7", "--a", "1", "--b", "3"},
       }) {
    const auto r = run(args);
    EXPECT_EQ(r.code, cli::kExitInvalid) << (args.empty() ? "" : args[0]);
    EXPECT_TRUE(r.body.is_object() && r.body.contains("error")) << r.body.dump();
  }
  EXPECT_EQ(error_kind(run({"curve", "quintic", "--a", "1/0"})), "DivisionByZero");
  EXPECT_EQ(error_kind(run({"real-model", "cyclic", "--n", "7", "--a", "1", "--b", "3"})), "CriterionFailed");
}

TEST(Cli, Help) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, cli::kExitOk);
}

TEST(Cli, ClassifyElementSamples) {
  const auto d = run({"classify-element", "--matrix", sample("diag_z5_342")});
  EXPECT_EQ(d.code, cli::kExitOk);
  EXPECT_EQ(d.body["definable"], true);
  EXPECT_EQ(d.body["normal_form"], (json{{"n", 5}, {"a", 1}, {"b", 2}, {"homology", false}}));

  const auto w = run({"classify-element", "--matrix", sample("psl27_witness")});
  EXPECT_EQ(w.body["definable"], false);

  const auto h = run({"classify-element", "--matrix", sample("homology_3")});
  EXPECT_EQ(h.body["normal_form"]["homology"], true);
  EXPECT_EQ(h.body["definable"], false);

  const auto u = run({"classify-element", "--matrix", sample("unipotent")});
  EXPECT_EQ(u.code, cli::kExitOk);
  EXPECT_TRUE(u.body["definable"].is_null());
  EXPECT_FALSE(u.body.contains("normal_form"));

  EXPECT_EQ(run({"classify-element", "--matrix", sample("cycle_yzx")}).body["normal_form"]["n"], 3);
}

TEST(Cli, RealModels) {
  const auto c = run({"real-model", "cyclic", "--n", "5", "--a", "1", "--b", "4"});
  EXPECT_EQ(c.code, cli::kExitOk);
  EXPECT_EQ(c.body["kind"], "cyclic");
  const auto d = run({"real-model", "dihedral", "--n", "5", "--a", "4"});
  EXPECT_EQ(d.code, cli::kExitOk);
  const auto a5 = run({"real-model", "a5", "--alpha", "1", "--beta", "2+i"});
  EXPECT_EQ(a5.code, cli::kExitOk);
  EXPECT_EQ(run({"real-model", "a5", "--alpha", "1", "--beta", "1"}).code, cli::kExitInvalid);
  EXPECT_EQ(run({"real-model", "dihedral", "--n", "6", "--a", "2"}).code, cli::kExitInvalid);
}

TEST(Cli, CatalogAndVerify) {
  const auto cat = run({"catalog"});
  EXPECT_EQ(cat.code, cli::kExitOk);
  ASSERT_EQ(cat.body["groups"].size(), 6u);
  for (const char* name : {"hess216", "hess72", "hess36", "a5", "a6", "psl27"}) {
    const auto v = run({"verify", name});
    EXPECT_EQ(v.code, cli::kExitOk) << name;
    EXPECT_EQ(v.body["passed"], true) << name;
  }
  EXPECT_EQ(run({"verify", "hess36"}).body["order"], 36);
}

TEST(Cli, Curve) {
  const auto r = run({"curve", "quintic", "--a", "1", "--b", "2"});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_EQ(r.body["smooth"], true);
  EXPECT_EQ(r.body["aut_contains_D10"], true);
  EXPECT_EQ(r.body["moduli_obstruction"], true);
  EXPECT_TRUE(r.body["certificates"].contains("moduli"));
  const auto s = run({"curve", "quintic", "--a", "3/2", "--b", "-1", "--check", "smooth"});
  EXPECT_EQ(s.body["smooth"], true);
  EXPECT_FALSE(s.body.contains("moduli_obstruction"));
}

TEST(Cli, PrettyTextAgreesWithJson) {
  const auto r = run({"--pretty", "classify", "--n", "7", "--a", "1", "--b", "3"});
  EXPECT_NE(r.text.find("definable over R:     no"), std::string::npos) << r.text;
  EXPECT_NE(r.text.find("pseudo-real:          yes"), std::string::npos);
  const auto y = run({"--pretty", "classify", "--n", "5", "--a", "1", "--b", "4"});
  EXPECT_NE(y.text.find("definable over R:     yes"), std::string::npos) << y.text;
  EXPECT_TRUE(run({"classify", "--n", "5", "--a", "1", "--b", "4"}).text.empty());
}

TEST(Cli, SelftestIsDeterministic) {
  const auto a = run({"selftest", "--cases", "5"});
  const auto b = run({"selftest", "--cases", "5"});
  EXPECT_EQ(a.body, b.body);
  ASSERT_EQ(a.body["criteria"].size(), 9u);
  for (const auto& c : a.body["criteria"])
    if (c["criterion"] != 9) EXPECT_EQ(c["passed"], true) << c.dump();
  // the property criterion needs at least 1000 cases per suite
  EXPECT_EQ(a.body["criteria"][8]["passed"], false);
  EXPECT_EQ(a.code, cli::kExitVerification);
}

TEST(Cli, SelftestFaultIsDetected) {
  const auto r = run({"selftest", "--cases", "5", "--fault", "hessian"});
  EXPECT_EQ(r.code, cli::kExitVerification);
  EXPECT_EQ(r.body["passed"], false);
  bool five_failed = false;
  for (const auto& c : r.body["criteria"])
    if (c["criterion"] == 5) five_failed = c["passed"] == false;
  EXPECT_TRUE(five_failed);
}
