#include <gtest/gtest.h>

#include "qorbit/cli.hpp"

using namespace qorbit;
using cli::Json;

namespace {

const std::string kSource = R"({"eigenvalues": ["0", "1", "2"], "multiplicities": [1, 1, 1]})";
const std::string kTarget = R"({"eigenvalues": ["0", "5"], "multiplicities": [1, 2]})";

struct CliRun {
  int code;
  Json json;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  auto o = cli::run(args);
  return {o.exit_code, Json::parse(o.out), o.err};
}

}  // namespace

TEST(Cli, ClassifyWorkedExample) {
  CliRun r = run({"classify", "--source", kSource, "--target", kTarget});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.json["schema"], 1);
  EXPECT_EQ(r.json["status"], "pass");
  const Json& c = r.json["configurations"][0];
  EXPECT_EQ(c["a_source"], "0");
  EXPECT_EQ(c["p"], Json::parse(R"(["0", "15/2", "-5/2"])"));
  EXPECT_EQ(r.json["configurations"].size(), 3u);
}

TEST(Cli, BundlePolyWorkedExample) {
  CliRun r = run({"bundle-poly", "--source", kSource, "--target", kTarget});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.json["p"], Json::parse(R"(["0", "15/2", "-5/2"])"));
}

TEST(Cli, IdentitiesThree) {
  CliRun r = run({"identities", "--l", "3"});
  EXPECT_EQ(r.code, 0);
  for (const auto& [k, v] : r.json["symbolic"].items()) EXPECT_TRUE(v.get<bool>()) << k;
  EXPECT_TRUE(r.json["samples"].is_null());
}

TEST(Cli, IdentitiesSamplesOnlyAboveSymbolicLimit) {
  EXPECT_EQ(run({"identities", "--l", "7"}).code, 3);
  CliRun r = run({"identities", "--l", "7", "--samples", "5"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.json["samples"]["passed"]["main_identity"], 5);
}

TEST(Cli, AxiomsZeroIsUsageError) {
  CliRun r = run({"axioms", "--n", "0"});
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(r.json["status"], "error");
  EXPECT_EQ(r.json["error"]["kind"], "usage");
}

TEST(Cli, AxiomsTwo) {
  CliRun r = run({"axioms", "--n", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.json["ybe"].get<bool>());
  EXPECT_TRUE(r.json["hecke"].get<bool>());
  EXPECT_EQ(parse_expression(r.json["trace_of_D"].get<std::string>()), parse_expression("1 + q^-2"));
}

TEST(Cli, MalformedOrbitPointsAtField) {
  CliRun r = run({"classify", "--source", R"({"eigenvalues": ["0", "1/"], "multiplicities": [1, 1]})", "--target",
               kTarget});
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(r.json["error"]["input"], "source");
  EXPECT_EQ(r.json["error"]["pointer"], "/eigenvalues/1");

  r = run({"classify", "--source", kSource, "--target", R"({"eigenvalues": ["0", "5"], "multiplicities": [1]})"});
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(r.json["error"]["input"], "target");
  EXPECT_EQ(r.json["error"]["pointer"], "/multiplicities");

  r = run({"classify", "--source", R"({"eigenvalues": ["0", "1"], "multiplicities": [1, -2]})", "--target", kTarget});
  EXPECT_EQ(r.json["error"]["pointer"], "/multiplicities/1");

  r = run({"classify", "--source", R"({"eigenvalues": ["0", "1"], "mults": [1, 1]})", "--target", kTarget});
  EXPECT_EQ(r.json["error"]["pointer"], "/mults");

  r = run({"classify", "--source", R"({"eigenvalues": ["x", "x"], "multiplicities": [1, 1]})", "--target", kTarget});
  EXPECT_EQ(r.json["error"]["pointer"], "/eigenvalues/1");

  r = run({"classify", "--source", "{", "--target", kTarget});
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(r.json["error"]["pointer"], "");
}

TEST(Cli, RejectedTargetIsFailWithWitness) {
  CliRun r = run({"classify", "--source", R"({"eigenvalues": [1, 2, 3, 4], "multiplicities": [1, 1, 1, 1]})",
               "--target", R"({"eigenvalues": [7, 8, 9], "multiplicities": [2, 1, 1]})"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.json["failure_reason"], "target not symmetric");
  ASSERT_FALSE(r.json["witnesses"].empty());
  EXPECT_FALSE(r.json["witnesses"][0]["bracket_system"]["consistent"].get<bool>());
}

TEST(Cli, ThetaLinear) {
  // two simple eigenvalues: ϑ₁ = l1 + l2 - t
  CliRun r = run({"theta", "--r", "1", "--orbit", R"({"eigenvalues": ["l1", "l2"], "multiplicities": [1, 1]})"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(parse_expression(r.json["value"].get<std::string>()), parse_expression("l1 + l2 - t"));
  EXPECT_TRUE(r.json["classical_limit"].get<bool>());
}

TEST(Cli, Flatness) {
  CliRun r = run({"flatness", "--n", "2", "--degree", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.json["dimension"], 15);
}

TEST(Cli, HeckeCertificateAndInconclusive) {
  CliRun r = run({"hecke", "--qpoly", "0,c1,c2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.json["verified"].get<bool>());
  EXPECT_EQ(r.json["degree_bound"], 8);
  r = run({"hecke", "--qpoly", "[\"1\", \"1\"]", "--bound", "4"});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(r.json["certificate_size"].is_null());
  EXPECT_EQ(run({"hecke", "--qpoly", "0,0,1", "--bound", "3"}).code, 3);
  r = run({"hecke", "--qpoly", "0,c1+"});
  EXPECT_EQ(r.json["error"]["pointer"], "/1");
}

TEST(Cli, VerifyBundleWorkedExample) {
  CliRun r = run({"verify-bundle", "--source", kSource, "--target", kTarget});
  EXPECT_EQ(r.code, 0);
  for (const auto& [k, v] : r.json["checks"].items()) EXPECT_TRUE(v.get<bool>()) << k;
  EXPECT_TRUE(r.json["hecke"]["verified"].get<bool>());
  EXPECT_EQ(run({"verify-bundle", "--source", kSource, "--target", kTarget, "--config", "4"}).code, 3);
}

TEST(Cli, VerifyBundleDirect) {
  std::string s = R"({"eigenvalues": ["0", "1"], "multiplicities": [1, 1]})";
  std::string t = R"({"eigenvalues": ["0", "3"], "multiplicities": [1, 1]})";
  CliRun r = run({"verify-bundle", "--source", s, "--target", t, "--direct"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.json["checks"]["direct_membership"].get<bool>());
  EXPECT_EQ(run({"verify-bundle", "--source", kSource, "--target", kTarget, "--direct"}).code, 3);
}

TEST(Cli, Twist) {
  CliRun r = run({"twist", "--n", "2", "--params", "qu12=q^3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.json["params"]["qu12"], "q^3");
  for (const auto& [k, v] : r.json["checks"].items()) EXPECT_TRUE(v.get<bool>()) << k;
  EXPECT_EQ(run({"twist", "--n", "2", "--params", "qu13=2"}).code, 3);
  EXPECT_EQ(run({"twist", "--n", "2", "--params", "qu12=0"}).code, 3);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 3);
  EXPECT_EQ(run({"frobnicate"}).code, 3);
  EXPECT_EQ(run({"classify", "--source", kSource}).code, 3);
  auto help = cli::run({"--help"});
  EXPECT_EQ(help.exit_code, 0);
  EXPECT_NE(help.out.find("verify-bundle"), std::string::npos);
}

TEST(Cli, RepeatedRunsAreIdentical) {
  std::vector<std::string> args{"verify-bundle", "--source", R"({"eigenvalues": ["l1", "l2", "l3"], "multiplicities": [1, 1, 1]})",
                                "--target", R"({"eigenvalues": ["m1", "m2"], "multiplicities": [1, 2]})"};
  auto a = cli::run(args), b = cli::run(args);
  EXPECT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.err, b.err);
}
