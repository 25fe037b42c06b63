#include <gtest/gtest.h>

#include <sstream>

#include "sylvester_io/cli.hpp"
#include "sylvester_io/json_io.hpp"

namespace sylvester::cli {
namespace {

using io::ordered_json;

constexpr const char* kComb = R"({"x":["1/3","2/3"],"l":["1","1"]})";
constexpr const char* kTriangle = R"({"type":"triangle","vertices":[[0,0],[1,0],[0,1]]})";

struct Invocation {
  int code;
  std::string out;
  std::string err;
  ordered_json doc() const { return ordered_json::parse(out); }
};

Invocation run(std::vector<std::string> args) {
  args.insert(args.begin(), "sylvester");
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

TEST(Cli, CombExample) {
  const Invocation r = run({"comb", "--comb", kComb});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto d = r.doc();
  EXPECT_EQ(d["result"]["value"], "1/2");
  EXPECT_EQ(d["config"]["command"], "comb");
  EXPECT_EQ(d["config"]["options"]["comb"]["x"][0], "1/3");
}

TEST(Cli, ConfigEchoIsComplete) {
  const auto d = run({"--seed", "9", "--samples", "300", "--workers", "2", "--n", "5", "comb", "--comb", kComb}).doc();
  const auto& c = d["config"];
  for (const char* key : {"command", "seed", "samples", "workers", "output", "n", "body", "options"}) {
    EXPECT_TRUE(c.contains(key)) << key;
  }
  EXPECT_EQ(c["seed"], 9);
  EXPECT_EQ(c["samples"], 300);
  EXPECT_EQ(c["workers"], 2);
  EXPECT_EQ(c["n"], 5);
}

TEST(Cli, ClosedFormsContainsTriangleFive) {
  const Invocation r = run({"closed-forms"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("11/36"), std::string::npos);
  int adopted_disk = 0;
  const auto doc = r.doc();
  for (const auto& row : doc["result"]["rows"]) {
    if (row["body"] == "disk" && row["adopted"] == true) ++adopted_disk;
  }
  EXPECT_EQ(adopted_disk, 2);
}

TEST(Cli, VerifyN4Passes) {
  const Invocation r = run({"verify", "--case", "n4"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.doc()["result"]["summary"], "pass");
}

TEST(Cli, MutationFailsWithCheckExitCode) {
  const Invocation r = run({"verify", "--case", "n4", "--mutate", "dif1:1"});
  EXPECT_EQ(r.code, kExitCertificate);
  EXPECT_EQ(r.doc()["result"]["summary"], "fail");
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({"estimate"}).code, kExitUsage);
  EXPECT_EQ(run({"--samples", "0", "estimate", "--body", kTriangle}).code, kExitUsage);
  EXPECT_EQ(run({"--output", "xml", "closed-forms"}).code, kExitUsage);
  EXPECT_EQ(run({"comb", "--comb", "{not json"}).code, kExitUsage);
  EXPECT_EQ(run({"transform", "--body", kTriangle, "--op", "rotate"}).code, kExitUsage);
  EXPECT_EQ(run({"verify", "--case", "n7"}).code, kExitUsage);
}

TEST(Cli, PreconditionErrorsSurfaceVerbatim) {
  const Invocation degenerate = run({"--body", R"({"type":"polygon","vertices":[[0,0],[1,1],[2,2]]})", "estimate"});
  EXPECT_EQ(degenerate.code, kExitPrecondition);
  EXPECT_FALSE(degenerate.err.empty());
  const Invocation bad_comb = run({"comb", "--comb", R"({"x":["2/3","1/3"],"l":["1","1"]})"});
  EXPECT_EQ(bad_comb.code, kExitPrecondition);
  const Invocation rotated =
      run({"--body", R"({"type":"ellipse","m":[[1,1],[0,1]],"t":[0,0]})", "transform", "--op", "sym"});
  EXPECT_EQ(rotated.code, kExitPrecondition);
}

TEST(Cli, EstimateIsByteIdenticalAcrossRuns) {
  const std::vector<std::string> args{"--seed", "4", "--samples", "5000", "--workers", "3", "--n", "5",
                                      "--body", kTriangle, "estimate"};
  const Invocation a = run(args), b = run(args);
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto d = a.doc();
  EXPECT_EQ(d["result"]["samples"], 5000);
  EXPECT_EQ(d["result"]["method"], "plain");
}

TEST(Cli, RbEstimateHasNoHits) {
  const Invocation r = run({"--samples", "40", "--n", "4", "--body", kTriangle, "estimate", "--rb"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(r.doc()["result"]["hits"].is_null());
}

TEST(Cli, KpolyMethodsAgree) {
  const Invocation r = run({"kpoly", "--m", "3", "--x", "1/5,1/2,4/5", "--l", "1,2,3/2", "--method", "all"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto res = r.doc()["result"];
  EXPECT_EQ(res["agree"], true);
  EXPECT_EQ(res["K"], "1857/3200");
}

TEST(Cli, TransformSymmetrizesTriangle) {
  const Invocation r = run({"--body", kTriangle, "transform", "--op", "sym"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto body = r.doc()["result"]["body"];
  EXPECT_EQ(body["type"], "polygon");
  EXPECT_EQ(body["vertices"].size(), 3u);
  EXPECT_NE(r.out.find("-1/2"), std::string::npos);
}

TEST(Cli, CondOnUnitSquareFamily) {
  const Invocation r = run({"cond", "--family",
                     R"({"segments":[{"x":0,"y_low":0,"y_high":1},{"x":"1/3","y_low":0,"y_high":1},)"
                     R"({"x":"2/3","y_low":0,"y_high":1},{"x":1,"y_low":0,"y_high":1}]})"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.doc()["result"]["in_compa"], true);
}

TEST(Cli, CsvAndPrettyOutputs) {
  const Invocation csv = run({"--output", "csv", "comb", "--comb", kComb});
  ASSERT_EQ(csv.code, kExitOk);
  EXPECT_NE(csv.out.find("# config.command=comb"), std::string::npos);
  EXPECT_NE(csv.out.find("value,1/2"), std::string::npos);

  const Invocation table = run({"--output", "csv", "closed-forms"});
  EXPECT_NE(table.out.find("body,n,exact,float,reading,adopted"), std::string::npos);
  EXPECT_NE(table.out.find("triangle,5,11/36"), std::string::npos);

  const Invocation pretty = run({"--output", "pretty", "comb", "--comb", kComb});
  EXPECT_NE(pretty.out.find("value: 1/2"), std::string::npos);
  EXPECT_NE(pretty.out.find("config:"), std::string::npos);
}

TEST(Cli, FalsificationReportsWitnesses) {
  const Invocation r = run({"verify", "--case", "n5", "--grid", "2", "--falsify", "400"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto res = r.doc()["result"];
  ASSERT_TRUE(res.contains("outside_compa"));
  ASSERT_EQ(res["outside_compa"].size(), 2u);
  EXPECT_EQ(res["outside_compa"][0]["kind"], "minoration");
  EXPECT_EQ(res["outside_compa"][0]["found_negative"], true);
  EXPECT_EQ(res["outside_compa"][1]["found_negative"], true);
}

}  // namespace
}  // namespace sylvester::cli
