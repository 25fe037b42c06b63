#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "sylvester/errors.hpp"
#include "sylvester_io/json_io.hpp"

namespace sylvester::io {
namespace {

Point2 pt(long x, long y) { return {Rational(x), Rational(y)}; }

TEST(RationalJson, ParsesStringsAndIntegers) {
  EXPECT_EQ(rational_from_json(ordered_json("3/6")), Rational(1, 2));
  EXPECT_EQ(rational_from_json(ordered_json(-4)), Rational(-4));
  EXPECT_EQ(rational_from_json(ordered_json("0.25")), Rational(1, 4));
  EXPECT_EQ(to_json(Rational(-2, 6)), ordered_json("-1/3"));
  EXPECT_THROW(rational_from_json(ordered_json(0.5)), FormatError);
  EXPECT_THROW(rational_from_json(ordered_json("1/0")), FormatError);
  EXPECT_THROW(rational_from_json(ordered_json::array()), FormatError);
}

TEST(RationalJson, ExactValueCarriesFloat) {
  const auto j = exact_value(Rational(11, 36));
  EXPECT_EQ(j["exact"], "11/36");
  EXPECT_DOUBLE_EQ(j["float"].get<double>(), 11.0 / 36.0);
}

TEST(PolyJson, RoundTrip) {
  const MultiPoly x = MultiPoly::variable("x"), y = MultiPoly::variable("y");
  const MultiPoly p = x * x * Rational(3, 2) - y + MultiPoly(Rational(7));
  const ordered_json j = to_json(p);
  EXPECT_EQ(j["vars"], (ordered_json{"x", "y"}));
  EXPECT_EQ(poly_from_json(j), p);
  EXPECT_EQ(poly_from_json(ordered_json::parse(j.dump())), p);
}

TEST(PolyJson, RejectsArityMismatch) {
  const auto j = ordered_json::parse(R"({"vars":["x"],"terms":[{"coeff":"1","exps":[1,2]}]})");
  EXPECT_THROW(poly_from_json(j), FormatError);
}

TEST(BodyJson, RoundTripsEveryForm) {
  const std::vector<ConvexBody> bodies{unit_square(), make_triangle(pt(0, 0), pt(2, 0), pt(0, 1)),
                                       Disk{pt(1, -1), Rational(3, 2)},
                                       Ellipse{{Rational(2), Rational(1), Rational(0), Rational(1)}, pt(0, 3)}};
  for (const auto& b : bodies) EXPECT_EQ(body_from_json(ordered_json::parse(to_json(b).dump())), b);
}

TEST(BodyJson, TriangleAliasAndErrors) {
  const auto tri = body_from_json(ordered_json::parse(R"({"type":"triangle","vertices":[[0,0],["1",0],[0,"1"]]})"));
  EXPECT_EQ(std::get<Polygon>(tri).vertices.size(), 3u);
  EXPECT_THROW(body_from_json(ordered_json::parse(R"({"type":"triangle","vertices":[[0,0],[1,0]]})")), FormatError);
  EXPECT_THROW(body_from_json(ordered_json::parse(R"({"type":"blob"})")), FormatError);
  EXPECT_THROW(body_from_json(ordered_json::parse(R"({"vertices":[]})")), FormatError);
  EXPECT_THROW(body_from_json(ordered_json::parse(R"({"type":"disk","center":[0,0],"r":"-1"})")), PreconditionError);
  EXPECT_THROW(body_from_json(ordered_json::parse(R"({"type":"ellipse","m":[[1,0]],"t":[0,0]})")), FormatError);
}

TEST(CombJson, RoundTripAndValidation) {
  const Comb c{{Rational(1, 3), Rational(2, 3)}, {Rational(1), Rational(1)}};
  const Comb back = comb_from_json(to_json(c));
  EXPECT_EQ(back.x, c.x);
  EXPECT_EQ(back.l, c.l);
  EXPECT_THROW(comb_from_json(ordered_json::parse(R"({"x":["1/2","1/3"],"l":["1","1"]})")), PreconditionError);
}

TEST(FamilyJson, SegmentsAndNormalizedForms) {
  const auto from_segments = family_from_json(ordered_json::parse(
      R"({"segments":[{"x":"0","y_low":"0","y_high":"1"},{"x":"1/2","y_low":"0","y_high":"1/2"},{"x":"1","y_low":"0","y_high":"0"}]})"));
  EXPECT_EQ(from_segments.L0, Rational(1, 2));
  EXPECT_EQ(from_segments.L1, Rational(0));
  const ordered_json j = to_json(from_segments);
  EXPECT_EQ(j["N"], 1);
  EXPECT_EQ(family_from_json(j), from_segments);
  EXPECT_THROW(family_from_json(ordered_json::parse(R"({"xbar":["0","1"],"L0":"1","L1":"1","lambda":["0"],"beta":["0","0"]})")),
               PreconditionError);
}

TEST(ResultJson, EstimateFields) {
  EstimateResult r;
  r.n = 5;
  r.samples = 100;
  r.hits = 30;
  r.estimate = 0.3;
  r.std_error = 0.05;
  const ordered_json j = to_json(r);
  EXPECT_EQ(j["method"], "plain");
  EXPECT_EQ(j["hits"], 30);
  EXPECT_EQ(j["ci95"].size(), 2u);
  r.hits.reset();
  EXPECT_TRUE(to_json(r)["hits"].is_null());
}

TEST(ResultJson, PiConstant) {
  const ordered_json j = to_json(disk_constant(4));
  EXPECT_EQ(j["rational_part"], "1");
  EXPECT_EQ(j["pi2_coefficient"], "-35/12");
  EXPECT_EQ(j["text"], "1 - 35/(12 pi^2)");
}

TEST(ResultJson, CertificateSummary) {
  CertificateReport r;
  r.name = "demo";
  r.identity_checks.push_back({"ok", 4, true, true, ""});
  EXPECT_EQ(to_json(r)["summary"], "pass");
  r.identity_checks.push_back({"bad", 4, false, true, "mismatch"});
  const ordered_json j = to_json(r);
  EXPECT_EQ(j["summary"], "fail");
  EXPECT_EQ(j["identity_checks"][1]["detail"], "mismatch");
}

TEST(LoadDocument, InlineAndFile) {
  EXPECT_EQ(load_document(R"(  {"a": 1})")["a"], 1);
  const std::string path = ::testing::TempDir() + "sylvester_doc.json";
  {
    std::ofstream out(path);
    out << R"({"type":"disk","center":[0,0],"r":1})";
  }
  EXPECT_EQ(load_document(path)["type"], "disk");
  std::remove(path.c_str());
  EXPECT_THROW(load_document("/nonexistent/file.json"), FormatError);
  EXPECT_THROW(load_document("{broken"), FormatError);
  EXPECT_THROW(load_document("   "), FormatError);
}

}  // namespace
}  // namespace sylvester::io
