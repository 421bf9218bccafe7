#include <gtest/gtest.h>

#include "support.hpp"
#include "uhull/errors.hpp"
#include "uhull/io.hpp"
#include "uhull/svg.hpp"

using namespace uhull;
using uhull::testing::Gen;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidInput;
}

bool same_model(const UncertainPointSet& a, const UncertainPointSet& b) {
  if (a.dimension != b.dimension || a.kind != b.kind || a.groups.size() != b.groups.size()) return false;
  for (std::size_t g = 0; g < a.groups.size(); ++g) {
    if (a.groups[g].size() != b.groups[g].size()) return false;
    for (std::size_t i = 0; i < a.groups[g].size(); ++i)
      if (!(a.groups[g][i].location == b.groups[g][i].location) || a.groups[g][i].prob != b.groups[g][i].prob)
        return false;
  }
  return true;
}

}  // namespace

TEST(ModelFile, ExactDecimals) {
  auto m = io::parse_model(R"({"dimension": 2, "model": "multipoint", "points": [
      {"sites": [{"coords": ["0.1", "-3/4"], "prob": "0.25"}, {"coords": [2, "1e-2"], "prob": "1/3"}]}]})");
  ASSERT_EQ(m.groups.size(), 1u);
  EXPECT_EQ(m.groups[0][0].location.x(), Rational(1, 10));
  EXPECT_EQ(m.groups[0][0].location.y(), Rational(-3, 4));
  EXPECT_EQ(m.groups[0][1].location.y(), Rational(1, 100));
  EXPECT_EQ(m.groups[0][1].prob, Rational(1, 3));
}

TEST(ModelFile, RoundTrip) {
  Gen g(70);
  for (int it = 0; it < 10; ++it) {
    auto m = it % 2 ? uhull::testing::random_unipoint(g, 6, 2 + it % 3) : uhull::testing::random_multipoint(g, 3, 2, 2);
    EXPECT_TRUE(same_model(m, io::parse_model(io::dump_model(m))));
  }
}

TEST(ModelFile, Rejections) {
  EXPECT_EQ(code_of([] { io::parse_model("{"); }), ErrorCode::InvalidInput);
  EXPECT_EQ(code_of([] { io::parse_model(R"({"dimension": 2, "model": "x", "points": []})"); }),
            ErrorCode::InvalidInput);
  EXPECT_EQ(code_of([] {
              io::parse_model(R"({"dimension": 2, "model": "unipoint", "points": [{"sites": [{"coords": [0.5, "1"], "prob": "1"}]}]})");
            }),
            ErrorCode::InvalidInput);
  EXPECT_EQ(code_of([] {
              io::parse_model(R"({"dimension": 2, "model": "unipoint", "points": [{"sites": [{"coords": ["1"], "prob": "1"}]}]})");
            }),
            ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([] {
              io::parse_model(R"({"dimension": 2, "model": "unipoint", "points": [{"sites": [{"coords": ["0", "1"], "prob": "1.5"}]}]})");
            }),
            ErrorCode::ProbabilityOutOfRange);
  EXPECT_EQ(code_of([] {
              io::parse_model(R"({"dimension": 2, "model": "multipoint", "points": [{"sites": [
                  {"coords": ["0", "1"], "prob": "0.75"}, {"coords": ["2", "1"], "prob": "0.5"}]}]})");
            }),
            ErrorCode::GroupMassExceedsOne);
  EXPECT_EQ(code_of([] { io::parse_model(R"({"dimension": "2", "model": "unipoint", "points": []})"); }),
            ErrorCode::InvalidInput);
}

TEST(QueryFile, ParsesAndChecksDimension) {
  auto qs = io::parse_queries(R"({"queries": [["0", "1/2"], [3, "-0.5"]]})", 2);
  ASSERT_EQ(qs.size(), 2u);
  EXPECT_EQ(qs[1].y(), Rational(-1, 2));
  EXPECT_TRUE(io::parse_queries(R"({"queries": []})", 3).empty());
  EXPECT_EQ(code_of([] { io::parse_queries(R"({"queries": [["0"]]})", 2); }), ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([] { io::parse_queries(R"({"points": []})", 2); }), ErrorCode::InvalidInput);
}

TEST(MapFile, RoundTrip) {
  Gen g(71);
  auto m = uhull::testing::random_unipoint(g, 6);
  auto pm = ProbabilityMap::build(m);
  auto text = io::dump_map(pm);
  auto back = io::load_map(text);
  ASSERT_EQ(back.faces().size(), pm.faces().size());
  for (std::size_t f = 0; f < pm.faces().size(); ++f) {
    EXPECT_EQ(back.faces()[f].probability, pm.faces()[f].probability);
    EXPECT_EQ(back.faces()[f].representative, pm.faces()[f].representative);
  }
  EXPECT_EQ(io::dump_map(back), text);
  for (int k = 0; k < 20; ++k) {
    Point q = uhull::testing::random_query(g, m);
    EXPECT_EQ(back.locate(q).probability, pm.locate(q).probability);
  }
}

TEST(MapFile, RejectsTampering) {
  auto m = UncertainPointSet::unipoint({{0, 10}, {-10, -5}, {10, -5}}, std::vector<Rational>(3, Rational(1, 2)));
  auto text = io::dump_map(ProbabilityMap::build(m));
  auto bad_version = text;
  bad_version.replace(bad_version.find("\"version\":1"), 11, "\"version\":9");
  EXPECT_EQ(code_of([&] { io::load_map(bad_version); }), ErrorCode::InvalidInput);
  auto bad_probs = text;
  bad_probs.replace(bad_probs.find("\"probabilities\":["), 17, "\"probabilities\":[\"1\",");
  EXPECT_EQ(code_of([&] { io::load_map(bad_probs); }), ErrorCode::InvalidInput);
}

TEST(IndexFile, RoundTrip) {
  Gen g(72);
  auto m = uhull::testing::random_multipoint(g, 4, 2, 2);
  auto idx = build_mc_index(m, 0.2, 0.1, 0xfeedbeefcafe1234ULL);
  auto back = io::load_mc_index(io::dump_mc_index(idx));
  EXPECT_EQ(back.samples(), idx.samples());
  EXPECT_EQ(back.seed(), idx.seed());
  EXPECT_EQ(back.epsilon(), idx.epsilon());
  EXPECT_EQ(back.delta(), idx.delta());
  for (int k = 0; k < 20; ++k) {
    Point q = uhull::testing::random_query(g, m);
    EXPECT_EQ(back.query(q), idx.query(q));
  }
}

TEST(Svg, OnePolygonPerFace) {
  auto m = UncertainPointSet::unipoint({{0, 10}, {-10, -5}, {10, -5}}, std::vector<Rational>(3, Rational(1, 2)));
  auto text = svg::render_map(ProbabilityMap::build(m));
  auto count = [&](const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
    return n;
  };
  EXPECT_EQ(text.rfind("<svg", 0), 0u);
  EXPECT_EQ(count("<polygon"), 7u);
  EXPECT_EQ(count("class=\"face bounded\""), 1u);
  EXPECT_EQ(count("data-probability=\"1/8\""), 1u);
  EXPECT_EQ(count("<circle"), 3u);
  EXPECT_NE(text.find("</svg>"), std::string::npos);
}
