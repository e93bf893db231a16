#include <gtest/gtest.h>

#include <memory>

#include "generators.hpp"
#include "semitree/errors.hpp"
#include "semitree/json_io.hpp"

namespace semitree {
namespace {

using json_io::Json;
using testing::Rng;

TEST(JsonIo, Rationals) {
  EXPECT_EQ(json_io::encode(Rational(-3, 2)), Json("-3/2"));
  EXPECT_EQ(json_io::encode(Rational(4)), Json("4"));
  EXPECT_EQ(json_io::decode_rational(Json("6/4")), Rational(3, 2));
  EXPECT_EQ(json_io::decode_rational(Json(7)), Rational(7));
  EXPECT_THROW(json_io::decode_rational(Json(1.5)), ParseError);
  EXPECT_THROW(json_io::decode_rational(Json("x")), ParseError);
}

TEST(JsonIo, Points) {
  const Json j = Json::parse(R"({"a": "1", "segments": [["3", 1], ["2", 0]]})");
  const UPoint p = json_io::decode_upoint(j);
  EXPECT_EQ(p, UPoint(1, {{3, 1}, {2, 0}}));
  EXPECT_EQ(json_io::decode_upoint(json_io::encode(p)), p);
  EXPECT_THROW(json_io::decode_upoint(Json::parse(R"({"a": "1", "segments": [["2", 0]]})")), ParseError);
  EXPECT_THROW(json_io::decode_upoint(Json::parse(R"({"segments": []})")), ParseError);
  EXPECT_THROW(json_io::decode_upoint(Json::parse(R"({"a": "1", "segments": [["2"]]})")), ParseError);
  const UniversalTree z2(GroupSpec::cyclic(2));
  EXPECT_THROW(json_io::decode_point(Json::parse(R"({"a": "1", "segments": [["2", 3]]})"), z2), ParseError);
}

TEST(JsonIo, Topology) {
  const Json j = Json::parse(R"({"nodes": ["c", "x", "y", "z"],
                                  "edges": [["c", "x", "inf"], ["c", "y", "2"], ["c", "z", 3]],
                                  "base": "c"})");
  const RayTreeTopology t = json_io::decode_topology(j);
  EXPECT_EQ(t, testing::tripod(true));
  EXPECT_EQ(json_io::decode_topology(json_io::encode(t)), t);
  const Json numeric = Json::parse(R"({"nodes": [0, 1], "edges": [[0, 1, "1/2"]], "base": 0})");
  EXPECT_EQ(json_io::decode_topology(numeric).nodes, (std::vector<std::string>{"0", "1"}));
  EXPECT_THROW(json_io::decode_topology(Json::parse(R"({"nodes": ["a"], "edges": [["a", "b", "1"]], "base": "a"})")),
               ParseError);
}

TEST(JsonIo, LocationsAndEnds) {
  const RayTree tree(testing::tripod(true));
  EXPECT_EQ(json_io::decode_location(Json::parse(R"({"node": "y"})"), tree), tree.node_location(2));
  EXPECT_EQ(json_io::decode_location(Json::parse(R"({"edge": 2, "offset": "3"})"), tree), tree.node_location(3));
  const Location mid = tree.at(1, Rational(1, 3));
  EXPECT_EQ(json_io::decode_location(json_io::encode(mid), tree), mid);
  EXPECT_THROW(json_io::decode_location(Json::parse(R"({"node": "q"})"), tree), ParseError);
  EXPECT_THROW(json_io::decode_location(Json::parse(R"({"node": "x"})"), tree), ParseError);
  EXPECT_EQ(json_io::decode_end(json_io::encode(EndId{0}), tree), EndId{0});
  const UniversalTree u(GroupSpec::cyclic(2));
  EXPECT_EQ(json_io::encode(UpwardEnd{}), Json("omega"));
  EXPECT_NO_THROW(json_io::decode_end(Json("omega"), u));
  EXPECT_THROW(json_io::decode_end(Json("alpha"), u), ParseError);
}

TEST(JsonIo, OrdersRoundTrip) {
  const auto tree = std::make_shared<const RayTree>(testing::tripod(true));
  const auto rooted = Order<RayTree>::rooted(tree, tree->node_location(2));
  const auto end = Order<RayTree>::at_end(tree, EndId{0});
  EXPECT_EQ(json_io::decode_order<RayTree>(json_io::encode(rooted), tree), rooted);
  EXPECT_EQ(json_io::decode_order<RayTree>(json_io::encode(end), tree), end);
  const PointOrEnd<RayTree> v = EndId{0};
  EXPECT_EQ(json_io::decode_point_or_end(json_io::encode(v), *tree), v);
  EXPECT_THROW(json_io::decode_order<RayTree>(Json::parse(R"({"kind": "sideways"})"), tree), ParseError);
}

TEST(JsonIo, MetricsPosetsAndSimilarities) {
  const auto [m, p] = l1_plane_sample(2);
  const FiniteMetric m2 = json_io::decode_metric(json_io::encode(m));
  EXPECT_EQ(m2.d, m.d);
  const FinitePoset p2 = json_io::decode_poset(json_io::encode(p));
  EXPECT_EQ(p2.leq, p.leq);
  EXPECT_EQ(p2.join, p.join);

  Rng rng(61);
  const GroupSpec z5 = GroupSpec::cyclic(5);
  for (int i = 0; i < 20; ++i) {
    const StepFunction g = StepFunction::canonical(Rational(0), {{testing::positive_rational(rng, 6), 3}});
    const StepFunction f = StepFunction::canonical(Rational(0), {{testing::positive_rational(rng, 6), 1}});
    const Similarity s = Similarity::from_parts(z5, g, Rational(testing::uniform(rng, 1, 5), 3), f);
    EXPECT_EQ(json_io::decode_similarity(json_io::encode(s), z5), s);
  }
  EXPECT_THROW(json_io::decode_similarity(Json::parse(R"({"g": [], "lambda": "0", "f": []})"), z5), ArgumentError);
}

TEST(JsonIo, RandomPointRoundTrip) {
  Rng rng(62);
  for (const auto& g : {GroupSpec::cyclic(2), GroupSpec::integers()}) {
    for (const auto& p : testing::random_upoint_cloud(rng, g, 50)) {
      ASSERT_EQ(json_io::decode_upoint(Json::parse(json_io::encode(p).dump())), p);
    }
  }
  for (int round = 0; round < 10; ++round) {
    const RayTreeTopology t = testing::random_topology(rng, 2 + round, round % 3);
    ASSERT_EQ(json_io::decode_topology(Json::parse(json_io::encode(t).dump())), t);
  }
}

}  // namespace
}  // namespace semitree
