#include <gtest/gtest.h>

#include "generators.hpp"
#include "semitree/dot_export.hpp"
#include "semitree/ray_tree.hpp"
#include "semitree/universal_tree.hpp"

namespace semitree {
namespace {

TEST(DotExport, TripodLeavesSpanFourNodes) {
  const RayTree tree(testing::tripod());
  const std::vector<Location> leaves{tree.node_location(1), tree.node_location(2), tree.node_location(3)};
  const auto sub = span_subtree(tree, std::span<const Location>(leaves));
  ASSERT_EQ(sub.vertices.size(), 4u);
  EXPECT_EQ(sub.vertices[3], tree.node_location(0));
  std::vector<Rational> lengths;
  for (const auto& e : sub.edges) lengths.push_back(e.length);
  std::sort(lengths.begin(), lengths.end());
  EXPECT_EQ(lengths, (std::vector<Rational>{Rational(1), Rational(2), Rational(3)}));
  EXPECT_EQ(export_dot(tree, std::span<const Location>(leaves)),
            "graph spanned_subtree {\n"
            "  n0 [label=\"x\"];\n"
            "  n1 [label=\"y\"];\n"
            "  n2 [label=\"z\"];\n"
            "  n3 [label=\"c\"];\n"
            "  n0 -- n3 [label=\"1\"];\n"
            "  n1 -- n3 [label=\"2\"];\n"
            "  n2 -- n3 [label=\"3\"];\n"
            "}\n");
}

TEST(DotExport, SmallSets) {
  const UniversalTree u(GroupSpec::cyclic(2));
  const std::vector<UPoint> one{UPoint(1, {{2, 1}})};
  const auto single = span_subtree(u, std::span<const UPoint>(one));
  EXPECT_EQ(single.vertices.size(), 1u);
  EXPECT_TRUE(single.edges.empty());
  const std::vector<UPoint> two{UPoint(1, {{2, 1}}), UPoint(1, {})};
  const auto pair = span_subtree(u, std::span<const UPoint>(two));
  ASSERT_EQ(pair.edges.size(), 1u);
  EXPECT_EQ(pair.edges[0].length, Rational(2));
  EXPECT_THROW(span_subtree(u, std::span<const UPoint>()), ArgumentError);
}

TEST(DotExport, SpannedSubtreeIsATreeWithExactLengths) {
  testing::Rng rng(71);
  const UniversalTree u(GroupSpec::cyclic(5));
  for (int round = 0; round < 20; ++round) {
    auto pts = testing::random_upoint_cloud(rng, GroupSpec::cyclic(5), 7);
    const auto sub = span_subtree(u, std::span<const UPoint>(pts));
    ASSERT_EQ(sub.edges.size() + 1, sub.vertices.size());
    for (const auto& e : sub.edges) ASSERT_EQ(e.length, dist(sub.vertices[e.from], sub.vertices[e.to]));
    const std::string a = export_dot(u, std::span<const UPoint>(pts));
    ASSERT_EQ(a, export_dot(u, std::span<const UPoint>(pts)));
  }
}

}  // namespace
}  // namespace semitree
