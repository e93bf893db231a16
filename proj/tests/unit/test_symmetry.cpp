#include <gtest/gtest.h>

#include <set>

#include "generators.hpp"
#include "semitree/errors.hpp"
#include "semitree/symmetry.hpp"

namespace semitree {
namespace {

using testing::Rng;

const GroupSpec kZ2 = GroupSpec::cyclic(2);

UPoint P(Rational a, std::vector<Jump> segments = {}) { return UPoint(std::move(a), std::move(segments)); }

StepFunction random_shift(Rng& rng, const GroupSpec& g) {
  std::vector<Jump> raw;
  const int jumps = static_cast<int>(testing::uniform(rng, 0, 3));
  std::vector<Rational> cuts;
  for (int i = 0; i < jumps; ++i) cuts.push_back(testing::positive_rational(rng, 8));
  std::sort(cuts.begin(), cuts.end(), std::greater<>());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  for (const auto& c : cuts) raw.push_back(Jump{c, testing::group_value(rng, g)});
  return StepFunction::canonical(Rational(0), raw);
}

Similarity random_similarity(Rng& rng, const GroupSpec& g) {
  const Rational lambda(testing::uniform(rng, 1, 6), testing::uniform(rng, 1, 6));
  return Similarity::from_parts(g, random_shift(rng, g), lambda, random_shift(rng, g));
}

TEST(Similarity, Apply) {
  EXPECT_EQ(apply(Similarity::homothety(kZ2, 2), P(1, {{2, 1}})), P(2, {{4, 1}}));
  const auto rf = Similarity::translation(kZ2, P(1, {{2, 1}}));
  EXPECT_EQ(apply(rf, P(1)), P(1, {{2, 1}}));
  EXPECT_EQ(apply(rf, P(1, {{2, 1}})), P(1));
  const UPoint p = P(Rational(3, 2), {{5, 1}, {2, 0}});
  EXPECT_EQ(apply(Similarity::identity(kZ2), p), p);
  EXPECT_THROW(Similarity::homothety(kZ2, Rational(0)), ArgumentError);
  EXPECT_THROW(Similarity::homothety(kZ2, Rational(-2)), ArgumentError);
}

TEST(Similarity, GroupLaws) {
  const auto h2 = Similarity::homothety(kZ2, 2), h3 = Similarity::homothety(kZ2, 3);
  EXPECT_EQ(coefficient(compose(h2, h3)), Rational(6));
  EXPECT_EQ(inverse(h2), Similarity::homothety(kZ2, Rational(1, 2)));
  const UPoint p = P(1, {{2, 1}});
  EXPECT_EQ(apply(inverse(h2), apply(h2, p)), p);
  EXPECT_EQ(coefficient(Similarity::translation(kZ2, p)), Rational(1));

  const GroupSpec z5 = GroupSpec::cyclic(5);
  const StepFunction f(Rational(0), {{Rational(3), 2}, {Rational(1), 4}});
  const StepFunction g(Rational(0), {{Rational(2), 3}});
  const auto rf = Similarity::translation(z5, f), rg = Similarity::translation(z5, g);
  const auto rfg = Similarity::translation(z5, add(z5, f, g, Rational(0)));
  EXPECT_EQ(compose(rf, rg), compose(rg, rf));
  EXPECT_EQ(compose(rf, rg), rfg);
  EXPECT_EQ(inverse(rf), Similarity::translation(z5, negate(z5, f)));
  Rng rng(51);
  for (int i = 0; i < 20; ++i) {
    const UPoint q = testing::random_upoint(rng, z5);
    EXPECT_EQ(apply(rf, apply(rg, q)), apply(rfg, q));
  }
}

TEST(Similarity, MapPointToPoint) {
  const UPoint a = P(1), b = P(2, {{4, 1}});
  const auto s = map_point_to_point(kZ2, a, b);
  EXPECT_EQ(coefficient(s), Rational(2));
  EXPECT_EQ(apply(s, a), b);
  const auto id = map_point_to_point(kZ2, b, b);
  EXPECT_EQ(coefficient(id), Rational(1));
  EXPECT_EQ(apply(id, b), b);
  const auto iso = map_point_to_point(kZ2, P(1, {{2, 1}}), P(1));
  EXPECT_EQ(coefficient(iso), Rational(1));
  EXPECT_EQ(apply(iso, P(1, {{2, 1}})), P(1));
}

TEST(Similarity, HeightAndRadius) {
  EXPECT_EQ(submetry_height(P(3, {{4, 1}})), Rational(3));
  EXPECT_EQ(completeness_radius(P(2, {{3, 1}})), Rational(2));
  const UPoint p = P(1, {{3, 1}});
  const UPoint top = restrict(p, Rational(5));
  const Rational d = dist(p, top);
  for (int k = 0; k <= 8; ++k) {
    EXPECT_EQ(submetry_height(segment_point(p, top, d * Rational(k, 8))), Rational(1) + d * Rational(k, 8));
  }
}

TEST(Fibers, Nearest) {
  const auto up = fiber_nearest(P(3, {{4, 1}}), Rational(5));
  EXPECT_EQ(up.point, P(5));
  EXPECT_EQ(up.distance, Rational(2));
  EXPECT_TRUE(up.unique);
  const UPoint p = P(3, {{4, 1}});
  const auto same = fiber_nearest(p, Rational(3));
  EXPECT_EQ(same.point, p);
  EXPECT_EQ(same.distance, Rational(0));
  const auto down = fiber_nearest(P(3), Rational(2));
  EXPECT_EQ(down.point, P(2));
  EXPECT_EQ(down.distance, Rational(1));
  EXPECT_FALSE(down.unique);
}

TEST(Fibers, Map) {
  EXPECT_EQ(fiber_map(3, 5, P(3, {{4, 1}})), P(5, {{6, 1}}));
  const UPoint p = P(2, {{7, 1}, {3, 0}});
  EXPECT_EQ(fiber_map(2, 2, p), p);
  EXPECT_THROW(fiber_map(3, 5, p), ArgumentError);
  Rng rng(52);
  for (int i = 0; i < 50; ++i) {
    const UPoint q = restrict(testing::random_upoint(rng, kZ2, 2), Rational(2));
    const UPoint r = restrict(testing::random_upoint(rng, kZ2, 2), Rational(2));
    ASSERT_EQ(dist(fiber_map(2, 7, q), fiber_map(2, 7, r)), dist(q, r));
    ASSERT_EQ(fiber_map(7, 2, fiber_map(2, 7, q)), q);
  }
}

TEST(Valency, Counts) {
  EXPECT_EQ(valency(GroupSpec::cyclic(2)).count, 3u);
  EXPECT_EQ(valency(GroupSpec::cyclic(5)).count, 6u);
  EXPECT_TRUE(valency(GroupSpec::integers()).infinite);
  for (std::int64_t k : {2, 3, 5}) {
    const GroupSpec g = GroupSpec::cyclic(k);
    const UPoint center = P(2, {{5, 1}});
    std::set<std::string> labels{classify_component(center, P(3, {{5, 1}})).str()};
    for (GroupElem alpha = 0; alpha < k; ++alpha) {
      std::vector<Jump> raw = center.segments();
      raw.push_back(Jump{Rational(2), alpha});
      labels.insert(classify_component(center, UPoint(StepFunction::canonical(Rational(1), raw))).str());
    }
    EXPECT_EQ(labels.size(), valency(g).count);
  }
}

TEST(Completeness, StabilizingSequence) {
  const CauchySequence seq{[](std::size_t n) {
                             return P(Rational(1) + Rational(1, static_cast<std::int64_t>(n)), {{3, 1}});
                           },
                           Rational(1)};
  EXPECT_EQ(complete_limit(P(2, {{3, 1}}), Rational(3, 2), seq), P(1, {{3, 1}}));

  // Terms sit in side branches that split off ever closer to the limit.
  const CauchySequence branches{[](std::size_t n) {
                                  const Rational delta(1, 8 * static_cast<std::int64_t>(n));
                                  return UPoint(StepFunction::canonical(
                                      Rational(1) + delta / Rational(2), {{Rational(3), 1}, {Rational(1) + delta, 0}}));
                                },
                                Rational(1)};
  EXPECT_EQ(complete_limit(P(2, {{3, 1}}), Rational(3, 2), branches), P(1, {{3, 1}}));
}

TEST(Completeness, FlippingJumpIsNotCauchy) {
  const CauchySequence flipping{[](std::size_t n) {
                                  const Rational h = Rational(1) + Rational(1, static_cast<std::int64_t>(n));
                                  return UPoint(StepFunction::canonical(h, {{Rational(3), static_cast<GroupElem>(n % 2)}}));
                                },
                                Rational(1)};
  try {
    complete_limit(P(3), Rational(5, 2), flipping);
    FAIL() << "flipping sequence accepted";
  } catch (const LimitRefused& e) {
    EXPECT_EQ(e.reason(), "no-convergence");
  }
}

TEST(Completeness, EscapesAreRefused) {
  // A fresh jump at height 1/n in every term, heights tending to 0.
  const CauchySequence escaping{[](std::size_t n) {
                                  std::vector<Jump> raw;
                                  for (std::size_t k = n; k >= 1; --k) {
                                    raw.push_back(Jump{Rational(1, static_cast<std::int64_t>(k)),
                                                       static_cast<GroupElem>(k % 2)});
                                  }
                                  std::reverse(raw.begin(), raw.end());
                                  return UPoint(StepFunction::canonical(
                                      Rational(1, 2 * static_cast<std::int64_t>(n)), raw));
                                },
                                Rational(0)};
  try {
    complete_limit(P(2), Rational(1), escaping);
    FAIL() << "escape accepted";
  } catch (const LimitRefused& e) {
    EXPECT_EQ(e.reason(), "escape");
  }
  // Heights settle at 1/2, but jumps keep arriving just above them.
  const CauchySequence wandering{[](std::size_t n) {
                                   const auto m = static_cast<std::int64_t>(n);
                                   std::vector<Jump> raw{{Rational(3), 1}};
                                   for (std::int64_t k = m; k >= 1; --k) {
                                     raw.push_back(Jump{Rational(1, 2) + Rational(1, k + 1), k % 2});
                                   }
                                   std::sort(raw.begin(), raw.end(), [](const Jump& a, const Jump& b) {
                                     return a.breakpoint > b.breakpoint;
                                   });
                                   return UPoint(StepFunction::canonical(Rational(1, 2) + Rational(1, 2 * m), raw));
                                 },
                                 Rational(1, 2)};
  try {
    complete_limit(P(2, {{3, 1}}), Rational(19, 10), wandering);
    FAIL() << "wandering jumps accepted";
  } catch (const LimitRefused& e) {
    EXPECT_EQ(e.reason(), "escape");
  }
  const CauchySequence stuck{[](std::size_t) { return P(2); }, Rational(1)};
  try {
    complete_limit(P(2), Rational(3, 2), stuck);
    FAIL() << "non-convergent heights accepted";
  } catch (const LimitRefused& e) {
    EXPECT_EQ(e.reason(), "no-convergence");
  }
  EXPECT_THROW(complete_limit(P(2), Rational(2), stuck), ArgumentError);
}

class SymmetryProperties : public ::testing::TestWithParam<GroupSpec> {};

TEST_P(SymmetryProperties, ScalingIsExact) {
  Rng rng(53);
  const GroupSpec g = GetParam();
  for (int s = 0; s < 10; ++s) {
    const Similarity sim = random_similarity(rng, g);
    const auto pts = testing::random_upoint_cloud(rng, g, 12);
    for (const auto& p : pts) {
      ASSERT_TRUE(apply(sim, p).valid_in(g));
      ASSERT_EQ(apply(inverse(sim), apply(sim, p)), p);
      for (const auto& q : pts) ASSERT_EQ(dist(apply(sim, p), apply(sim, q)), coefficient(sim) * dist(p, q));
    }
  }
}

TEST_P(SymmetryProperties, CompositionIsAHomomorphism) {
  Rng rng(54);
  const GroupSpec g = GetParam();
  for (int s = 0; s < 30; ++s) {
    const Similarity a = random_similarity(rng, g), b = random_similarity(rng, g);
    const Similarity ab = compose(a, b);
    ASSERT_EQ(coefficient(ab), coefficient(a) * coefficient(b));
    ASSERT_EQ(coefficient(inverse(a)), Rational(1) / coefficient(a));
    ASSERT_EQ(compose(a, inverse(a)), Similarity::identity(g));
    ASSERT_EQ(compose(compose(a, b), a), compose(a, compose(b, a)));
    for (int i = 0; i < 5; ++i) {
      const UPoint p = testing::random_upoint(rng, g);
      ASSERT_EQ(apply(ab, p), apply(a, apply(b, p)));
    }
  }
}

TEST_P(SymmetryProperties, TransitiveOnPoints) {
  Rng rng(55);
  const GroupSpec g = GetParam();
  for (int i = 0; i < 40; ++i) {
    const UPoint p = testing::random_upoint(rng, g), q = testing::random_upoint(rng, g);
    const Similarity s = map_point_to_point(g, p, q);
    ASSERT_EQ(apply(s, p), q);
    ASSERT_EQ(coefficient(s), q.a() / p.a());
    // Isometries keep heights, so points at different heights are never isometric images.
    if (p.a() != q.a()) ASSERT_NE(completeness_radius(p), completeness_radius(q));
  }
}

TEST_P(SymmetryProperties, FibersAreEquidistantAndUltrametric) {
  Rng rng(56);
  const GroupSpec g = GetParam();
  const auto cloud = testing::random_upoint_cloud(rng, g, 30);
  const Rational a(2), b(7, 2);
  std::vector<UPoint> fa, fb;
  for (const auto& p : cloud) {
    fa.push_back(fiber_nearest(p, a).point);
    fb.push_back(fiber_nearest(p, b).point);
  }
  for (const auto* pair : {&fa, &fb}) {
    const auto& from = *pair;
    const auto& to = pair == &fa ? fb : fa;
    for (const auto& x : from) {
      std::optional<Rational> best;
      for (const auto& y : to) best = best ? std::min(*best, dist(x, y)) : dist(x, y);
      const auto near = fiber_nearest(x, to.front().a());
      ASSERT_EQ(near.distance, b - a);
      ASSERT_EQ(dist(x, near.point), b - a);
      ASSERT_GE(*best, b - a);
    }
  }
  for (const auto& p : fa) {
    for (const auto& q : fa) {
      for (const auto& r : fa) ASSERT_LE(dist(p, q), std::max(dist(p, r), dist(r, q)));
      ASSERT_LE(abs(submetry_height(p) - submetry_height(q)), dist(p, q));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Groups, SymmetryProperties,
                         ::testing::Values(GroupSpec::cyclic(2), GroupSpec::cyclic(5), GroupSpec::integers()),
                         [](const auto& info) { return info.param.name(); });

}  // namespace
}  // namespace semitree
