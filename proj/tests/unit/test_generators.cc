#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "pcn/generators.h"
#include "pcn/pathfinding.h"

namespace pcn {
namespace {

TEST(HubSpoke, Sizes) {
  const ArcPolicy p{1, 0.01, 100};
  const ChannelGraph small = gen_hub_spoke(2, p);
  EXPECT_EQ(small.vertex_count(), 3u);
  EXPECT_EQ(small.arc_count(), 4u);
  const ChannelGraph big = gen_hub_spoke(1000, p);
  EXPECT_EQ(big.vertex_count(), 1001u);
  EXPECT_EQ(big.arc_count(), 2000u);
  EXPECT_EQ(big.out_degree(*big.find("r")), 1000u);
  EXPECT_EQ(big.in_degree(*big.find("r")), 1000u);
  EXPECT_THROW(gen_hub_spoke(1, p), std::invalid_argument);
}

TEST(HubSpoke, SpokePairsHaveUniquePathThroughHub) {
  const ChannelGraph g = gen_hub_spoke(6, {1, 0.01, 1e6});
  const PathResult r = brute_force_lowest_fee(
      g, {*g.find("s3"), *g.find("s5"), 10}, FeeMap::linear(), g.vertex_count() - 1);
  ASSERT_TRUE(r.found);
  ASSERT_EQ(r.arcs.size(), 2u);
  EXPECT_EQ(g.key(g.arc(r.arcs[0]).target), "r");
  for (std::uint32_t v = 1; v < g.vertex_count(); ++v) {
    EXPECT_EQ(g.out_degree(VertexId{v}), 1u);
  }
}

TEST(RandomPcn, NoArcs) {
  const ChannelGraph g = gen_random_pcn(5, 0, {}, {0, 100}, 1);
  EXPECT_EQ(g.vertex_count(), 5u);
  EXPECT_EQ(g.arc_count(), 0u);
}

TEST(RandomPcn, Deterministic) {
  EXPECT_EQ(gen_random_pcn(12, 30, {}, {0, 100}, 9), gen_random_pcn(12, 30, {}, {0, 100}, 9));
  EXPECT_FALSE(gen_random_pcn(12, 30, {}, {0, 100}, 9) ==
               gen_random_pcn(12, 30, {}, {0, 100}, 10));
}

TEST(RandomPcn, DistinctPairsWithinRanges) {
  const PolicyRanges ranges{{0.0, 10.0}, {0.0, 0.1}};
  const ChannelGraph g = gen_random_pcn(12, 30, ranges, {5.0, 50.0}, 7);
  EXPECT_EQ(g.arc_count(), 30u);
  std::set<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (const Arc& a : g.arcs()) {
    EXPECT_NE(a.source, a.target);
    pairs.insert({a.source.value, a.target.value});
    EXPECT_GE(a.policy.base_fee, 0.0);
    EXPECT_LE(a.policy.base_fee, 10.0);
    EXPECT_GE(a.policy.fee_rate, 0.0);
    EXPECT_LE(a.policy.fee_rate, 0.1);
    EXPECT_GE(a.policy.balance, 5.0);
    EXPECT_LE(a.policy.balance, 50.0);
  }
  EXPECT_EQ(pairs.size(), 30u);
}

TEST(RandomPcn, CompleteGraphAndInfeasibleCounts) {
  EXPECT_EQ(gen_random_pcn(4, 12, {}, {0, 1}, 3).arc_count(), 12u);
  EXPECT_THROW(gen_random_pcn(4, 13, {}, {0, 1}, 3), std::invalid_argument);
  EXPECT_THROW(gen_random_pcn(4, 2, {}, {5, 1}, 3), std::invalid_argument);
}

TEST(ScaleFree, HeavyTailedAndDeterministic) {
  ScaleFreeOptions o;
  o.n_vertices = 2000;
  o.seed = 5;
  const ChannelGraph g = gen_scale_free(o);
  EXPECT_EQ(g, gen_scale_free(o));
  EXPECT_EQ(g.vertex_count(), 2000u);

  std::vector<std::size_t> degree;
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
    degree.push_back(g.out_degree(VertexId{v}) + g.in_degree(VertexId{v}));
  }
  std::sort(degree.begin(), degree.end());
  const double median = static_cast<double>(degree[degree.size() / 2]);
  // A heavy tail puts the largest hub far above the typical vertex.
  EXPECT_GT(static_cast<double>(degree.back()), 20.0 * median);

  for (const Arc& a : g.arcs()) {
    EXPECT_LE(a.policy.base_fee, 1.0);
    EXPECT_LE(a.policy.fee_rate, 0.001);
  }
}

}  // namespace
}  // namespace pcn
