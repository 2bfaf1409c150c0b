#include <gtest/gtest.h>

#include <filesystem>
#include <string>

#include "pcn/error.h"
#include "pcn/generators.h"
#include "pcn/pathfinding.h"
#include "pcn/reference_networks.h"
#include "pcn/snapshot.h"

namespace pcn {
namespace {

const std::string kFixtures = PCN_FIXTURE_DIR;

std::string fixture(const char* name) { return kFixtures + "/" + name; }

TEST(Snapshot, EmptyDocument) {
  const Snapshot s = load_snapshot(R"({"nodes": [], "edges": []})");
  EXPECT_TRUE(s.graph.empty());
  EXPECT_EQ(s.report, IngestReport{});
  EXPECT_EQ(load_snapshot("{}").report, IngestReport{});
}

TEST(Snapshot, Node1PolicyGovernsNode1ToNode2) {
  const Snapshot s = load_snapshot(R"({
    "nodes": [{"pub_key": "A"}, {"pub_key": "B"}],
    "edges": [{"node1_pub": "A", "node2_pub": "B", "capacity": "1000",
               "node1_policy": {"fee_base_msat": "1500", "fee_rate_milli_msat": "250"},
               "node2_policy": null}]})");
  ASSERT_EQ(s.graph.arc_count(), 1u);
  const Arc& a = s.graph.arc(ArcId{0});
  EXPECT_EQ(s.graph.key(a.source), "A");
  EXPECT_EQ(s.graph.key(a.target), "B");
  EXPECT_EQ(a.policy.base_fee, 1.5);
  EXPECT_EQ(a.policy.fee_rate, 0.00025);
  EXPECT_EQ(a.policy.balance, 500.0);
  EXPECT_EQ(s.report.raw_arcs, 2u);
  EXPECT_EQ(s.report.dropped_no_policy, 1u);
}

TEST(Snapshot, Node2PolicyGovernsReverseDirection) {
  const Snapshot s = load_snapshot(R"({
    "nodes": [{"pub_key": "A"}, {"pub_key": "B"}],
    "edges": [{"node1_pub": "A", "node2_pub": "B", "capacity": 10,
               "node1_policy": null,
               "node2_policy": {"fee_base_msat": 0, "fee_rate_milli_msat": 1}}]})");
  ASSERT_EQ(s.graph.arc_count(), 1u);
  EXPECT_EQ(s.graph.key(s.graph.arc(ArcId{0}).source), "B");
}

TEST(Snapshot, MixedPoliciesFixtureCounts) {
  const Snapshot s = load_snapshot_file(fixture("mixed_policies.json"));
  IngestReport expected;
  expected.raw_vertices = 5;
  expected.raw_arcs = 6;
  expected.kept_vertices = 3;
  expected.kept_arcs = 3;
  expected.dropped_no_policy = 2;
  expected.dropped_disabled = 1;
  expected.dropped_isolated = 2;
  EXPECT_EQ(s.report, expected);
  EXPECT_EQ(s.report.raw_arcs, s.report.kept_arcs + s.report.dropped_no_policy +
                                   s.report.dropped_disabled);
  EXPECT_FALSE(s.graph.find("d").has_value());
  EXPECT_FALSE(s.graph.find("e").has_value());
  const VertexId b = *s.graph.find("b");
  const VertexId c = *s.graph.find("c");
  ASSERT_EQ(s.graph.out_degree(c), 1u);
  EXPECT_EQ(s.graph.arc(s.graph.out_arcs(c)[0]).target, b);
  for (ArcId e : s.graph.out_arcs(b)) EXPECT_NE(s.graph.arc(e).target, c);
}

TEST(Snapshot, TwoRouteFixtureMatchesReferenceNetwork) {
  const Snapshot s = load_snapshot_file(fixture("two_route.json"));
  EXPECT_EQ(s.graph, reference::two_route());
  EXPECT_EQ(s.report.dropped_no_policy + s.report.dropped_disabled +
                s.report.dropped_isolated,
            0u);
}

TEST(Snapshot, ReferenceFixturesMatch) {
  EXPECT_EQ(load_snapshot_file(fixture("single_arc.json")).graph, reference::single_arc());
  EXPECT_EQ(load_snapshot_file(fixture("two_hop.json")).graph, reference::two_hop());
  EXPECT_EQ(load_snapshot_file(fixture("inconsistent.json")).graph,
            reference::inconsistent_network());
  const ChannelGraph g = reference::two_route();
  EXPECT_EQ(load_snapshot_file(fixture("two_route_source_free.json")).graph,
            apply_source_fee_zero(g, *g.find("s")));
  EXPECT_EQ(load_snapshot_file(fixture("hub_spoke_20.json")).graph,
            gen_hub_spoke(20, {1.0, 0.001, 1e7}));
}

TEST(Snapshot, RoundTripIsIdempotent) {
  const Snapshot first = load_snapshot_file(fixture("mixed_policies.json"));
  const Snapshot second = load_snapshot(serialize_snapshot(first.graph));
  EXPECT_EQ(second.graph, first.graph);
  EXPECT_EQ(second.report.dropped_no_policy, 0u);
  EXPECT_EQ(second.report.dropped_disabled, 0u);
  EXPECT_EQ(second.report.dropped_isolated, 0u);
  EXPECT_EQ(second.report.kept_arcs, first.graph.arc_count());
}

TEST(Snapshot, RoundTripOfGeneratedGraphs) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const ChannelGraph g = gen_random_pcn(30, 120, {}, {0.0, 1e6}, seed);
    const Snapshot s = load_snapshot(serialize_snapshot(g));
    // Isolated vertices are dropped on load, so compare arc-by-arc via keys.
    EXPECT_EQ(s.graph.arc_count(), g.arc_count());
    for (const Arc& a : s.graph.arcs()) {
      const Arc& orig = g.arc(a.id);
      EXPECT_EQ(s.graph.key(a.source), g.key(orig.source));
      EXPECT_EQ(s.graph.key(a.target), g.key(orig.target));
      EXPECT_DOUBLE_EQ(a.policy.base_fee, orig.policy.base_fee);
      EXPECT_DOUBLE_EQ(a.policy.fee_rate, orig.policy.fee_rate);
      EXPECT_DOUBLE_EQ(a.policy.balance, orig.policy.balance);
    }
  }
}

TEST(Snapshot, DisabledFlagRespected) {
  const Snapshot s = load_snapshot(R"({
    "nodes": [{"pub_key": "A"}, {"pub_key": "B"}],
    "edges": [{"node1_pub": "A", "node2_pub": "B", "capacity": 10,
               "node1_policy": {"fee_base_msat": 0, "fee_rate_milli_msat": 1, "disabled": true},
               "node2_policy": {"fee_base_msat": 0, "fee_rate_milli_msat": 1, "disabled": false}}]})");
  EXPECT_EQ(s.report.dropped_disabled, 1u);
  EXPECT_EQ(s.graph.arc_count(), 1u);
}

TEST(Snapshot, MalformedInputsRejected) {
  EXPECT_THROW(load_snapshot("not json"), ParseError);
  EXPECT_THROW(load_snapshot("[]"), ParseError);
  EXPECT_THROW(load_snapshot(R"({"nodes": [{"pub_key": "A"}, {"pub_key": "A"}]})"),
               ParseError);
  EXPECT_THROW(load_snapshot(R"({"nodes": [{"pub_key": "A"}],
      "edges": [{"node1_pub": "A", "node2_pub": "Z", "capacity": 1}]})"),
               ParseError);
  EXPECT_THROW(load_snapshot(R"({"nodes": [{"pub_key": "A"}, {"pub_key": "B"}],
      "edges": [{"node1_pub": "A", "node2_pub": "B", "capacity": -5}]})"),
               ParseError);
  EXPECT_THROW(load_snapshot(R"({"nodes": [{"pub_key": "A"}, {"pub_key": "B"}],
      "edges": [{"node1_pub": "A", "node2_pub": "B"}]})"),
               ParseError);
  EXPECT_THROW(load_snapshot(R"({"nodes": [{"pub_key": "A"}, {"pub_key": "B"}],
      "edges": [{"node1_pub": "A", "node2_pub": "B", "capacity": "12x"}]})"),
               ParseError);
  EXPECT_THROW(load_snapshot_file(kFixtures + "/does_not_exist.json"), ParseError);
}

TEST(AssignBalances, HalvesCapacity) {
  EXPECT_EQ(assign_balances(4'000'000), 2'000'000.0);
  EXPECT_EQ(assign_balances(0), 0.0);
  EXPECT_EQ(assign_balances(1), 0.5);
  EXPECT_THROW(assign_balances(-1), std::invalid_argument);
}

}  // namespace
}  // namespace pcn
