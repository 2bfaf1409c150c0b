#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "pcn/error.h"
#include "pcn/fee_model.h"
#include "pcn/reference_networks.h"

namespace pcn {
namespace {

TEST(FeeLinear, KnownValues) {
  EXPECT_EQ(fee_linear({2.0, 0.1, 20.0}, 10.0), 3.0);
  EXPECT_EQ(fee_linear({0.0, 0.0, 0.0}, 12345.0), 0.0);
  EXPECT_EQ(fee_linear({15.0, 0.5, 0.0}, 10.0), 20.0);
}

TEST(FeeLinear, IgnoresBalanceAndRejectsNegativeAmount) {
  EXPECT_EQ(fee_linear({2.0, 0.1, 1.0}, 10.0), 3.0);
  EXPECT_THROW(fee_linear({2.0, 0.1, 1.0}, -1.0), std::invalid_argument);
}

TEST(FeeBarrier, AppliesBalanceLimit) {
  const ArcPolicy p{2.0, 0.1, 20.0};
  EXPECT_EQ(fee_barrier(p, 10.0), 3.0);
  EXPECT_EQ(fee_barrier(p, 21.0), kInfinity);
  EXPECT_TRUE(std::isfinite(fee_barrier(p, 20.0)));
  EXPECT_DOUBLE_EQ(fee_barrier(p, 20.0), 4.0);
}

TEST(AmountsRecursive, TwoRouteCheapPath) {
  const std::vector<ArcPolicy> path = {{2.0, 0.2, 1e6}, {2.0, 0.1, 1e6}};
  const HopAmounts a = amounts_recursive(path, 10.0);
  ASSERT_EQ(a.size(), 3u);
  EXPECT_NEAR(a[0], 17.6, 1e-9);
  EXPECT_NEAR(a[1], 13.0, 1e-9);
  EXPECT_EQ(a[2], 10.0);
}

TEST(AmountsRecursive, ZeroFeesKeepAmount) {
  const std::vector<ArcPolicy> path(4, ArcPolicy{0.0, 0.0, 1.0});
  for (double x : amounts_recursive(path, 7.0)) EXPECT_EQ(x, 7.0);
  for (double x : amounts_closed_form(path, 7.0)) EXPECT_EQ(x, 7.0);
}

TEST(AmountsRecursive, EmptyPathIsJustTheAmount) {
  const HopAmounts a = amounts_recursive({}, 5.0);
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a[0], 5.0);
  EXPECT_EQ(amounts_closed_form({}, 5.0), a);
}

// Values produced by running the reference recursive listing under Python.
TEST(AmountsRecursive, ListingInputs) {
  const std::vector<ArcPolicy> path = {{10, 0.1, 0},    {5, 0.211, 0}, {3.4, 0.15, 0},
                                       {11, 0.12, 0},   {7, 0.11, 0}};
  const std::vector<double> expected = {243.147044856, 211.95185896, 170.89336,
                                        145.6464,      120.22,       102.0};
  const HopAmounts rec = amounts_recursive(path, 102.0);
  const HopAmounts closed = amounts_closed_form(path, 102.0);
  ASSERT_EQ(rec.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    EXPECT_NEAR(rec[i], expected[i], 1e-9) << "a_" << i + 1;
    EXPECT_NEAR(closed[i], rec[i], 1e-9) << "a_" << i + 1;
  }
}

TEST(AmountsClosedForm, TwoRouteCheapPath) {
  const std::vector<ArcPolicy> path = {{2.0, 0.2, 1e6}, {2.0, 0.1, 1e6}};
  EXPECT_NEAR(amounts_closed_form(path, 10.0)[0], 17.6, 1e-12);
}

TEST(AmountsClose, RelativeAboveOneAndInfinities) {
  EXPECT_TRUE(amounts_close(1e9, 1e9 + 0.5));
  EXPECT_FALSE(amounts_close(1e9, 1e9 + 5.0));
  EXPECT_TRUE(amounts_close(0.0, 5e-10));
  EXPECT_TRUE(amounts_close(kInfinity, kInfinity));
  EXPECT_FALSE(amounts_close(kInfinity, 1.0));
}

TEST(FeeMap, LinearAndBarrierDispatch) {
  const ChannelGraph g = reference::single_arc();
  EXPECT_EQ(FeeMap::linear().fee(g, ArcId{0}, 30.0), 5.0);
  EXPECT_EQ(FeeMap::barrier().fee(g, ArcId{0}, 30.0), kInfinity);
  EXPECT_EQ(FeeMap::linear().name(), "linear");
}

TEST(FeeTable, LookupAndMissingEntry) {
  const ChannelGraph g = reference::inconsistent_network();
  const FeeMap map = FeeMap::tabulated(reference::inconsistent_fee_table(g));
  ArcId s_to_j{};
  for (ArcId e : g.out_arcs(*g.find("s"))) s_to_j = e;
  EXPECT_EQ(map.fee(g, s_to_j, 110.0), 20.0);
  EXPECT_EQ(map.fee(g, s_to_j, 120.0), 5.0);
  EXPECT_THROW(map.fee(g, s_to_j, 111.0), FeeLookupError);
}

TEST(FeeTable, ParsesJson) {
  const ChannelGraph g = reference::inconsistent_network();
  const FeeTable t = FeeTable::from_json(
      R"([{"arc": ["s", "j"], "amount": 110, "fee": 20},
          {"arc": ["j", "t"], "amount": 100, "fee": 10}])",
      g);
  EXPECT_EQ(t.size(), 2u);
  EXPECT_THROW(FeeTable::from_json("{}", g), ParseError);
  EXPECT_THROW(FeeTable::from_json(R"([{"arc": ["s", "zz"], "amount": 1, "fee": 1}])", g),
               ParseError);
  EXPECT_THROW(FeeTable::from_json(R"([{"arc": ["s", "t"], "amount": 1, "fee": 1}])", g),
               ParseError);
  EXPECT_THROW(FeeTable::from_json("[", g), ParseError);
}

TEST(Consistency, LinearMapIsConsistent) {
  const ChannelGraph g = reference::single_arc();
  const std::vector<AmountPair> pairs = {{0, 1}, {5, 5}, {10, 1e6}};
  const ConsistencyVerdict v = check_consistency(FeeMap::linear(), g, ArcId{0}, pairs);
  EXPECT_TRUE(v.consistent);
  EXPECT_TRUE(v.analytic_check_passed);
}

TEST(Consistency, BarrierMapIsConsistentAcrossTheLimit) {
  const ChannelGraph g = reference::single_arc();
  const std::vector<AmountPair> pairs = {{10, 20}, {20, 21}, {21, 30}};
  EXPECT_TRUE(check_consistency(FeeMap::barrier(), g, ArcId{0}, pairs).consistent);
}

TEST(Consistency, InconsistentTableFlagged) {
  const ChannelGraph g = reference::inconsistent_network();
  const FeeMap map = FeeMap::tabulated(reference::inconsistent_fee_table(g));
  ArcId s_to_j{};
  for (ArcId e : g.out_arcs(*g.find("s"))) s_to_j = e;
  const std::vector<AmountPair> pairs = {{110.0, 120.0}};
  const ConsistencyVerdict v = check_consistency(map, g, s_to_j, pairs);
  EXPECT_FALSE(v.consistent);
  ASSERT_TRUE(v.violation.has_value());
  EXPECT_EQ(v.smaller_total, 130.0);
  EXPECT_EQ(v.larger_total, 125.0);
}

TEST(Consistency, ConstantTableIsConsistent) {
  const ChannelGraph g = reference::single_arc();
  FeeTable t;
  for (double a : {1.0, 2.0, 50.0, 1000.0}) t.set(ArcId{0}, a, 7.0);
  const std::vector<AmountPair> pairs = {{1, 2}, {2, 50}, {1, 1000}};
  EXPECT_TRUE(check_consistency(FeeMap::tabulated(t), g, ArcId{0}, pairs).consistent);
}

TEST(Consistency, RejectsMisorderedPair) {
  const ChannelGraph g = reference::single_arc();
  const std::vector<AmountPair> pairs = {{5, 4}};
  EXPECT_THROW(check_consistency(FeeMap::linear(), g, ArcId{0}, pairs),
               std::invalid_argument);
}

TEST(AmountsAlong, ZeroFeeSourceSkipsFirstHopFee) {
  const ChannelGraph g = reference::two_route();
  const std::vector<ArcId> path = {ArcId{0}, ArcId{2}};
  const HopAmounts paid = amounts_along(g, path, FeeMap::linear(), 10.0);
  const HopAmounts free = amounts_along(g, path, FeeMap::linear(), 10.0, *g.find("s"));
  EXPECT_NEAR(paid[0], 17.6, 1e-12);
  EXPECT_EQ(free[0], 13.0);
  EXPECT_EQ(free[1], 13.0);
}

}  // namespace
}  // namespace pcn
