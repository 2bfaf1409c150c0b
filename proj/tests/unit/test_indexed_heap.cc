#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "pcn/indexed_heap.h"

namespace pcn {
namespace {

TEST(IndexedMinHeap, PopsInPriorityOrder) {
  IndexedMinHeap<double> h(5);
  h.push(3, 2.5);
  h.push(0, 9.0);
  h.push(4, 0.5);
  EXPECT_EQ(h.size(), 3u);
  EXPECT_EQ(h.top().first, 4u);
  EXPECT_EQ(h.pop().first, 4u);
  EXPECT_EQ(h.pop().first, 3u);
  EXPECT_EQ(h.pop().first, 0u);
  EXPECT_TRUE(h.empty());
}

TEST(IndexedMinHeap, TiesBreakBySmallestId) {
  IndexedMinHeap<double> h(6);
  for (std::uint32_t id : {5u, 2u, 4u, 1u}) h.push(id, 1.0);
  EXPECT_EQ(h.pop().first, 1u);
  EXPECT_EQ(h.pop().first, 2u);
  EXPECT_EQ(h.pop().first, 4u);
  EXPECT_EQ(h.pop().first, 5u);
}

TEST(IndexedMinHeap, DecreaseKeyMovesEntryUp) {
  IndexedMinHeap<double> h(4);
  h.push(0, 1.0);
  h.push(1, 5.0);
  h.push_or_decrease(1, 0.5);
  EXPECT_EQ(h.priority(1), 0.5);
  EXPECT_EQ(h.size(), 2u);
  const auto [id, p] = h.pop();
  EXPECT_EQ(id, 1u);
  EXPECT_EQ(p, 0.5);
  EXPECT_FALSE(h.contains(1));
  EXPECT_TRUE(h.contains(0));
}

TEST(IndexedMinHeap, PushOrDecreaseIgnoresLargerPriority) {
  IndexedMinHeap<double> h(2);
  h.push_or_decrease(0, 3.0);
  h.push_or_decrease(0, 4.0);
  EXPECT_EQ(h.priority(0), 3.0);
}

TEST(IndexedMinHeap, MatchesSortedOrderUnderRandomDecreases) {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 50; ++round) {
    const std::uint32_t n = 1 + static_cast<std::uint32_t>(rng() % 200);
    IndexedMinHeap<double> h(n);
    std::vector<double> best(n, 1e18);
    std::uniform_real_distribution<double> value(0.0, 100.0);
    for (int op = 0; op < 3 * static_cast<int>(n); ++op) {
      const std::uint32_t id = static_cast<std::uint32_t>(rng() % n);
      const double p = std::floor(value(rng));
      h.push_or_decrease(id, p);
      best[id] = std::min(best[id], p);
    }
    std::vector<std::pair<double, std::uint32_t>> expected;
    for (std::uint32_t id = 0; id < n; ++id) {
      if (best[id] < 1e18) expected.push_back({best[id], id});
    }
    std::sort(expected.begin(), expected.end());
    std::vector<std::pair<double, std::uint32_t>> got;
    while (!h.empty()) {
      const auto [id, p] = h.pop();
      got.push_back({p, id});
    }
    EXPECT_EQ(got, expected);
  }
}

}  // namespace
}  // namespace pcn
