#pragma once

// Lowest-fee payment path search.
//
// The amount delivered to the destination is fixed, so the search runs
// backwards: Dijkstra over the transpose graph starting at the destination t,
// where relaxing a transpose arc (v, u) (payment arc u -> v) computes the
// amount u must receive as inflow(v) + fee(u -> v, inflow(v)) and admits the
// arc only if inflow(v) fits in its balance.
//
// Three planners share that loop:
//   - plan_unidirectional: stops when the source s is popped.
//   - plan_unidirectional_barrier: no balance admission test; infeasible arcs
//     are priced at +infinity by the barrier fee map instead.
//   - plan_partial_bidirectional: additionally stops as soon as a popped
//     vertex v has a payment arc s -> v with enough balance. The fee of that
//     first hop is not counted, since s would pay it to itself.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "pcn/fee_model.h"
#include "pcn/graph.h"

namespace pcn {

struct Query {
  VertexId source;
  VertexId destination;
  double amount = 0.0;
};

// Which cost model produced a PathResult's total_fee.
enum class FeeSemantics {
  kPayment,        // every hop's fee counted
  kSourceFeeZero,  // fees on arcs leaving the source excluded
};

const char* to_string(FeeSemantics s);

struct SearchStats {
  // Inner-loop iterations over transpose out-arcs of popped vertices.
  std::uint64_t relaxations = 0;
  std::uint64_t pops = 0;
  std::chrono::nanoseconds wall_time{0};
};

enum class SearchMode {
  kUnidirectional,
  kBarrier,
  kPartialBidirectional,
};

struct SearchOptions {
  // Called for every queue removal with the popped vertex and its fee c(v).
  std::function<void(VertexId, double)> on_pop;
};

// Per-query search labels. inflow(v) = a + c(v) is the amount v must receive
// so that the query amount reaches the destination; +infinity if unreached.
struct SearchState {
  Query query;
  std::vector<double> inflow;
  // First payment-direction arc of the best known path from v to t.
  std::vector<std::optional<ArcId>> next_arc;
  FeeSemantics semantics = FeeSemantics::kPayment;
  SearchStats stats;

  double fee(VertexId v) const { return inflow[v.value] - query.amount; }
  bool reached(VertexId v) const;
};

struct PathResult {
  bool found = false;
  // Payment-direction arcs s -> ... -> t.
  std::vector<ArcId> arcs;
  HopAmounts hop_amounts;
  double total_fee = kInfinity;
  FeeSemantics semantics = FeeSemantics::kPayment;
  SearchStats stats;

  std::size_t path_length() const { return arcs.size(); }
  double amount_at_source() const {
    return hop_amounts.empty() ? kInfinity : hop_amounts.front();
  }
};

// Throws GraphError for unknown endpoints and std::invalid_argument when
// source == destination or amount <= 0.
void validate_query(const ChannelGraph& g, const Query& q);

SearchState search_transpose(const ChannelGraph& g, const Query& q,
                             const FeeMap& fee, SearchMode mode,
                             const SearchOptions& options = {});

// Walks the next-arc chain from the source to the destination and recomputes
// hop amounts. Throws Error if the source is unreached, the chain does not
// reach the destination, or the recomputed source amount disagrees with the
// search label.
PathResult reconstruct_path(const ChannelGraph& g, const SearchState& state,
                            const FeeMap& fee);

PathResult plan_unidirectional(const ChannelGraph& g, const Query& q,
                               const FeeMap& fee,
                               const SearchOptions& options = {});

// Uses the barrier fee map; a result with found == false and an infinite
// total_fee means no feasible path exists.
PathResult plan_unidirectional_barrier(const ChannelGraph& g, const Query& q,
                                       const SearchOptions& options = {});

PathResult plan_partial_bidirectional(const ChannelGraph& g, const Query& q,
                                      const FeeMap& fee,
                                      const SearchOptions& options = {});

// Exhaustive oracle: enumerates simple s -> t paths of at most max_hops arcs,
// discards those violating a balance, and returns one with minimum total fee
// (smallest arc-id sequence on ties). Refuses graphs with more than
// kOracleMaxVertices vertices unless max_hops <= kOracleMaxHops.
inline constexpr std::size_t kOracleMaxVertices = 14;
inline constexpr std::size_t kOracleMaxHops = 8;

PathResult brute_force_lowest_fee(const ChannelGraph& g, const Query& q,
                                  const FeeMap& fee, std::size_t max_hops);

}  // namespace pcn
