#include "pcn/pathfinding.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "pcn/indexed_heap.h"

namespace pcn {
namespace {

using Clock = std::chrono::steady_clock;

// Arcs leaving the source grouped by target, for the early-exit test.
class SourceArcs {
 public:
  SourceArcs(const ChannelGraph& g, VertexId s)
      : graph_(&g), adjacent_(g.vertex_count(), false) {
    const auto out = g.out_arcs(s);
    arcs_.assign(out.begin(), out.end());
    std::stable_sort(arcs_.begin(), arcs_.end(), [&](ArcId x, ArcId y) {
      return g.arc(x).target < g.arc(y).target;
    });
    for (ArcId e : arcs_) adjacent_[g.arc(e).target.value] = true;
  }

  // Lowest-id arc s -> v whose balance covers `inflow`.
  std::optional<ArcId> feasible_arc_to(VertexId v, double inflow) const {
    if (!adjacent_[v.value]) return std::nullopt;
    auto lo = std::lower_bound(
        arcs_.begin(), arcs_.end(), v,
        [&](ArcId e, VertexId x) { return graph_->arc(e).target < x; });
    for (auto it = lo; it != arcs_.end() && graph_->arc(*it).target == v;
         ++it) {
      if (inflow <= graph_->arc(*it).policy.balance) return *it;
    }
    return std::nullopt;
  }

 private:
  const ChannelGraph* graph_;
  std::vector<ArcId> arcs_;
  std::vector<bool> adjacent_;
};

}  // namespace

const char* to_string(FeeSemantics s) {
  return s == FeeSemantics::kPayment ? "payment" : "source_fee_zero";
}

bool SearchState::reached(VertexId v) const {
  return v.value < inflow.size() && std::isfinite(inflow[v.value]);
}

void validate_query(const ChannelGraph& g, const Query& q) {
  if (!g.contains(q.source)) {
    throw GraphError("unknown source vertex " + std::to_string(q.source.value));
  }
  if (!g.contains(q.destination)) {
    throw GraphError("unknown destination vertex " +
                     std::to_string(q.destination.value));
  }
  if (q.source == q.destination) {
    throw std::invalid_argument("query source and destination must differ");
  }
  if (!(q.amount > 0.0) || !std::isfinite(q.amount)) {
    throw std::invalid_argument("query amount must be positive and finite");
  }
}

SearchState search_transpose(const ChannelGraph& g, const Query& q,
                             const FeeMap& fee, SearchMode mode,
                             const SearchOptions& options) {
  validate_query(g, q);
  const auto start = Clock::now();

  const std::size_t n = g.vertex_count();
  SearchState state;
  state.query = q;
  state.inflow.assign(n, kInfinity);
  state.next_arc.assign(n, std::nullopt);

  const bool check_balance = mode != SearchMode::kBarrier;
  std::optional<SourceArcs> source_arcs;
  if (mode == SearchMode::kPartialBidirectional) source_arcs.emplace(g, q.source);

  IndexedMinHeap<double> queue(n);
  state.inflow[q.destination.value] = q.amount;
  queue.push(q.destination.value, q.amount);

  while (!queue.empty()) {
    const auto [vi, inflow] = queue.pop();
    const VertexId v{vi};
    ++state.stats.pops;
    if (options.on_pop) options.on_pop(v, inflow - q.amount);

    if (v == q.source) break;

    if (source_arcs) {
      if (auto e = source_arcs->feasible_arc_to(v, inflow)) {
        state.inflow[q.source.value] = inflow;
        state.next_arc[q.source.value] = *e;
        state.semantics = FeeSemantics::kSourceFeeZero;
        break;
      }
    }

    // Transpose out-arcs of v are the payment arcs entering v.
    for (ArcId e : g.in_arcs(v)) {
      ++state.stats.relaxations;
      const Arc& arc = g.arc(e);
      if (check_balance && !(inflow <= arc.policy.balance)) continue;
      const double candidate = inflow + fee.fee(g, e, inflow);
      const std::uint32_t u = arc.source.value;
      if (candidate < state.inflow[u]) {
        state.inflow[u] = candidate;
        state.next_arc[u] = e;
        queue.push_or_decrease(u, candidate);
      }
    }
  }

  state.stats.wall_time =
      std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
  return state;
}

PathResult reconstruct_path(const ChannelGraph& g, const SearchState& state,
                            const FeeMap& fee) {
  const Query& q = state.query;
  if (!state.reached(q.source)) {
    throw Error("cannot reconstruct path: source " + g.key(q.source) +
                " was not reached");
  }

  PathResult result;
  result.semantics = state.semantics;
  result.stats = state.stats;

  VertexId v = q.source;
  while (v != q.destination) {
    if (result.arcs.size() >= g.vertex_count()) {
      throw Error("cannot reconstruct path: next-arc chain has a cycle");
    }
    const auto& e = state.next_arc[v.value];
    if (!e) {
      throw Error("cannot reconstruct path: chain breaks at " + g.key(v));
    }
    result.arcs.push_back(*e);
    v = g.arc(*e).target;
  }

  std::optional<VertexId> zero_fee_source;
  if (state.semantics == FeeSemantics::kSourceFeeZero) zero_fee_source = q.source;
  result.hop_amounts = amounts_along(g, result.arcs, fee, q.amount, zero_fee_source);

  const double expected = state.inflow[q.source.value];
  if (!amounts_close(result.hop_amounts.front(), expected)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "path amounts disagree with search labels: " << result.hop_amounts.front()
        << " vs " << expected;
    throw Error(msg.str());
  }
  result.found = std::isfinite(expected);
  result.total_fee = expected - q.amount;
  return result;
}

namespace {

PathResult plan(const ChannelGraph& g, const Query& q, const FeeMap& fee,
                SearchMode mode, const SearchOptions& options) {
  SearchState state = search_transpose(g, q, fee, mode, options);
  if (!state.reached(q.source)) {
    PathResult none;
    none.stats = state.stats;
    return none;
  }
  return reconstruct_path(g, state, fee);
}

}  // namespace

PathResult plan_unidirectional(const ChannelGraph& g, const Query& q,
                               const FeeMap& fee,
                               const SearchOptions& options) {
  return plan(g, q, fee, SearchMode::kUnidirectional, options);
}

PathResult plan_unidirectional_barrier(const ChannelGraph& g, const Query& q,
                                       const SearchOptions& options) {
  return plan(g, q, FeeMap::barrier(), SearchMode::kBarrier, options);
}

PathResult plan_partial_bidirectional(const ChannelGraph& g, const Query& q,
                                      const FeeMap& fee,
                                      const SearchOptions& options) {
  return plan(g, q, fee, SearchMode::kPartialBidirectional, options);
}

namespace {

class PathEnumerator {
 public:
  PathEnumerator(const ChannelGraph& g, const Query& q, const FeeMap& fee,
                 std::size_t max_hops)
      : g_(g), q_(q), fee_(fee), max_hops_(max_hops),
        on_path_(g.vertex_count(), false) {}

  PathResult run() {
    const auto start = Clock::now();
    on_path_[q_.source.value] = true;
    if (max_hops_ > 0) extend(q_.source);
    best_.stats.wall_time = std::chrono::duration_cast<std::chrono::nanoseconds>(
        Clock::now() - start);
    return std::move(best_);
  }

 private:
  void extend(VertexId v) {
    ++best_.stats.pops;
    for (ArcId e : g_.out_arcs(v)) {
      ++best_.stats.relaxations;
      const VertexId next = g_.arc(e).target;
      if (on_path_[next.value]) continue;
      path_.push_back(e);
      if (next == q_.destination) {
        evaluate();
      } else if (path_.size() < max_hops_) {
        on_path_[next.value] = true;
        extend(next);
        on_path_[next.value] = false;
      }
      path_.pop_back();
    }
  }

  // Hop amounts for the current path, or nullopt if some arc cannot carry
  // the amount it must forward.
  std::optional<HopAmounts> feasible_amounts() const {
    if (fee_.kind() == FeeMap::Kind::kLinear) {
      std::vector<ArcPolicy> policies;
      policies.reserve(path_.size());
      for (ArcId e : path_) policies.push_back(g_.arc(e).policy);
      HopAmounts amounts = amounts_recursive(policies, q_.amount);
      for (std::size_t i = 0; i < path_.size(); ++i) {
        if (!(amounts[i + 1] <= policies[i].balance)) return std::nullopt;
      }
      return amounts;
    }
    // Tabulated tables only define fees on amounts that can actually flow,
    // so test each balance before asking for the fee.
    HopAmounts amounts(path_.size() + 1);
    amounts.back() = q_.amount;
    for (std::size_t i = path_.size(); i-- > 0;) {
      const double x = amounts[i + 1];
      if (!(x <= g_.arc(path_[i]).policy.balance)) return std::nullopt;
      amounts[i] = x + fee_.fee(g_, path_[i], x);
      if (!std::isfinite(amounts[i])) return std::nullopt;
    }
    return amounts;
  }

  void evaluate() {
    auto amounts = feasible_amounts();
    if (!amounts) return;
    const double total = amounts->front() - q_.amount;
    if (best_.found && !(total < best_.total_fee)) return;
    best_.found = true;
    best_.arcs = path_;
    best_.hop_amounts = std::move(*amounts);
    best_.total_fee = total;
  }

  const ChannelGraph& g_;
  const Query& q_;
  const FeeMap& fee_;
  std::size_t max_hops_;
  std::vector<bool> on_path_;
  std::vector<ArcId> path_;
  PathResult best_;
};

}  // namespace

PathResult brute_force_lowest_fee(const ChannelGraph& g, const Query& q,
                                  const FeeMap& fee, std::size_t max_hops) {
  if (g.vertex_count() > kOracleMaxVertices && max_hops > kOracleMaxHops) {
    throw Error("brute-force oracle refuses " +
                std::to_string(g.vertex_count()) + " vertices with max_hops " +
                std::to_string(max_hops) + " (limits: " +
                std::to_string(kOracleMaxVertices) + " vertices or " +
                std::to_string(kOracleMaxHops) + " hops)");
  }
  validate_query(g, q);
  return PathEnumerator(g, q, fee, max_hops).run();
}

}  // namespace pcn
