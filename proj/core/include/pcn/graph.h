#pragma once

// Immutable directed multigraph model of a payment channel network snapshot.
//
// Every channel contributes up to two arcs, one per direction, and each arc
// carries its own policy (base fee, fee rate, balance). Vertex and arc ids are
// dense indices assigned at construction time. Adjacency is stored in CSR form
// for both directions so the transpose graph can be traversed without a copy.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pcn/error.h"

namespace pcn {

struct VertexId {
  std::uint32_t value = 0;
  constexpr auto operator<=>(const VertexId&) const = default;
};

struct ArcId {
  std::uint32_t value = 0;
  constexpr auto operator<=>(const ArcId&) const = default;
};

// Fee and liquidity parameters of one arc direction. Amounts are satoshis;
// fee_rate is a proportion of the forwarded amount.
struct ArcPolicy {
  double base_fee = 0.0;
  double fee_rate = 0.0;
  double balance = 0.0;

  bool operator==(const ArcPolicy&) const = default;
};

struct ArcSpec {
  VertexId source;
  VertexId target;
  ArcPolicy policy;
};

struct Arc {
  ArcId id;
  VertexId source;
  VertexId target;
  ArcPolicy policy;

  bool operator==(const Arc&) const = default;
};

class GraphView;

class ChannelGraph {
 public:
  ChannelGraph() = default;

  // Builds a graph over vertices 0..vertex_count-1. When vertex_count is zero
  // it is inferred as one past the largest endpoint. Keys, when given, must
  // have exactly vertex_count entries and be unique.
  // Throws GraphError on self-loops, negative policy fields, out-of-range
  // endpoints, or malformed keys.
  static ChannelGraph build(std::span<const ArcSpec> arcs,
                            std::size_t vertex_count = 0,
                            std::vector<std::string> keys = {});

  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t arc_count() const { return arcs_.size(); }
  bool empty() const { return vertex_count_ == 0; }

  bool contains(VertexId v) const { return v.value < vertex_count_; }
  bool contains(ArcId e) const { return e.value < arcs_.size(); }

  const Arc& arc(ArcId e) const;
  std::span<const Arc> arcs() const { return arcs_; }

  // Arc ids leaving / entering v, in ascending id order.
  std::span<const ArcId> out_arcs(VertexId v) const;
  std::span<const ArcId> in_arcs(VertexId v) const;

  // Throws GraphError for unknown vertices.
  std::size_t out_degree(VertexId v) const;
  std::size_t in_degree(VertexId v) const;

  // Public-key style names. Synthesized as "v<index>" when none were given.
  std::string key(VertexId v) const;
  std::optional<VertexId> find(std::string_view key) const;
  bool has_keys() const { return !keys_.empty(); }

  GraphView view() const;
  GraphView transpose() const;

  // Same topology and keys with per-arc policies replaced by fn(arc).
  ChannelGraph with_policies(
      const std::function<ArcPolicy(const Arc&)>& fn) const;

  bool operator==(const ChannelGraph& other) const;

 private:
  void check_vertex(VertexId v) const;

  std::size_t vertex_count_ = 0;
  std::vector<Arc> arcs_;
  std::vector<std::uint32_t> out_offsets_;
  std::vector<ArcId> out_index_;
  std::vector<std::uint32_t> in_offsets_;
  std::vector<ArcId> in_index_;
  std::vector<std::string> keys_;
  std::unordered_map<std::string, VertexId> key_index_;
};

// Non-owning view of a ChannelGraph, optionally with every arc reversed.
// Arc ids and policies are shared with the underlying graph.
class GraphView {
 public:
  GraphView(const ChannelGraph& g, bool transposed)
      : graph_(&g), transposed_(transposed) {}

  const ChannelGraph& graph() const { return *graph_; }
  bool transposed() const { return transposed_; }
  std::size_t vertex_count() const { return graph_->vertex_count(); }
  std::size_t arc_count() const { return graph_->arc_count(); }

  std::span<const ArcId> out_arcs(VertexId v) const {
    return transposed_ ? graph_->in_arcs(v) : graph_->out_arcs(v);
  }
  std::span<const ArcId> in_arcs(VertexId v) const {
    return transposed_ ? graph_->out_arcs(v) : graph_->in_arcs(v);
  }

  // Arc as seen through this view: endpoints swapped when transposed.
  Arc arc(ArcId e) const {
    Arc a = graph_->arc(e);
    if (transposed_) std::swap(a.source, a.target);
    return a;
  }

  std::size_t out_degree(VertexId v) const {
    return transposed_ ? graph_->in_degree(v) : graph_->out_degree(v);
  }

  GraphView transpose() const { return GraphView(*graph_, !transposed_); }

  // All arcs as seen through the view, in ascending id order.
  std::vector<Arc> arcs() const;

 private:
  const ChannelGraph* graph_;
  bool transposed_;
};

// Incrementally assembles a keyed ChannelGraph.
class GraphBuilder {
 public:
  VertexId add_vertex(std::string key);
  // Looks up or creates the vertex.
  VertexId vertex(std::string_view key);
  ArcId add_arc(VertexId source, VertexId target, ArcPolicy policy);
  ArcId add_arc(std::string_view source, std::string_view target,
                ArcPolicy policy);

  std::size_t vertex_count() const { return keys_.size(); }
  ChannelGraph build() &&;

 private:
  std::vector<std::string> keys_;
  std::unordered_map<std::string, VertexId> index_;
  std::vector<ArcSpec> arcs_;
};

inline ChannelGraph build_graph(std::span<const ArcSpec> arcs,
                                std::size_t vertex_count = 0) {
  return ChannelGraph::build(arcs, vertex_count);
}

// Copy of g where every arc leaving s charges no fee. Balances unchanged.
ChannelGraph apply_source_fee_zero(const ChannelGraph& g, VertexId s);

}  // namespace pcn

template <>
struct std::hash<pcn::VertexId> {
  std::size_t operator()(pcn::VertexId v) const noexcept {
    return std::hash<std::uint32_t>{}(v.value);
  }
};

template <>
struct std::hash<pcn::ArcId> {
  std::size_t operator()(pcn::ArcId e) const noexcept {
    return std::hash<std::uint32_t>{}(e.value);
  }
};
