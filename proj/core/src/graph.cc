#include "pcn/graph.h"

#include <algorithm>
#include <cmath>
#include <string>

namespace pcn {
namespace {

bool valid_field(double x) { return std::isfinite(x) && x >= 0.0; }

void check_policy(const ArcPolicy& p, std::size_t index) {
  if (!valid_field(p.base_fee) || !valid_field(p.fee_rate) ||
      !valid_field(p.balance)) {
    throw GraphError("arc " + std::to_string(index) +
                     ": policy fields must be finite and non-negative");
  }
}

// Counting-sort arcs by `endpoint` into CSR arrays; ids stay ascending
// within each bucket because arcs are visited in id order.
template <typename Endpoint>
void build_csr(const std::vector<Arc>& arcs, std::size_t n, Endpoint endpoint,
               std::vector<std::uint32_t>& offsets,
               std::vector<ArcId>& index) {
  offsets.assign(n + 1, 0);
  for (const Arc& a : arcs) ++offsets[endpoint(a).value + 1];
  for (std::size_t v = 0; v < n; ++v) offsets[v + 1] += offsets[v];
  index.resize(arcs.size());
  std::vector<std::uint32_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const Arc& a : arcs) index[cursor[endpoint(a).value]++] = a.id;
}

}  // namespace

ChannelGraph ChannelGraph::build(std::span<const ArcSpec> arcs,
                                 std::size_t vertex_count,
                                 std::vector<std::string> keys) {
  ChannelGraph g;
  std::size_t n = vertex_count;
  if (n == 0) {
    if (!keys.empty()) {
      n = keys.size();
    } else {
      for (const ArcSpec& a : arcs) {
        n = std::max<std::size_t>(
            n, std::max(a.source.value, a.target.value) + std::size_t{1});
      }
    }
  }
  if (!keys.empty() && keys.size() != n) {
    throw GraphError("expected " + std::to_string(n) + " vertex keys, got " +
                     std::to_string(keys.size()));
  }

  g.vertex_count_ = n;
  g.arcs_.reserve(arcs.size());
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const ArcSpec& a = arcs[i];
    if (a.source.value >= n || a.target.value >= n) {
      throw GraphError("arc " + std::to_string(i) +
                       ": endpoint out of range");
    }
    if (a.source == a.target) {
      throw GraphError("arc " + std::to_string(i) + ": self-loop on vertex " +
                       std::to_string(a.source.value));
    }
    check_policy(a.policy, i);
    g.arcs_.push_back(Arc{ArcId{static_cast<std::uint32_t>(i)}, a.source,
                          a.target, a.policy});
  }

  build_csr(g.arcs_, n, [](const Arc& a) { return a.source; }, g.out_offsets_,
            g.out_index_);
  build_csr(g.arcs_, n, [](const Arc& a) { return a.target; }, g.in_offsets_,
            g.in_index_);

  g.keys_ = std::move(keys);
  g.key_index_.reserve(g.keys_.size());
  for (std::size_t v = 0; v < g.keys_.size(); ++v) {
    auto [it, inserted] = g.key_index_.emplace(
        g.keys_[v], VertexId{static_cast<std::uint32_t>(v)});
    if (!inserted) throw GraphError("duplicate vertex key '" + g.keys_[v] + "'");
  }
  return g;
}

const Arc& ChannelGraph::arc(ArcId e) const {
  if (!contains(e)) {
    throw GraphError("unknown arc " + std::to_string(e.value));
  }
  return arcs_[e.value];
}

void ChannelGraph::check_vertex(VertexId v) const {
  if (!contains(v)) {
    throw GraphError("unknown vertex " + std::to_string(v.value));
  }
}

std::span<const ArcId> ChannelGraph::out_arcs(VertexId v) const {
  check_vertex(v);
  return std::span<const ArcId>(out_index_)
      .subspan(out_offsets_[v.value],
               out_offsets_[v.value + 1] - out_offsets_[v.value]);
}

std::span<const ArcId> ChannelGraph::in_arcs(VertexId v) const {
  check_vertex(v);
  return std::span<const ArcId>(in_index_)
      .subspan(in_offsets_[v.value],
               in_offsets_[v.value + 1] - in_offsets_[v.value]);
}

std::size_t ChannelGraph::out_degree(VertexId v) const {
  return out_arcs(v).size();
}

std::size_t ChannelGraph::in_degree(VertexId v) const {
  return in_arcs(v).size();
}

std::string ChannelGraph::key(VertexId v) const {
  check_vertex(v);
  if (keys_.empty()) return "v" + std::to_string(v.value);
  return keys_[v.value];
}

std::optional<VertexId> ChannelGraph::find(std::string_view key) const {
  if (keys_.empty()) {
    // Synthesized names: "v<index>".
    if (key.size() < 2 || key.front() != 'v') return std::nullopt;
    std::uint64_t index = 0;
    for (char c : key.substr(1)) {
      if (c < '0' || c > '9') return std::nullopt;
      index = index * 10 + static_cast<std::uint64_t>(c - '0');
      if (index >= vertex_count_) return std::nullopt;
    }
    return VertexId{static_cast<std::uint32_t>(index)};
  }
  auto it = key_index_.find(std::string(key));
  if (it == key_index_.end()) return std::nullopt;
  return it->second;
}

GraphView ChannelGraph::view() const { return GraphView(*this, false); }
GraphView ChannelGraph::transpose() const { return GraphView(*this, true); }

ChannelGraph ChannelGraph::with_policies(
    const std::function<ArcPolicy(const Arc&)>& fn) const {
  std::vector<ArcSpec> specs;
  specs.reserve(arcs_.size());
  for (const Arc& a : arcs_) specs.push_back({a.source, a.target, fn(a)});
  return build(specs, vertex_count_, keys_);
}

bool ChannelGraph::operator==(const ChannelGraph& other) const {
  if (vertex_count_ != other.vertex_count_ || arcs_ != other.arcs_) {
    return false;
  }
  for (std::size_t v = 0; v < vertex_count_; ++v) {
    const VertexId id{static_cast<std::uint32_t>(v)};
    if (key(id) != other.key(id)) return false;
  }
  return true;
}

std::vector<Arc> GraphView::arcs() const {
  std::vector<Arc> out;
  out.reserve(arc_count());
  for (const Arc& a : graph_->arcs()) out.push_back(arc(a.id));
  return out;
}

VertexId GraphBuilder::add_vertex(std::string key) {
  const VertexId id{static_cast<std::uint32_t>(keys_.size())};
  auto [it, inserted] = index_.emplace(key, id);
  if (!inserted) throw GraphError("duplicate vertex key '" + key + "'");
  keys_.push_back(std::move(key));
  return id;
}

VertexId GraphBuilder::vertex(std::string_view key) {
  auto it = index_.find(std::string(key));
  if (it != index_.end()) return it->second;
  return add_vertex(std::string(key));
}

ArcId GraphBuilder::add_arc(VertexId source, VertexId target,
                            ArcPolicy policy) {
  const ArcId id{static_cast<std::uint32_t>(arcs_.size())};
  arcs_.push_back({source, target, policy});
  return id;
}

ArcId GraphBuilder::add_arc(std::string_view source, std::string_view target,
                            ArcPolicy policy) {
  const VertexId s = vertex(source);
  const VertexId t = vertex(target);
  return add_arc(s, t, policy);
}

ChannelGraph GraphBuilder::build() && {
  return ChannelGraph::build(arcs_, keys_.size(), std::move(keys_));
}

ChannelGraph apply_source_fee_zero(const ChannelGraph& g, VertexId s) {
  if (!g.contains(s)) {
    throw GraphError("unknown vertex " + std::to_string(s.value));
  }
  return g.with_policies([s](const Arc& a) {
    ArcPolicy p = a.policy;
    if (a.source == s) {
      p.base_fee = 0.0;
      p.fee_rate = 0.0;
    }
    return p;
  });
}

}  // namespace pcn
