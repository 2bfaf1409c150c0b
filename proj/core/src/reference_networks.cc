#include "pcn/reference_networks.h"

namespace pcn::reference {
namespace {

constexpr double kAmpleBalance = 1'000'000.0;

ArcId arc_between(const ChannelGraph& g, std::string_view source,
                  std::string_view target) {
  const VertexId s = *g.find(source);
  const VertexId t = *g.find(target);
  for (ArcId e : g.out_arcs(s)) {
    if (g.arc(e).target == t) return e;
  }
  throw GraphError("no arc " + std::string(source) + " -> " + std::string(target));
}

}  // namespace

ChannelGraph single_arc() {
  GraphBuilder b;
  b.add_arc("vi", "vj", {2.0, 0.1, 20.0});
  return std::move(b).build();
}

ChannelGraph two_hop() {
  GraphBuilder b;
  b.add_arc("vi", "vk", {1.0, 0.01, 100.0});
  b.add_arc("vk", "vj", {1.0, 0.01, 100.0});
  return std::move(b).build();
}

ChannelGraph two_route() {
  GraphBuilder b;
  for (const char* key : {"s", "i", "j", "t"}) b.add_vertex(key);
  b.add_arc("s", "i", {2.0, 0.2, kAmpleBalance});
  b.add_arc("s", "j", {2.0, 0.1, kAmpleBalance});
  b.add_arc("i", "t", {2.0, 0.1, kAmpleBalance});
  b.add_arc("j", "t", {15.0, 0.5, kAmpleBalance});
  return std::move(b).build();
}

ChannelGraph inconsistent_network() {
  GraphBuilder b;
  for (const char* key : {"s", "i", "j", "t"}) b.add_vertex(key);
  b.add_arc("s", "j", {0.0, 0.0, kAmpleBalance});
  b.add_arc("j", "i", {0.0, 0.0, kAmpleBalance});
  b.add_arc("i", "t", {0.0, 0.0, kAmpleBalance});
  b.add_arc("j", "t", {0.0, 0.0, kAmpleBalance});
  return std::move(b).build();
}

FeeTable inconsistent_fee_table(const ChannelGraph& g) {
  FeeTable table;
  table.set(arc_between(g, "i", "t"), 100.0, 10.0);
  table.set(arc_between(g, "j", "i"), 110.0, 10.0);
  table.set(arc_between(g, "s", "j"), 120.0, 5.0);
  table.set(arc_between(g, "j", "t"), 100.0, 10.0);
  table.set(arc_between(g, "s", "j"), 110.0, 20.0);
  return table;
}

}  // namespace pcn::reference
