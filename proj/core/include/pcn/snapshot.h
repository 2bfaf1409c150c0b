#pragma once

// Loading lnd `describegraph` style channel-graph snapshots.
//
// Each channel {node1_pub, node2_pub, capacity, node1_policy, node2_policy}
// yields up to two arcs: node1_policy governs node1 -> node2 and node2_policy
// governs node2 -> node1. A policy field that is absent from the channel
// object is not a direction at all; lnd writes null for unknown policies.
// Arcs with a null or disabled policy are dropped; vertices left without any
// arc are dropped after that. Fees are converted from msat / parts-per-million
// to satoshis / proportions and each direction receives half the channel
// capacity as its balance.
//
// Integer fields are accepted either as JSON numbers or as decimal strings,
// since lnd emits 64-bit values as strings.

#include <cstdint>
#include <string>
#include <string_view>

#include "pcn/graph.h"

namespace pcn {

struct IngestReport {
  std::size_t raw_vertices = 0;
  // Directed arc slots: one per policy field present on a channel.
  std::size_t raw_arcs = 0;
  std::size_t kept_vertices = 0;
  std::size_t kept_arcs = 0;
  std::size_t dropped_no_policy = 0;
  std::size_t dropped_disabled = 0;
  std::size_t dropped_isolated = 0;

  bool operator==(const IngestReport&) const = default;
  std::string to_json() const;
};

struct Snapshot {
  ChannelGraph graph;
  IngestReport report;
};

// Balance given to each direction of a channel. Throws std::invalid_argument
// on negative capacity.
double assign_balances(double capacity_sat);

inline constexpr double kMsatPerSat = 1000.0;
inline constexpr double kPartsPerMillion = 1'000'000.0;

// Throws ParseError on malformed JSON, dangling pub keys, or negative
// capacities.
Snapshot load_snapshot(std::string_view json_text);
Snapshot load_snapshot_file(const std::string& path);

// Writes g back out in the snapshot schema, one channel per arc with only
// node1_policy present and capacity = 2 * balance. Loading the result reproduces
// g with no drops.
std::string serialize_snapshot(const ChannelGraph& g);
void write_snapshot_file(const ChannelGraph& g, const std::string& path);

}  // namespace pcn
