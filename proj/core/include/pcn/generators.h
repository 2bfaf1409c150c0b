#pragma once

// Synthetic topologies: hub-and-spoke, uniform random digraphs, and a
// preferential-attachment graph with a heavy-tailed degree distribution.

#include <cstddef>
#include <cstdint>

#include "pcn/graph.h"

namespace pcn {

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

struct PolicyRanges {
  Range base_fee{0.0, 10.0};
  Range fee_rate{0.0, 0.1};
};

// Hub "r" (vertex 0) plus spokes "s1".."sN" (vertices 1..N), each spoke joined
// to the hub by arcs in both directions with the given policy.
// Throws std::invalid_argument if n_spokes < 2.
ChannelGraph gen_hub_spoke(std::size_t n_spokes, const ArcPolicy& policy);

// n_arcs distinct ordered vertex pairs (no self-loops, no parallel arcs)
// chosen uniformly, with base fee, fee rate, and balance drawn uniformly from
// the given ranges. Same arguments give the same graph. Throws
// std::invalid_argument if n_arcs > n_vertices * (n_vertices - 1) or a range
// is invalid.
ChannelGraph gen_random_pcn(std::size_t n_vertices, std::size_t n_arcs,
                            const PolicyRanges& policies,
                            const Range& balance, std::uint64_t seed);

struct ScaleFreeOptions {
  std::size_t n_vertices = 2500;
  // Each new vertex opens between 1 and max_channels_per_vertex channels to
  // existing vertices chosen proportionally to their degree.
  std::size_t max_channels_per_vertex = 9;
  // Fees in lnd units, drawn uniformly as integers.
  std::uint64_t max_fee_base_msat = 1000;
  std::uint64_t max_fee_rate_ppm = 1000;
  // Channel capacities are log-normal with this median (satoshis).
  double median_capacity_sat = 4'000'000.0;
  double capacity_log_sigma = 1.2;
  // Fraction of channel directions that carry no policy and are omitted.
  double missing_policy_fraction = 0.05;
  std::uint64_t seed = 1;
};

// Lightning-like graph: each channel becomes two arcs with independent
// policies and half the channel capacity as balance per direction. Vertices
// that end up without arcs are kept, so vertex ids equal creation order.
ChannelGraph gen_scale_free(const ScaleFreeOptions& options);

}  // namespace pcn
