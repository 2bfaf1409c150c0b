#pragma once

// Small hand-built networks with known answers, used by tests, the verify
// command, and the shipped fixture files.

#include "pcn/fee_model.h"
#include "pcn/graph.h"

namespace pcn::reference {

// One arc vi -> vj with base fee 2, fee rate 0.1, balance 20.
ChannelGraph single_arc();

// vi -> vk -> vj with no direct arc vi -> vj.
ChannelGraph two_hop();

// Source s with two routes to t:
//   s -> i (2, 0.2), i -> t (2, 0.1)    cheap
//   s -> j (2, 0.1), j -> t (15, 0.5)   expensive
// All balances 10^6. Paying 10 to t costs 7.6 via i.
ChannelGraph two_route();

// Arcs s -> j, j -> i, i -> t, j -> t with zero linear fees and balances 10^6.
// Paired with inconsistent_fee_table it defeats Dijkstra: the search settles
// j via the direct arc j -> t and reports fee 30, while s -> j -> i -> t
// costs 25.
ChannelGraph inconsistent_network();
FeeTable inconsistent_fee_table(const ChannelGraph& g);

}  // namespace pcn::reference
