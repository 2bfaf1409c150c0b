#include "pcn/generators.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "pcn/snapshot.h"

namespace pcn {
namespace {

void check_range(const Range& r, const char* name) {
  if (!(r.lo >= 0.0) || !(r.hi >= r.lo) || !std::isfinite(r.hi)) {
    throw std::invalid_argument(std::string(name) +
                                " range must satisfy 0 <= lo <= hi");
  }
}

double draw(std::mt19937_64& rng, const Range& r) {
  if (r.lo == r.hi) return r.lo;
  return std::uniform_real_distribution<double>(r.lo, r.hi)(rng);
}

}  // namespace

ChannelGraph gen_hub_spoke(std::size_t n_spokes, const ArcPolicy& policy) {
  if (n_spokes < 2) {
    throw std::invalid_argument("hub-and-spoke graph needs at least 2 spokes");
  }
  GraphBuilder b;
  const VertexId hub = b.add_vertex("r");
  for (std::size_t i = 1; i <= n_spokes; ++i) {
    const VertexId spoke = b.add_vertex("s" + std::to_string(i));
    b.add_arc(spoke, hub, policy);
    b.add_arc(hub, spoke, policy);
  }
  return std::move(b).build();
}

ChannelGraph gen_random_pcn(std::size_t n_vertices, std::size_t n_arcs,
                            const PolicyRanges& policies,
                            const Range& balance, std::uint64_t seed) {
  check_range(policies.base_fee, "base fee");
  check_range(policies.fee_rate, "fee rate");
  check_range(balance, "balance");
  const std::uint64_t max_arcs =
      n_vertices < 2 ? 0 : std::uint64_t{n_vertices} * (n_vertices - 1);
  if (n_arcs > max_arcs) {
    throw std::invalid_argument("cannot place " + std::to_string(n_arcs) +
                                " arcs on " + std::to_string(n_vertices) +
                                " vertices without parallel arcs");
  }

  std::mt19937_64 rng(seed);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  pairs.reserve(n_arcs);
  if (n_arcs * 2 > max_arcs) {
    // Dense: shuffle every ordered pair and take a prefix.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> all;
    all.reserve(max_arcs);
    for (std::uint32_t u = 0; u < n_vertices; ++u) {
      for (std::uint32_t v = 0; v < n_vertices; ++v) {
        if (u != v) all.emplace_back(u, v);
      }
    }
    std::shuffle(all.begin(), all.end(), rng);
    pairs.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n_arcs));
  } else {
    std::uniform_int_distribution<std::uint32_t> pick(
        0, static_cast<std::uint32_t>(n_vertices - 1));
    std::unordered_set<std::uint64_t> seen;
    while (pairs.size() < n_arcs) {
      const std::uint32_t u = pick(rng);
      const std::uint32_t v = pick(rng);
      if (u == v) continue;
      if (!seen.insert((std::uint64_t{u} << 32) | v).second) continue;
      pairs.emplace_back(u, v);
    }
  }

  std::vector<ArcSpec> specs;
  specs.reserve(n_arcs);
  for (const auto& [u, v] : pairs) {
    ArcPolicy p;
    p.base_fee = draw(rng, policies.base_fee);
    p.fee_rate = draw(rng, policies.fee_rate);
    p.balance = draw(rng, balance);
    specs.push_back({VertexId{u}, VertexId{v}, p});
  }
  return ChannelGraph::build(specs, n_vertices);
}

ChannelGraph gen_scale_free(const ScaleFreeOptions& o) {
  if (o.n_vertices < 2 || o.max_channels_per_vertex < 1) {
    throw std::invalid_argument("scale-free graph needs >= 2 vertices");
  }
  std::mt19937_64 rng(o.seed);
  std::uniform_int_distribution<std::uint64_t> base_msat(0, o.max_fee_base_msat);
  std::uniform_int_distribution<std::uint64_t> rate_ppm(0, o.max_fee_rate_ppm);
  std::lognormal_distribution<double> capacity(std::log(o.median_capacity_sat),
                                               o.capacity_log_sigma);
  std::uniform_int_distribution<std::size_t> channels(1, o.max_channels_per_vertex);
  std::bernoulli_distribution missing(o.missing_policy_fraction);

  // Each channel endpoint appears once in `endpoints`, so a uniform pick is a
  // degree-proportional pick.
  std::vector<std::uint32_t> endpoints;
  std::vector<ArcSpec> specs;
  auto policy = [&](double balance) {
    return ArcPolicy{static_cast<double>(base_msat(rng)) / kMsatPerSat,
                     static_cast<double>(rate_ppm(rng)) / kPartsPerMillion,
                     balance};
  };
  auto open_channel = [&](std::uint32_t u, std::uint32_t v) {
    const double balance = assign_balances(std::round(capacity(rng)));
    const bool drop_forward = missing(rng);
    const bool drop_backward = missing(rng);
    const ArcPolicy forward = policy(balance);
    const ArcPolicy backward = policy(balance);
    if (!drop_forward) specs.push_back({VertexId{u}, VertexId{v}, forward});
    if (!drop_backward) specs.push_back({VertexId{v}, VertexId{u}, backward});
    endpoints.push_back(u);
    endpoints.push_back(v);
  };

  open_channel(1, 0);
  std::vector<std::uint32_t> chosen;
  for (std::uint32_t v = 2; v < o.n_vertices; ++v) {
    const std::size_t k = std::min<std::size_t>(channels(rng), v);
    chosen.clear();
    std::uniform_int_distribution<std::size_t> pick(0, endpoints.size() - 1);
    std::size_t attempts = 0;
    while (chosen.size() < k && attempts++ < 64 * k) {
      const std::uint32_t u = endpoints[pick(rng)];
      if (std::find(chosen.begin(), chosen.end(), u) == chosen.end()) {
        chosen.push_back(u);
      }
    }
    for (std::uint32_t u : chosen) open_channel(v, u);
  }

  std::vector<std::string> keys;
  keys.reserve(o.n_vertices);
  for (std::size_t v = 0; v < o.n_vertices; ++v) keys.push_back("n" + std::to_string(v));
  return ChannelGraph::build(specs, o.n_vertices, std::move(keys));
}

}  // namespace pcn
