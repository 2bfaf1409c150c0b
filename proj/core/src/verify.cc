#include "pcn/verify.h"

#include <cmath>
#include <random>
#include <sstream>

#include "json.hpp"
#include "pcn/fee_model.h"
#include "pcn/generators.h"
#include "pcn/reference_networks.h"

namespace pcn {
namespace {

// splitmix64 finalizer; decorrelates consecutive seeds.
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(17);
  out << x;
  return out.str();
}

Query random_query(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<std::uint32_t> pick(
      0, static_cast<std::uint32_t>(n - 1));
  std::uniform_int_distribution<int> amount(1, 100);
  const std::uint32_t s = pick(rng);
  std::uint32_t t = pick(rng);
  while (t == s) t = pick(rng);
  return Query{VertexId{s}, VertexId{t}, static_cast<double>(amount(rng))};
}

ChannelGraph random_graph(std::mt19937_64& rng, std::uint64_t seed) {
  std::uniform_int_distribution<std::size_t> vertices(2, kRandomCaseMaxVertices);
  const std::size_t n = vertices(rng);
  std::uniform_int_distribution<std::size_t> arcs(
      0, std::min(kRandomCaseMaxArcs, n * (n - 1)));
  PolicyRanges ranges;
  ranges.base_fee = {0.0, 10.0};
  ranges.fee_rate = {0.0, 0.5};
  return gen_random_pcn(n, arcs(rng), ranges, Range{0.0, 300.0}, mix(seed));
}

std::size_t all_hops(const ChannelGraph& g) {
  return g.vertex_count() == 0 ? 0 : g.vertex_count() - 1;
}

std::string describe(const RandomCase& c) {
  return "case seed " + std::to_string(c.seed) + " (" +
         std::to_string(c.graph.vertex_count()) + " vertices, " +
         std::to_string(c.graph.arc_count()) + " arcs, " +
         std::to_string(c.query.source.value) + " -> " +
         std::to_string(c.query.destination.value) + ", amount " +
         fmt(c.query.amount) + ")";
}

// Frozen output of the reference recursive listing for these inputs.
constexpr double kListingAmount = 102.0;
constexpr double kListingBase[] = {10, 5, 3.4, 11, 7};
constexpr double kListingRate[] = {0.1, 0.211, 0.15, 0.12, 0.11};
constexpr double kListingExpected[] = {243.147044856, 211.95185896, 170.89336,
                                       145.6464,      120.22,       102.0};

}  // namespace

RandomCase random_case(std::uint64_t seed) {
  std::mt19937_64 rng(mix(seed));
  RandomCase c;
  c.seed = seed;
  c.graph = random_graph(rng, seed);
  c.query = random_query(rng, c.graph.vertex_count());
  c.feasible = brute_force_lowest_fee(c.graph, c.query, FeeMap::linear(),
                                      all_hops(c.graph))
                   .found;
  return c;
}

RandomCase random_feasible_case(std::uint64_t seed) {
  constexpr int kQueriesPerGraph = 20;
  for (std::uint64_t attempt = 0;; ++attempt) {
    const std::uint64_t graph_seed = mix(seed) ^ mix(attempt + 0x51ed);
    std::mt19937_64 rng(graph_seed);
    RandomCase c;
    c.seed = seed;
    c.graph = random_graph(rng, graph_seed);
    for (int q = 0; q < kQueriesPerGraph; ++q) {
      c.query = random_query(rng, c.graph.vertex_count());
      if (brute_force_lowest_fee(c.graph, c.query, FeeMap::linear(),
                                 all_hops(c.graph))
              .found) {
        c.feasible = true;
        return c;
      }
    }
  }
}

RandomPath random_path(std::uint64_t seed) {
  std::mt19937_64 rng(mix(seed));
  std::uniform_int_distribution<std::size_t> length(0, 10);
  std::uniform_real_distribution<double> base(0.0, 100.0);
  std::uniform_real_distribution<double> rate(0.0, 1.0);
  std::uniform_real_distribution<double> amount(1.0, 1e6);
  RandomPath p;
  p.policies.resize(length(rng));
  for (ArcPolicy& policy : p.policies) {
    policy.base_fee = base(rng);
    policy.fee_rate = rate(rng);
    policy.balance = kInfinity;
  }
  p.amount = amount(rng);
  return p;
}

void SuiteResult::fail(std::string message) {
  passed = false;
  // Cap the list; the count is still visible through `passed`.
  if (failures.size() < 20) failures.push_back(std::move(message));
}

SuiteResult verify_recurrence(std::uint64_t seed, std::size_t n_cases) {
  SuiteResult r;
  r.name = "recurrence_equivalence";

  std::vector<ArcPolicy> listing;
  for (std::size_t i = 0; i < 5; ++i) {
    listing.push_back({kListingBase[i], kListingRate[i], kInfinity});
  }
  const HopAmounts rec = amounts_recursive(listing, kListingAmount);
  const HopAmounts closed = amounts_closed_form(listing, kListingAmount);
  for (std::size_t i = 0; i < rec.size(); ++i) {
    if (!amounts_close(rec[i], kListingExpected[i])) {
      r.fail("listing: recursive a_" + std::to_string(i + 1) + " = " +
             fmt(rec[i]) + ", expected " + fmt(kListingExpected[i]));
    }
    if (!amounts_close(closed[i], rec[i])) {
      r.fail("listing: closed form a_" + std::to_string(i + 1) + " = " +
             fmt(closed[i]) + ", recursive " + fmt(rec[i]));
    }
  }

  double worst = 0.0;
  for (std::size_t k = 0; k < n_cases; ++k) {
    ++r.cases;
    const RandomPath p = random_path(seed + k);
    const HopAmounts a = amounts_recursive(p.policies, p.amount);
    const HopAmounts b = amounts_closed_form(p.policies, p.amount);
    for (std::size_t i = 0; i < a.size(); ++i) {
      worst = std::max(worst, std::abs(a[i] - b[i]) / std::max(1.0, std::abs(a[i])));
      if (!amounts_close(b[i], a[i])) {
        r.fail("path seed " + std::to_string(seed + k) + ": a_" +
               std::to_string(i + 1) + " closed " + fmt(b[i]) + " vs recursive " +
               fmt(a[i]));
      }
    }
  }
  r.observations["max_relative_difference"] = worst;
  return r;
}

SuiteResult verify_consistency(std::uint64_t seed, std::size_t n_cases) {
  SuiteResult r;
  r.name = "fee_consistency";
  std::mt19937_64 rng(mix(seed));
  std::uniform_real_distribution<double> base(0.0, 100.0);
  std::uniform_real_distribution<double> rate(0.0, 1.0);
  std::uniform_real_distribution<double> balance(0.0, 1e6);
  std::uniform_real_distribution<double> amount(0.0, 2e6);

  std::size_t violations = 0;
  for (std::size_t k = 0; k < n_cases; ++k) {
    ++r.cases;
    const ArcPolicy policy{base(rng), rate(rng), balance(rng)};
    double a = amount(rng);
    double b = amount(rng);
    if (a > b) std::swap(a, b);
    const std::vector<AmountPair> pairs = {
        {a, b}, {a, a}, {policy.balance, b < policy.balance ? policy.balance : b}};
    const ChannelGraph g =
        ChannelGraph::build(std::vector<ArcSpec>{{VertexId{0}, VertexId{1}, policy}});
    for (const FeeMap& map : {FeeMap::linear(), FeeMap::barrier()}) {
      const ConsistencyVerdict v = check_consistency(map, g, ArcId{0}, pairs);
      if (!v.consistent) {
        ++violations;
        r.fail(std::string(map.name()) + " map violated at (" +
               fmt(v.violation->smaller) + ", " + fmt(v.violation->larger) + ")");
      }
    }
  }
  r.observations["violations"] = static_cast<double>(violations);
  return r;
}

SuiteResult verify_oracle_equivalence(std::uint64_t seed, std::size_t n_cases) {
  SuiteResult r;
  r.name = "oracle_equivalence";
  const FeeMap linear = FeeMap::linear();
  std::size_t no_path_cases = 0;
  for (std::size_t k = 0; k < n_cases; ++k) {
    // One guaranteed-feasible query and one unconstrained query per graph.
    for (const RandomCase& c : {random_feasible_case(seed + k), random_case(seed + k)}) {
      ++r.cases;
      const PathResult oracle =
          brute_force_lowest_fee(c.graph, c.query, linear, all_hops(c.graph));
      const PathResult uni = plan_unidirectional(c.graph, c.query, linear);
      const PathResult barrier = plan_unidirectional_barrier(c.graph, c.query);
      if (!oracle.found) ++no_path_cases;
      if (uni.found != oracle.found || (uni.found && uni.total_fee != oracle.total_fee)) {
        r.fail(describe(c) + ": planner fee " + fmt(uni.total_fee) +
               ", oracle fee " + fmt(oracle.total_fee));
      }
      if (barrier.found != oracle.found ||
          barrier.total_fee != oracle.total_fee) {
        r.fail(describe(c) + ": barrier fee " + fmt(barrier.total_fee) +
               ", oracle fee " + fmt(oracle.total_fee));
      }
    }
  }
  r.observations["no_path_cases"] = static_cast<double>(no_path_cases);
  return r;
}

SuiteResult verify_bidirectional(std::uint64_t seed, std::size_t n_cases) {
  SuiteResult r;
  r.name = "bidirectional_soundness";
  const FeeMap linear = FeeMap::linear();
  double relaxations_saved = 0.0;
  for (std::size_t k = 0; k < n_cases; ++k) {
    for (const RandomCase& c : {random_feasible_case(seed + k), random_case(seed + k)}) {
      ++r.cases;
      const ChannelGraph transformed = apply_source_fee_zero(c.graph, c.query.source);
      const PathResult reference = plan_unidirectional(transformed, c.query, linear);
      const PathResult bi = plan_partial_bidirectional(c.graph, c.query, linear);
      if (bi.found != reference.found ||
          (bi.found && bi.total_fee != reference.total_fee)) {
        r.fail(describe(c) + ": bidirectional fee " + fmt(bi.total_fee) +
               ", transformed unidirectional fee " + fmt(reference.total_fee));
      }
      if (bi.stats.relaxations > reference.stats.relaxations) {
        r.fail(describe(c) + ": bidirectional relaxations " +
               std::to_string(bi.stats.relaxations) + " exceed " +
               std::to_string(reference.stats.relaxations));
      }
      relaxations_saved += static_cast<double>(reference.stats.relaxations) -
                           static_cast<double>(bi.stats.relaxations);
    }
  }
  r.observations["relaxations_saved"] = relaxations_saved;
  return r;
}

SuiteResult verify_counterexample() {
  SuiteResult r;
  r.name = "inconsistent_counterexample";
  r.cases = 1;
  const ChannelGraph g = reference::inconsistent_network();
  const FeeMap table = FeeMap::tabulated(reference::inconsistent_fee_table(g));
  const Query q{*g.find("s"), *g.find("t"), 100.0};

  const PathResult planner = plan_unidirectional(g, q, table);
  const PathResult oracle = brute_force_lowest_fee(g, q, table, all_hops(g));
  r.observations["planner_fee"] = planner.total_fee;
  r.observations["oracle_fee"] = oracle.total_fee;
  r.observations["gap"] = planner.total_fee - oracle.total_fee;
  if (!planner.found || planner.total_fee != 30.0) {
    r.fail("planner fee " + fmt(planner.total_fee) + ", expected 30");
  }
  if (!oracle.found || oracle.total_fee != 25.0) {
    r.fail("oracle fee " + fmt(oracle.total_fee) + ", expected 25");
  }

  ArcId s_to_j{};
  for (ArcId e : g.out_arcs(q.source)) s_to_j = e;
  const std::vector<AmountPair> pair = {{110.0, 120.0}};
  const ConsistencyVerdict v = check_consistency(table, g, s_to_j, pair);
  r.observations["violation_smaller_total"] = v.smaller_total;
  r.observations["violation_larger_total"] = v.larger_total;
  if (v.consistent) r.fail("fee table not flagged as inconsistent at (110, 120)");
  return r;
}

bool VerifyReport::passed() const {
  for (const SuiteResult& s : suites) {
    if (!s.passed) return false;
  }
  return true;
}

std::string VerifyReport::to_json() const {
  nlohmann::json suites_json = nlohmann::json::array();
  for (const SuiteResult& s : suites) {
    suites_json.push_back({{"name", s.name},
                           {"passed", s.passed},
                           {"cases", s.cases},
                           {"failures", s.failures},
                           {"observations", s.observations}});
  }
  nlohmann::json j = {{"passed", passed()},
                      {"suites", std::move(suites_json)},
                      {"warnings", warnings}};
  return j.dump(2);
}

VerifyReport run_verification(std::uint64_t seed, std::size_t n_cases) {
  VerifyReport report;
  if (n_cases == 0) {
    report.warnings.push_back(
        "n_cases is 0: randomized suites ran no cases and pass vacuously");
  }
  report.suites.push_back(verify_recurrence(seed, n_cases));
  report.suites.push_back(verify_consistency(seed, n_cases));
  report.suites.push_back(verify_oracle_equivalence(seed, n_cases));
  report.suites.push_back(verify_bidirectional(seed, n_cases));
  report.suites.push_back(verify_counterexample());
  return report;
}

}  // namespace pcn
