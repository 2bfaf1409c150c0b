#pragma once

// Seeded property suites that cross-check the planners against the
// brute-force oracle, the closed-form recurrence against the recursive one,
// fee-map consistency, and the inconsistent-fee counterexample.

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pcn/graph.h"
#include "pcn/pathfinding.h"

namespace pcn {

inline constexpr std::size_t kRandomCaseMaxVertices = 12;
inline constexpr std::size_t kRandomCaseMaxArcs = 30;

struct RandomCase {
  std::uint64_t seed = 0;
  ChannelGraph graph;
  Query query;
  // Whether the oracle found a feasible path for `query`.
  bool feasible = false;
};

// Graph with 2..12 vertices and up to 30 arcs, random linear policies and
// balances, and a random query. Deterministic in seed.
RandomCase random_case(std::uint64_t seed);

// Like random_case, but retries queries (and then graphs) until the oracle
// finds a feasible path. Deterministic in seed.
RandomCase random_feasible_case(std::uint64_t seed);

// Random path of 0..10 arcs with base fee in [0, 100] and fee rate in [0, 1],
// plus an amount in [1, 10^6].
struct RandomPath {
  std::vector<ArcPolicy> policies;
  double amount = 0.0;
};
RandomPath random_path(std::uint64_t seed);

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::vector<std::string> failures;
  std::map<std::string, double> observations;

  void fail(std::string message);
};

SuiteResult verify_recurrence(std::uint64_t seed, std::size_t n_cases);
SuiteResult verify_consistency(std::uint64_t seed, std::size_t n_cases);
SuiteResult verify_oracle_equivalence(std::uint64_t seed, std::size_t n_cases);
SuiteResult verify_bidirectional(std::uint64_t seed, std::size_t n_cases);
SuiteResult verify_counterexample();

struct VerifyReport {
  std::vector<SuiteResult> suites;
  std::vector<std::string> warnings;
  bool passed() const;
  std::string to_json() const;
};

VerifyReport run_verification(std::uint64_t seed, std::size_t n_cases);

}  // namespace pcn
