// pcn: command-line front end for ingestion, path planning, simulation,
// benchmarking, and property verification.
//
// Exit codes: 0 success, 1 property failure (verify), 2 usage or input error.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "pcn/fee_model.h"
#include "pcn/generators.h"
#include "pcn/pathfinding.h"
#include "pcn/sim.h"
#include "pcn/snapshot.h"
#include "pcn/verify.h"

namespace {

using nlohmann::json;

constexpr std::uint64_t kDefaultSeed = 42;
constexpr int kExitOk = 0;
constexpr int kExitPropertyFailure = 1;
constexpr int kExitInputError = 2;

// Thrown for bad flag values detected after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("PCN_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring unparsable PCN_SEED='" << env << "'\n";
    }
  }
  return kDefaultSeed;
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

pcn::Snapshot load(const std::string& path) {
  if (!std::filesystem::exists(path)) {
    throw UsageError("snapshot file '" + path + "' does not exist");
  }
  return pcn::load_snapshot_file(path);
}

pcn::VertexId resolve(const pcn::ChannelGraph& g, const std::string& key,
                      const char* role) {
  if (auto v = g.find(key)) return *v;
  throw UsageError(std::string("unknown ") + role + " vertex '" + key + "'");
}

pcn::VertexFilter filter_for(const std::optional<std::size_t>& degree_cap) {
  return degree_cap ? pcn::VertexFilter::out_degree_less_than(*degree_cap)
                    : pcn::VertexFilter::all();
}

struct IngestArgs {
  std::string snapshot;
};

int cmd_ingest(const IngestArgs& args) {
  const pcn::Snapshot snap = load(args.snapshot);
  std::cout << snap.report.to_json() << '\n';
  return kExitOk;
}

struct PlanArgs {
  std::string snapshot;
  std::string source;
  std::string destination;
  double amount = 0.0;
  std::string planner = "uni";
  std::string fee_table;
  std::optional<std::size_t> max_hops;
};

int cmd_plan(const PlanArgs& args) {
  if (!(args.amount > 0.0)) throw UsageError("--amount must be positive");
  const pcn::Snapshot snap = load(args.snapshot);
  const pcn::ChannelGraph& g = snap.graph;
  const pcn::Query q{resolve(g, args.source, "source"),
                     resolve(g, args.destination, "destination"), args.amount};
  if (q.source == q.destination) {
    throw UsageError("source and destination must differ");
  }
  const pcn::FeeMap fee =
      args.fee_table.empty()
          ? pcn::FeeMap::linear()
          : pcn::FeeMap::tabulated(pcn::FeeTable::from_file(args.fee_table, g));

  pcn::PathResult result;
  if (args.planner == "uni") {
    result = pcn::plan_unidirectional(g, q, fee);
  } else if (args.planner == "bi") {
    result = pcn::plan_partial_bidirectional(g, q, fee);
  } else if (args.planner == "barrier") {
    result = pcn::plan_unidirectional_barrier(g, q);
  } else {
    const std::size_t hops =
        args.max_hops.value_or(g.vertex_count() > 0 ? g.vertex_count() - 1 : 0);
    result = pcn::brute_force_lowest_fee(g, q, fee, hops);
  }

  json arcs = json::array();
  for (pcn::ArcId e : result.arcs) {
    const pcn::Arc& a = g.arc(e);
    arcs.push_back({{"id", e.value},
                    {"source", g.key(a.source)},
                    {"target", g.key(a.target)},
                    {"base_fee", a.policy.base_fee},
                    {"fee_rate", a.policy.fee_rate},
                    {"balance", a.policy.balance}});
  }
  json out = {{"planner", args.planner},
              {"fee_map", std::string(fee.name())},
              {"source", args.source},
              {"destination", args.destination},
              {"amount", args.amount},
              {"found", result.found},
              {"semantics", pcn::to_string(result.semantics)},
              {"total_fee", finite_or_null(result.total_fee)},
              {"amount_at_source", finite_or_null(result.amount_at_source())},
              {"arcs", std::move(arcs)},
              {"hop_amounts", result.hop_amounts},
              {"stats",
               {{"relaxations", result.stats.relaxations},
                {"pops", result.stats.pops},
                {"wall_time_ns", result.stats.wall_time.count()}}}};
  std::cout << out.dump(2) << '\n';
  return kExitOk;
}

struct SimulateArgs {
  std::string snapshot;
  std::size_t payments = 100;
  std::uint64_t seed = kDefaultSeed;
  std::optional<std::size_t> degree_cap;
  std::string output_dir;
  std::size_t threads = 1;
  std::size_t max_attempts = 0;
};

int cmd_simulate(const SimulateArgs& args) {
  const pcn::Snapshot snap = load(args.snapshot);
  pcn::SamplerOptions sampler;
  sampler.max_attempts = args.max_attempts;
  const auto payments = pcn::sample_payments(
      snap.graph, args.payments, args.seed, filter_for(args.degree_cap), sampler);
  const pcn::ExperimentResult result =
      pcn::run_experiment(snap.graph, payments, {.threads = args.threads});

  std::filesystem::create_directories(args.output_dir);
  pcn::write_results(snap.graph, result.metrics, result.summary,
                     pcn::ResultPaths::in_directory(args.output_dir));
  std::cout << result.summary.to_json() << '\n';
  return kExitOk;
}

struct BenchArgs {
  std::string snapshot;
  std::size_t payments = 1000;
  std::uint64_t seed = kDefaultSeed;
  std::optional<std::size_t> degree_cap;
  std::size_t repetitions = 10;
};

int cmd_bench(const BenchArgs& args) {
  if (args.repetitions == 0) throw UsageError("--repetitions must be >= 1");
  const pcn::Snapshot snap = load(args.snapshot);
  const auto payments = pcn::sample_payments(snap.graph, args.payments, args.seed,
                                             filter_for(args.degree_cap));
  std::cout << pcn::benchmark(snap.graph, payments, args.repetitions).to_json()
            << '\n';
  return kExitOk;
}

struct VerifyArgs {
  std::uint64_t seed = kDefaultSeed;
  std::size_t cases = 200;
};

int cmd_verify(const VerifyArgs& args) {
  const pcn::VerifyReport report = pcn::run_verification(args.seed, args.cases);
  for (const std::string& w : report.warnings) std::cerr << "warning: " << w << '\n';
  std::cout << report.to_json() << '\n';
  return report.passed() ? kExitOk : kExitPropertyFailure;
}

struct GenerateArgs {
  std::string kind = "hub-spoke";
  std::size_t spokes = 20;
  std::size_t vertices = 2500;
  std::size_t arcs = 0;
  std::uint64_t seed = kDefaultSeed;
  std::string output;
};

int cmd_generate(const GenerateArgs& args) {
  pcn::ChannelGraph g;
  if (args.kind == "hub-spoke") {
    g = pcn::gen_hub_spoke(args.spokes, pcn::ArcPolicy{1.0, 0.001, 1e7});
  } else if (args.kind == "random") {
    g = pcn::gen_random_pcn(args.vertices, args.arcs, {}, {1e5, 1e7}, args.seed);
  } else {
    pcn::ScaleFreeOptions o;
    o.n_vertices = args.vertices;
    o.seed = args.seed;
    g = pcn::gen_scale_free(o);
  }
  if (args.output.empty() || args.output == "-") {
    std::cout << pcn::serialize_snapshot(g) << '\n';
  } else {
    pcn::write_snapshot_file(g, args.output);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Payment channel network path planning and simulation"};
  app.require_subcommand(1);
  const std::uint64_t seed = default_seed();
  const std::string seed_help =
      "PRNG seed (default: $PCN_SEED or " + std::to_string(kDefaultSeed) + ")";

  IngestArgs ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Load a snapshot and print the ingest report as JSON");
  ingest_cmd->add_option("--snapshot", ingest.snapshot, "Snapshot JSON file")->required();

  PlanArgs plan;
  auto* plan_cmd = app.add_subcommand("plan", "Plan one payment and print the path as JSON");
  plan_cmd->add_option("--snapshot", plan.snapshot, "Snapshot JSON file")->required();
  plan_cmd->add_option("--source", plan.source, "Source vertex key")->required();
  plan_cmd->add_option("--destination", plan.destination, "Destination vertex key")->required();
  plan_cmd->add_option("--amount", plan.amount, "Amount delivered to the destination (satoshis)")->required();
  plan_cmd->add_option("--planner", plan.planner, "uni | bi | barrier | oracle")
      ->check(CLI::IsMember({"uni", "bi", "barrier", "oracle"}))
      ->capture_default_str();
  plan_cmd->add_option("--fee-table", plan.fee_table, "Tabulated fee map JSON (replaces linear fees)");
  plan_cmd->add_option("--max-hops", plan.max_hops, "Oracle path length limit (default |V|-1)");

  SimulateArgs simulate;
  simulate.seed = seed;
  auto* simulate_cmd = app.add_subcommand("simulate", "Sample feasible payments and compare planners");
  simulate_cmd->add_option("--snapshot", simulate.snapshot, "Snapshot JSON file")->required();
  simulate_cmd->add_option("--payments", simulate.payments, "Number of payments")->capture_default_str();
  simulate_cmd->add_option("--seed", simulate.seed, seed_help);
  simulate_cmd->add_option("--degree-cap", simulate.degree_cap, "Sample endpoints with out-degree below this");
  simulate_cmd->add_option("--output-dir", simulate.output_dir, "Directory for CSV/JSON results")->required();
  simulate_cmd->add_option("--threads", simulate.threads, "Worker threads (0 = all cores)")->capture_default_str();
  simulate_cmd->add_option("--max-attempts", simulate.max_attempts, "Sampler attempt cap (0 = automatic)");

  BenchArgs bench;
  bench.seed = seed;
  auto* bench_cmd = app.add_subcommand("bench", "Measure single-threaded wall time of both planners");
  bench_cmd->add_option("--snapshot", bench.snapshot, "Snapshot JSON file")->required();
  bench_cmd->add_option("--payments", bench.payments, "Number of payments")->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed, seed_help);
  bench_cmd->add_option("--degree-cap", bench.degree_cap, "Sample endpoints with out-degree below this");
  bench_cmd->add_option("--repetitions", bench.repetitions, "Timed passes over the payment set")->capture_default_str();

  VerifyArgs verify;
  verify.seed = seed;
  auto* verify_cmd = app.add_subcommand("verify", "Run the seeded property suites");
  verify_cmd->add_option("--seed", verify.seed, seed_help);
  verify_cmd->add_option("--cases", verify.cases, "Random cases per suite")->capture_default_str();

  GenerateArgs generate;
  generate.seed = seed;
  auto* generate_cmd = app.add_subcommand("generate", "Write a synthetic snapshot JSON");
  generate_cmd->add_option("--kind", generate.kind, "hub-spoke | random | scale-free")
      ->check(CLI::IsMember({"hub-spoke", "random", "scale-free"}))
      ->capture_default_str();
  generate_cmd->add_option("--spokes", generate.spokes, "Spokes for hub-spoke")->capture_default_str();
  generate_cmd->add_option("--vertices", generate.vertices, "Vertices for random/scale-free")->capture_default_str();
  generate_cmd->add_option("--arcs", generate.arcs, "Arcs for random");
  generate_cmd->add_option("--seed", generate.seed, seed_help);
  generate_cmd->add_option("--output", generate.output, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*ingest_cmd) return cmd_ingest(ingest);
    if (*plan_cmd) return cmd_plan(plan);
    if (*simulate_cmd) return cmd_simulate(simulate);
    if (*bench_cmd) return cmd_bench(bench);
    if (*verify_cmd) return cmd_verify(verify);
    if (*generate_cmd) return cmd_generate(generate);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}
