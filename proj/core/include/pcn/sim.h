#pragma once

// Payment simulation: rejection-sampled payment sets, per-payment search-effort
// comparison of the unidirectional and partial bidirectional planners, summary
// statistics, a reduction histogram, and wall-clock benchmarking.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pcn/graph.h"
#include "pcn/pathfinding.h"

namespace pcn {

inline constexpr std::int64_t kMaxPaymentAmount = 1'000'000;

struct Payment {
  VertexId source;
  VertexId destination;
  std::int64_t amount = 0;

  bool operator==(const Payment&) const = default;
};

Query to_query(const Payment& p);

// Which vertices may be drawn as payment endpoints.
struct VertexFilter {
  // Keep only vertices with out-degree strictly below this value.
  std::optional<std::size_t> out_degree_below;

  static VertexFilter all() { return {}; }
  static VertexFilter out_degree_less_than(std::size_t k) { return {k}; }
  bool accepts(const ChannelGraph& g, VertexId v) const;
};

struct SamplerOptions {
  // Candidate draws allowed before giving up; 0 selects 1000 * n + 10000.
  std::size_t max_attempts = 0;
  std::int64_t max_amount = kMaxPaymentAmount;
};

// Draws distinct (source, destination) pairs uniformly from the eligible
// vertices and an amount uniformly from {1..max_amount}; keeps a candidate iff
// the unidirectional planner finds a feasible path. Throws Error when fewer
// than two vertices are eligible or the attempt cap is hit first.
std::vector<Payment> sample_payments(const ChannelGraph& g, std::size_t n,
                                     std::uint64_t seed,
                                     const VertexFilter& filter = {},
                                     const SamplerOptions& options = {});

struct PaymentMetrics {
  std::size_t payment_id = 0;
  Payment payment;
  std::uint64_t uni_relaxations = 0;
  std::uint64_t bi_relaxations = 0;
  // 100 * (uni - bi) / uni; 0 when uni == 0.
  double reduction_pct = 0.0;
  double uni_fee = 0.0;
  double bi_fee = 0.0;
  std::size_t path_len = 0;
};

struct HistogramBin {
  // Half-open [lo, hi) except the last bin, which includes 100. The first
  // bin is the underflow bin (-inf, 0).
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 0;
};

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

struct ExperimentSummary {
  std::size_t n_payments = 0;
  MeanStd uni_relaxations;
  MeanStd bi_relaxations;
  MeanStd reduction_pct;
  std::vector<HistogramBin> histogram;
  std::chrono::nanoseconds uni_total_time{0};
  std::chrono::nanoseconds bi_total_time{0};
  std::chrono::nanoseconds uni_per_payment{0};
  std::chrono::nanoseconds bi_per_payment{0};

  std::string to_json() const;
};

struct ExperimentResult {
  std::vector<PaymentMetrics> metrics;
  ExperimentSummary summary;
};

struct ExperimentOptions {
  // Worker threads; 0 uses the hardware concurrency.
  std::size_t threads = 1;
};

double reduction_percent(std::uint64_t uni, std::uint64_t bi);

// Bins of width 5 over [0, 100] plus an underflow bin for negative values.
std::vector<HistogramBin> reduction_histogram(const std::vector<double>& values);

MeanStd mean_std(const std::vector<double>& values);

ExperimentSummary summarize(const std::vector<PaymentMetrics>& metrics);

// Runs both planners on every payment. Throws Error naming the payment if
// the unidirectional planner finds it infeasible.
ExperimentResult run_experiment(const ChannelGraph& g,
                                const std::vector<Payment>& payments,
                                const ExperimentOptions& options = {});

struct PlannerTiming {
  std::chrono::nanoseconds mean_total{0};
  std::chrono::nanoseconds mean_per_payment{0};
};

struct BenchmarkReport {
  std::size_t n_payments = 0;
  std::size_t repetitions = 0;
  PlannerTiming uni;
  PlannerTiming bi;
  // False when there are no payments; per-payment times are then 0.
  bool per_payment_defined = false;
  // 100 * (uni - bi) / uni on mean total time.
  double time_reduction_pct = 0.0;

  std::string to_json() const;
};

// Plans the full payment set with each planner per repetition on the calling
// thread and reports mean times. Throws std::invalid_argument if
// repetitions == 0.
BenchmarkReport benchmark(const ChannelGraph& g,
                          const std::vector<Payment>& payments,
                          std::size_t repetitions);

struct ResultPaths {
  std::filesystem::path payments_csv;
  std::filesystem::path summary_json;
  std::filesystem::path histogram_csv;

  static ResultPaths in_directory(const std::filesystem::path& dir);
};

// Throws Error if a file cannot be written.
void write_results(const ChannelGraph& g,
                   const std::vector<PaymentMetrics>& metrics,
                   const ExperimentSummary& summary, const ResultPaths& paths);

// Parses a per-payment CSV written by write_results. Vertex columns are
// resolved against g. Throws ParseError on malformed rows.
std::vector<PaymentMetrics> read_metrics_csv(const ChannelGraph& g,
                                             const std::filesystem::path& path);

}  // namespace pcn
